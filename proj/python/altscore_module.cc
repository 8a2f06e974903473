// python/altscore_module.cc

// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//  http://www.apache.org/licenses/LICENSE-2.0
//
// THIS CODE IS PROVIDED *AS IS* BASIS, WITHOUT WARRANTIES OR CONDITIONS OF ANY
// KIND, EITHER EXPRESS OR IMPLIED, INCLUDING WITHOUT LIMITATION ANY IMPLIED
// WARRANTIES OR CONDITIONS OF TITLE, FITNESS FOR A PARTICULAR PURPOSE,
// MERCHANTABLITY OR NON-INFRINGEMENT.
// See the Apache 2 License for the specific language governing permissions and
// limitations under the License.

// Extension module `altscore._altscore`. Tabular results cross the boundary
// as JSON text and are decoded by the package wrapper.

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <algorithm>
#include <optional>
#include <set>
#include <string>
#include <tuple>
#include <vector>

#include "altscore/align.h"
#include "altscore/error.h"
#include "altscore/formats.h"
#include "altscore/glm_filter.h"
#include "altscore/lattice_ops.h"
#include "altscore/oracle.h"
#include "altscore/pipeline.h"
#include "altscore/report.h"
#include "altscore/text.h"

namespace py = pybind11;
using namespace altscore;

namespace {

using Costs = std::tuple<int, int, int>;
using WordList = std::optional<std::vector<std::string>>;

CostModel ToCosts(const Costs &c) {
  const auto [sub, ins, del] = c;
  if (sub < 0 || ins < 0 || del < 0) throw InputError("costs must be non-negative");
  return {sub, ins, del};
}

std::size_t ToDepth(std::optional<std::size_t> n) {
  if (!n) return kUnboundedDepth;
  if (*n == 0) throw InputError("depth must be positive");
  return *n;
}

FilterPolicy ToPolicy(bool exclude_hyp_hesitations, const std::string &backchannels, const WordList &hesitations,
                      const WordList &backchannel_words) {
  FilterPolicy p;
  p.exclude_hyp_hesitations = exclude_hyp_hesitations;
  if (backchannels == "score") {
    p.backchannel_mode = BackchannelMode::kScore;
  } else if (backchannels == "optional") {
    p.backchannel_mode = BackchannelMode::kOptional;
  } else if (backchannels == "exclude") {
    p.backchannel_mode = BackchannelMode::kExclude;
  } else {
    throw InputError("backchannels must be score, optional or exclude, got '" + backchannels + "'");
  }
  auto upper = [](const std::vector<std::string> &words) {
    std::set<std::string> out;
    for (const auto &w : words) out.insert(ToUpper(w));
    return out;
  };
  if (hesitations) p.hesitation_words = upper(*hesitations);
  if (backchannel_words) p.backchannel_words = upper(*backchannel_words);
  return p;
}

SegmentationMode ToSegmentation(const std::string &name) {
  if (name == "per-segment") return SegmentationMode::kPerSegment;
  if (name == "single") return SegmentationMode::kSingleSegment;
  throw InputError("segmentation must be per-segment or single, got '" + name + "'");
}

AltLevel ToLevel(const std::string &name) {
  auto level = ParseLevel(name);
  if (!level) throw InputError("level must be nbest, word or phrase, got '" + name + "'");
  return *level;
}

LabelSet ToLabels(const WordList &non_words) { return non_words ? LabelSet(*non_words) : LabelSet(); }

ScoreOptions MakeScoreOptions(const std::string &glm, bool legacy_expansions, bool exclude_hyp_hesitations,
                              const std::string &backchannels, const std::string &segmentation, const Costs &costs,
                              double slack, unsigned jobs) {
  ScoreOptions o;
  o.rules = ParseGlm(glm);
  o.legacy_expansions = legacy_expansions;
  o.policy = ToPolicy(exclude_hyp_hesitations, backchannels, std::nullopt, std::nullopt);
  o.segmentation = ToSegmentation(segmentation);
  o.costs = ToCosts(costs);
  o.slack = slack;
  o.jobs = std::max(1u, jobs);
  return o;
}

std::string Score(const std::string &stm, const std::string &ctm, const std::string &glm, bool legacy_expansions,
                  bool exclude_hyp_hesitations, const std::string &backchannels, const std::string &segmentation,
                  const Costs &costs, double slack, unsigned jobs) {
  const auto o = MakeScoreOptions(glm, legacy_expansions, exclude_hyp_hesitations, backchannels, segmentation,
                                  costs, slack, jobs);
  const auto refs = ParseStm(stm);
  const auto hyps = ParseCtm(ctm);
  py::gil_scoped_release release;
  return ScoreJson(SummarizeRun(ScoreSystem(refs, hyps, o))).dump();
}

std::string Stages(const std::string &stm, const std::string &ctm, const std::string &glm, const Costs &costs,
                   double slack, unsigned jobs) {
  const auto o = MakeScoreOptions(glm, false, false, "score", "per-segment", costs, slack, jobs);
  const auto refs = ParseStm(stm);
  const auto hyps = ParseCtm(ctm);
  py::gil_scoped_release release;
  return ScoreJson(ScoreStages(refs, hyps, o)).dump();
}

py::dict AlignText(const std::string &ref, const std::string &hyp, const std::string &glm, bool legacy_expansions,
                   const Costs &costs) {
  auto rules = ParseGlm(glm);
  if (!legacy_expansions) rules = PromoteExpansions(rules);
  // Wrap the transcripts in one-line STM/CTM documents so the regular
  // parsers handle inline groups and optional markers.
  const auto segs = ParseStm("ref A spk 0 1 " + ref + "\n");
  if (segs.size() != 1) throw InputError("reference transcript must be a single line");
  std::string ctm;
  int i = 0;
  for (const auto &w : SplitFields(hyp)) ctm += "hyp A " + std::to_string(i++) + " 1 " + w + "\n";
  const FilterPolicy policy;
  const AltNetwork ref_net = ApplyPolicy(ApplyGlmToReference(segs[0], rules), policy, Side::kReference);
  const AltNetwork hyp_net = ApplyPolicy(ApplyGlmToHypothesis(ParseCtm(ctm), rules), policy, Side::kHypothesis);
  const AlignmentResult r = Align(ref_net, hyp_net, ToCosts(costs));
  const Metrics m = ComputeMetrics(r);

  py::list path;
  for (const auto &w : r.path) {
    static const char *kNames[] = {"C", "S", "D", "I"};
    path.append(py::make_tuple(kNames[static_cast<int>(w.verdict)], w.ref, w.hyp));
  }
  py::dict out;
  out["correct"] = r.counts.correct;
  out["substituted"] = r.counts.substituted;
  out["deleted"] = r.counts.deleted;
  out["inserted"] = r.counts.inserted;
  out["ref_length"] = r.counts.ref_length();
  out["hyp_length"] = r.counts.hyp_length();
  out["cost"] = r.cost;
  out["wer"] = m.wer;
  out["precision"] = m.precision;
  out["recall"] = m.recall;
  out["path"] = path;
  return out;
}

py::dict Metrics_(std::int64_t c, std::int64_t s, std::int64_t d, std::int64_t i) {
  if (c < 0 || s < 0 || d < 0 || i < 0) throw InputError("counts must be non-negative");
  const Metrics m = ComputeMetrics(ErrorCounts{c, s, d, i});
  py::dict out;
  out["wer"] = m.wer;
  out["precision"] = m.precision;
  out["recall"] = m.recall;
  return out;
}

std::string FilterStmText(const std::string &stm, const std::string &glm, bool legacy_expansions,
                          bool mark_optional, const std::string &backchannels, const WordList &hesitations,
                          const WordList &backchannel_words) {
  auto rules = ParseGlm(glm);
  if (!legacy_expansions) rules = PromoteExpansions(rules);
  const auto policy = ToPolicy(false, backchannels, hesitations, backchannel_words);
  return WriteStm(FilterStm(ParseStm(stm), rules, policy, mark_optional));
}

std::string FilterCtmText(const std::string &ctm, const std::string &glm, bool legacy_expansions,
                          bool exclude_hyp_hesitations, const std::string &backchannels,
                          const WordList &hesitations, const WordList &backchannel_words) {
  auto rules = ParseGlm(glm);
  if (!legacy_expansions) rules = PromoteExpansions(rules);
  const auto policy = ToPolicy(exclude_hyp_hesitations, backchannels, hesitations, backchannel_words);
  return WriteCtm(FilterCtm(ParseCtm(ctm), rules, policy));
}

std::vector<std::pair<std::vector<std::string>, double>> NBestText(const std::string &lattice, std::size_t n,
                                                                   const WordList &non_words) {
  if (n == 0) throw InputError("n must be positive");
  std::vector<std::pair<std::vector<std::string>, double>> out;
  for (const auto &e : NBest(ParseLattice(lattice), n, ToLabels(non_words)).entries) {
    out.emplace_back(e.words, e.score);
  }
  return out;
}

std::vector<double> PosteriorsText(const std::string &lattice) {
  return ForwardBackward(ParseLattice(lattice)).posterior;
}

std::string DeriveText(const std::string &archive, const std::string &level, std::optional<std::size_t> n,
                       double threshold, const WordList &non_words, unsigned jobs) {
  const auto lats = ParseLatticeArchive(archive);
  const AltLevel lvl = ToLevel(level);
  const LabelSet labels = ToLabels(non_words);
  py::gil_scoped_release release;
  return WriteAlternatives(DeriveAlternatives(lats, lvl, ToDepth(n), threshold, labels, std::max(1u, jobs)));
}

std::string OracleText(const std::string &stm, const std::optional<std::string> &lattices,
                       const std::optional<std::string> &alternatives, const std::string &level,
                       const std::vector<std::optional<std::size_t>> &n_values, const std::string &glm,
                       bool legacy_expansions, const Costs &costs, double threshold, const WordList &non_words,
                       double frame_rate, unsigned jobs) {
  if (lattices.has_value() == alternatives.has_value()) {
    throw InputError("pass exactly one of lattices or alternatives");
  }
  std::vector<std::size_t> depths;
  for (const auto &n : n_values) depths.push_back(ToDepth(n));
  if (depths.empty()) throw InputError("n_values must not be empty");
  OracleOptions o;
  o.rules = ParseGlm(glm);
  o.legacy_expansions = legacy_expansions;
  o.costs = ToCosts(costs);
  o.frame_rate = frame_rate;
  o.jobs = std::max(1u, jobs);
  const auto refs = ParseStm(stm);

  std::vector<AlternativesDoc> docs;
  AltLevel lvl = ToLevel(level);
  if (lattices) {
    const auto lats = ParseLatticeArchive(*lattices);
    const LabelSet labels = ToLabels(non_words);
    py::gil_scoped_release release;
    docs = DeriveAlternatives(lats, lvl, *std::max_element(depths.begin(), depths.end()), threshold, labels, o.jobs);
  } else {
    docs = ParseAlternatives(*alternatives);
    if (!docs.empty()) lvl = docs.front().level;
  }
  py::gil_scoped_release release;
  const std::vector<OracleSystem> systems{{"system", lvl, RunOracle(refs, docs, depths, o)}};
  return OracleJson(systems).dump();
}

std::string Roundtrip(const std::string &kind, const std::string &text) {
  if (kind == "stm") return WriteStm(ParseStm(text));
  if (kind == "ctm") return WriteCtm(ParseCtm(text));
  if (kind == "glm") return WriteGlm(ParseGlm(text));
  if (kind == "lattice") return WriteLattice(ParseLattice(text));
  if (kind == "lattices") return WriteLatticeArchive(ParseLatticeArchive(text));
  if (kind == "alternatives") return WriteAlternatives(ParseAlternatives(text));
  throw InputError("unknown format '" + kind + "'");
}

}  // namespace

PYBIND11_MODULE(_altscore, m) {
  m.doc() = "Native core of altscore";

  static py::exception<InputError> input_error(m, "InputError", PyExc_ValueError);
  static py::exception<ParseError> parse_error(m, "ParseError", input_error.ptr());
  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) std::rethrow_exception(p);
    } catch (const ParseError &e) {
      py::set_error(parse_error, e.what());
    } catch (const InputError &e) {
      py::set_error(input_error, e.what());
    }
  });

  const Costs default_costs{4, 3, 3};
  m.def("score", &Score, py::arg("stm"), py::arg("ctm"), py::arg("glm") = "", py::arg("legacy_expansions") = false,
        py::arg("exclude_hyp_hesitations") = false, py::arg("backchannels") = "score",
        py::arg("segmentation") = "per-segment", py::arg("costs") = default_costs,
        py::arg("slack") = kDefaultAssignmentSlack, py::arg("jobs") = 1u);
  m.def("score_stages", &Stages, py::arg("stm"), py::arg("ctm"), py::arg("glm") = "",
        py::arg("costs") = default_costs, py::arg("slack") = kDefaultAssignmentSlack, py::arg("jobs") = 1u);
  m.def("align", &AlignText, py::arg("ref"), py::arg("hyp"), py::arg("glm") = "",
        py::arg("legacy_expansions") = false, py::arg("costs") = default_costs);
  m.def("metrics", &Metrics_, py::arg("correct"), py::arg("substituted"), py::arg("deleted"), py::arg("inserted"));
  m.def("filter_stm", &FilterStmText, py::arg("stm"), py::arg("glm") = "", py::arg("legacy_expansions") = false,
        py::arg("mark_optional") = false, py::arg("backchannels") = "score", py::arg("hesitations") = py::none(),
        py::arg("backchannel_words") = py::none());
  m.def("filter_ctm", &FilterCtmText, py::arg("ctm"), py::arg("glm") = "", py::arg("legacy_expansions") = false,
        py::arg("exclude_hyp_hesitations") = false, py::arg("backchannels") = "score",
        py::arg("hesitations") = py::none(), py::arg("backchannel_words") = py::none());
  m.def("nbest", &NBestText, py::arg("lattice"), py::arg("n"), py::arg("non_words") = py::none());
  m.def("arc_posteriors", &PosteriorsText, py::arg("lattice"));
  m.def("derive_alternatives", &DeriveText, py::arg("lattices"), py::arg("level") = "phrase",
        py::arg("n") = py::none(), py::arg("threshold") = kDefaultPosteriorThreshold,
        py::arg("non_words") = py::none(), py::arg("jobs") = 1u);
  m.def("oracle_score", &OracleText, py::arg("stm"), py::kw_only(), py::arg("lattices") = py::none(),
        py::arg("alternatives") = py::none(), py::arg("level") = "phrase",
        py::arg("n_values") = std::vector<std::optional<std::size_t>>{1, 10, 100, std::nullopt},
        py::arg("glm") = "", py::arg("legacy_expansions") = false, py::arg("costs") = default_costs,
        py::arg("threshold") = kDefaultPosteriorThreshold, py::arg("non_words") = py::none(),
        py::arg("frame_rate") = kDefaultFrameRate, py::arg("jobs") = 1u);
  m.def("roundtrip", &Roundtrip, py::arg("kind"), py::arg("text"));
}
