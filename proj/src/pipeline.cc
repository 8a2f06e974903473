// src/pipeline.cc

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

#include "altscore/pipeline.h"

#include <map>
#include <utility>

#include "altscore/error.h"
#include "altscore/parallel.h"
#include "altscore/text.h"

namespace altscore {

std::vector<GlmRule> EffectiveRules(const ScoreOptions &options) {
  return options.legacy_expansions ? options.rules : PromoteExpansions(options.rules);
}

ScoreRun ScoreSystem(const std::vector<StmSegment> &stm, const std::vector<CtmItem> &ctm,
                     const ScoreOptions &options) {
  ScoreRun run;
  const std::vector<GlmRule> rules = EffectiveRules(options);

  std::vector<StmSegment> segments =
      options.segmentation == SegmentationMode::kSingleSegment ? MergeStm(stm, &run.warnings) : stm;
  SegmentAssignment assignment = AssignHypToSegments(ctm, segments, options.slack);
  run.warnings.insert(run.warnings.end(), assignment.warnings.begin(), assignment.warnings.end());
  if (!assignment.unassigned.empty()) {
    run.warnings.push_back(std::to_string(assignment.unassigned.size()) +
                           " hypothesis items on recordings or channels absent from the reference were ignored");
  }

  std::vector<std::size_t> scored;
  for (std::size_t i = 0; i < segments.size(); ++i) {
    if (!segments[i].ignore) scored.push_back(i);
  }
  run.segments.resize(scored.size());
  ParallelFor(scored.size(), options.jobs, [&](std::size_t k) {
    const StmSegment &seg = segments[scored[k]];
    AltNetwork ref = ApplyPolicy(ApplyGlmToReference(seg, rules), options.policy, Side::kReference);
    AltNetwork hyp = ApplyPolicy(ApplyGlmToHypothesis(assignment.per_segment[scored[k]], rules),
                                 options.policy, Side::kHypothesis);
    SegmentResult &out = run.segments[k];
    out.recording_id = seg.recording_id;
    out.channel = seg.channel;
    out.start = seg.start;
    out.end = seg.end;
    out.alignment = Align(ref, hyp, options.costs);
  });
  return run;
}

std::vector<ScoreRow> SummarizeRun(const ScoreRun &run) {
  std::vector<ScoreRow> rows;
  std::map<std::string, std::size_t> index;
  ErrorCounts total;
  for (const auto &seg : run.segments) {
    const std::string key = seg.recording_id + " " + seg.channel;
    auto [it, inserted] = index.emplace(key, rows.size());
    if (inserted) rows.push_back({key, {}, {}});
    rows[it->second].counts += seg.alignment.counts;
    total += seg.alignment.counts;
  }
  rows.push_back({kOverallLabel, total, {}});
  for (auto &row : rows) row.metrics = ComputeMetrics(row.counts);
  return rows;
}

std::vector<Stage> StageLadder(const ScoreOptions &base) {
  std::vector<Stage> stages;
  ScoreOptions o = base;
  o.legacy_expansions = true;
  o.policy.exclude_hyp_hesitations = false;
  o.policy.backchannel_mode = BackchannelMode::kScore;
  o.segmentation = SegmentationMode::kPerSegment;
  stages.push_back({"baseline", o});
  o.legacy_expansions = false;
  stages.push_back({"alternations", o});
  o.policy.exclude_hyp_hesitations = true;
  stages.push_back({"exclude hesitations", o});
  o.policy.backchannel_mode = BackchannelMode::kOptional;
  stages.push_back({"optional backchannels", o});
  o.policy.backchannel_mode = BackchannelMode::kExclude;
  stages.push_back({"exclude backchannels", o});
  o.segmentation = SegmentationMode::kSingleSegment;
  stages.push_back({"single segment", o});
  return stages;
}

std::vector<ScoreRow> ScoreStages(const std::vector<StmSegment> &stm, const std::vector<CtmItem> &ctm,
                                  const ScoreOptions &base, std::vector<std::string> *warnings) {
  std::vector<ScoreRow> rows;
  for (const auto &stage : StageLadder(base)) {
    ScoreRun run = ScoreSystem(stm, ctm, stage.options);
    if (warnings) {
      for (auto &w : run.warnings) warnings->push_back(stage.name + ": " + w);
    }
    ScoreRow overall = SummarizeRun(run).back();
    overall.label = stage.name;
    rows.push_back(std::move(overall));
  }
  return rows;
}

AltNetwork FilterHypothesisNetwork(const AltNetwork &network, const std::vector<GlmRule> &rules,
                                   const FilterPolicy &policy) {
  const std::vector<CtmItem> items = NetworkToCtm(network, "", "");
  return ApplyPolicy(ApplyGlmToHypothesis(items, rules), policy, Side::kHypothesis);
}

std::vector<StmSegment> FilterStm(const std::vector<StmSegment> &stm, const std::vector<GlmRule> &rules,
                                  const FilterPolicy &policy, bool mark_optional) {
  std::vector<StmSegment> out;
  for (const auto &seg : stm) {
    if (seg.ignore) {
      out.push_back(seg);
      continue;
    }
    AltNetwork net = ApplyGlmToReference(seg, rules);
    if (mark_optional) net = ApplyPolicy(net, policy, Side::kReference);
    out.push_back(NetworkToStm(net, seg));
  }
  return out;
}

std::vector<CtmItem> FilterCtm(const std::vector<CtmItem> &ctm, const std::vector<GlmRule> &rules,
                               const FilterPolicy &policy) {
  std::vector<CtmItem> out;
  std::size_t i = 0;
  while (i < ctm.size()) {
    std::size_t j = i;
    while (j < ctm.size() && RecordingOf(ctm[j]) == RecordingOf(ctm[i]) && ChannelOf(ctm[j]) == ChannelOf(ctm[i])) {
      ++j;
    }
    std::vector<CtmItem> run(ctm.begin() + i, ctm.begin() + j);
    AltNetwork net = ApplyPolicy(ApplyGlmToHypothesis(run, rules), policy, Side::kHypothesis);
    for (auto &item : NetworkToCtm(net, RecordingOf(ctm[i]), ChannelOf(ctm[i]))) out.push_back(std::move(item));
    i = j;
  }
  return out;
}

namespace {

// A stand-in token spanning the document, used to place it in a segment.
CtmToken ProxyToken(const AlternativesDoc &doc, double frame_rate) {
  CtmToken t;
  t.recording_id = doc.recording_id;
  t.channel = doc.channel;
  t.surface = doc.utterance_id;
  if (!doc.positions.empty()) {
    t.start = doc.positions.front().start_frame * frame_rate;
    t.duration = (doc.positions.back().end_frame - doc.positions.front().start_frame) * frame_rate;
  }
  return t;
}

}  // namespace

std::vector<OracleUtterance> BuildOracleUtterances(const std::vector<StmSegment> &stm,
                                                   const std::vector<AlternativesDoc> &docs,
                                                   const OracleOptions &options,
                                                   std::vector<std::string> *warnings) {
  const std::vector<GlmRule> rules =
      options.legacy_expansions ? options.rules : PromoteExpansions(options.rules);

  std::vector<CtmItem> proxies;
  std::map<std::string, std::vector<std::size_t>> docs_by_id;
  for (std::size_t d = 0; d < docs.size(); ++d) {
    proxies.emplace_back(ProxyToken(docs[d], options.frame_rate));
    docs_by_id[docs[d].utterance_id].push_back(d);
  }
  SegmentAssignment assignment = AssignHypToSegments(proxies, stm, options.slack);
  if (warnings) {
    warnings->insert(warnings->end(), assignment.warnings.begin(), assignment.warnings.end());
    for (const auto &item : assignment.unassigned) {
      warnings->push_back("utterance " + std::get<CtmToken>(item).surface +
                          " matches no reference recording/channel and was ignored");
    }
  }

  // Assignment preserves item order, so the k-th proxy of a segment with a
  // given id is the k-th document with that id.
  std::map<std::string, std::size_t> seen;
  std::vector<std::vector<std::size_t>> owned(stm.size());
  for (std::size_t s = 0; s < stm.size(); ++s) {
    for (const auto &item : assignment.per_segment[s]) {
      const std::string &id = std::get<CtmToken>(item).surface;
      const std::size_t d = docs_by_id[id][seen[id]++];
      owned[s].push_back(d);
    }
  }

  std::vector<OracleUtterance> utterances;
  for (std::size_t s = 0; s < stm.size(); ++s) {
    if (stm[s].ignore) continue;
    OracleUtterance utt;
    utt.reference = ApplyPolicy(ApplyGlmToReference(stm[s], rules), options.policy, Side::kReference);
    for (std::size_t d : owned[s]) utt.hypotheses.push_back(docs[d]);
    utterances.push_back(std::move(utt));
  }
  return utterances;
}

std::vector<OracleRow> RunOracle(const std::vector<StmSegment> &stm, const std::vector<AlternativesDoc> &docs,
                                 const std::vector<std::size_t> &n_values, const OracleOptions &options,
                                 std::vector<std::string> *warnings) {
  const std::vector<GlmRule> rules =
      options.legacy_expansions ? options.rules : PromoteExpansions(options.rules);
  const auto utterances = BuildOracleUtterances(stm, docs, options, warnings);
  HypothesisFilter filter = [&rules, &options](const AltNetwork &net) {
    return FilterHypothesisNetwork(net, rules, options.policy);
  };
  return OracleCurve(utterances, n_values, options.costs, options.frame_rate, filter, options.jobs);
}

std::vector<AlternativesDoc> DeriveAlternatives(const std::vector<NamedLattice> &lattices, AltLevel level,
                                                std::size_t n, double threshold, const LabelSet &non_words,
                                                unsigned jobs) {
  if (n == 0) throw InputError("n must be positive");
  std::vector<AlternativesDoc> docs(lattices.size());
  ParallelFor(lattices.size(), jobs, [&](std::size_t i) {
    const NamedLattice &named = lattices[i];
    AlternativesDoc doc;
    switch (level) {
      case AltLevel::kUtterance:
        doc = ToAlternativesDoc(NBest(Connect(named.lattice), n, non_words));
        break;
      case AltLevel::kPhrase:
        doc = DerivePhraseAlternatives(named.lattice, n, threshold, non_words);
        break;
      case AltLevel::kWord:
        doc = Truncate(WordAlternatives(DerivePhraseAlternatives(named.lattice, n, threshold, non_words)), n);
        break;
    }
    doc.utterance_id = named.utterance_id;
    doc.recording_id = named.recording_id;
    doc.channel = named.channel;
    docs[i] = std::move(doc);
  });
  return docs;
}

}  // namespace altscore
