// tools/altscore.cc

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

// altscore: alternative-aware WER scoring and lattice alternatives.
//
//   altscore score --ref ref.stm --hyp sys.ctm [--glm rules.glm] [--stages]
//   altscore filter --glm rules.glm (--stm ref.stm | --ctm hyp.ctm)
//   altscore merge-stm --stm ref.stm
//   altscore lattice-nbest|lattice-words|lattice-phrases --lattices lat.txt --n 10
//   altscore oracle-score --ref ref.stm --lattices lat.txt --level phrase --n 1,10,inf
//   altscore stats --alternatives alts.txt
//
// Every option can also be given in a key=value file passed with --config;
// options on the command line win. Exit status: 0 ok, 1 bad input, 2 bug.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "altscore/error.h"
#include "altscore/formats.h"
#include "altscore/glm_filter.h"
#include "altscore/lattice_ops.h"
#include "altscore/pipeline.h"
#include "altscore/report.h"
#include "altscore/segmentation.h"
#include "altscore/text.h"

using namespace altscore;

namespace {

std::string ReadFile(const std::string &path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError(path + ": cannot open file");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

// Runs a parser, prefixing errors with the file name.
template <typename Parser>
auto ParseFile(const std::string &path, Parser parse) {
  const std::string text = ReadFile(path);
  try {
    return parse(text);
  } catch (const InputError &e) {
    throw InputError(path + ": " + e.what());
  }
}

void WriteOutput(const std::string &path, const std::string &text) {
  if (path.empty() || path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw InputError(path + ": cannot open for writing");
  out << text;
}

std::string StemOf(const std::string &path) {
  std::string name = path.substr(path.find_last_of('/') + 1);
  const auto dot = name.find_last_of('.');
  return dot == std::string::npos || dot == 0 ? name : name.substr(0, dot);
}

CostModel ParseCosts(const std::string &text) {
  std::vector<std::string> parts;
  std::stringstream ss(text);
  for (std::string p; std::getline(ss, p, ',');) parts.push_back(p);
  if (parts.size() != 3) throw InputError("--costs expects sub,ins,del");
  CostModel costs;
  int *slots[] = {&costs.substitution, &costs.insertion, &costs.deletion};
  for (int i = 0; i < 3; ++i) {
    auto v = ParseInt(Trim(parts[i]));
    if (!v || *v < 0) throw InputError("--costs: bad value '" + parts[i] + "'");
    *slots[i] = static_cast<int>(*v);
  }
  return costs;
}

std::size_t ParseDepth(std::string_view text) {
  text = Trim(text);
  if (text == "inf" || text == "all") return kUnboundedDepth;
  auto v = ParseInt(text);
  if (!v || *v <= 0) throw InputError("bad depth '" + std::string(text) + "'");
  return static_cast<std::size_t>(*v);
}

std::vector<std::size_t> ParseDepthList(const std::string &text) {
  std::vector<std::size_t> out;
  std::stringstream ss(text);
  for (std::string p; std::getline(ss, p, ',');) out.push_back(ParseDepth(p));
  if (out.empty()) throw InputError("--n needs at least one depth");
  return out;
}

void PrintWarnings(const std::vector<std::string> &warnings) {
  for (const auto &w : warnings) std::cerr << "altscore: warning: " << w << "\n";
}

// ---------------------------------------------------------------------------
// Shared option groups.

struct PolicyFlags {
  std::string glm;
  bool legacy = false;
  bool exclude_hesitations = false;
  std::string backchannels = "score";
  std::string hesitation_list;
  std::string backchannel_list;

  void Add(CLI::App *app) {
    app->add_option("--glm", glm, "GLM rule file");
    app->add_flag("--legacy-expansions", legacy, "apply expansion rules in place instead of as alternations");
    app->add_flag("--exclude-hyp-hesitations", exclude_hesitations, "drop hesitation words from hypotheses");
    app->add_option("--backchannels", backchannels, "backchannel handling")
        ->check(CLI::IsMember({"score", "optional", "exclude"}));
    app->add_option("--hesitation-list", hesitation_list, "file replacing the default hesitation words");
    app->add_option("--backchannel-list", backchannel_list, "file replacing the default backchannel words");
  }

  std::vector<GlmRule> Rules() const {
    return glm.empty() ? std::vector<GlmRule>{} : ParseFile(glm, ParseGlm);
  }

  FilterPolicy Policy() const {
    FilterPolicy p;
    if (!hesitation_list.empty()) p.hesitation_words = ParseFile(hesitation_list, ParseWordList);
    if (!backchannel_list.empty()) p.backchannel_words = ParseFile(backchannel_list, ParseWordList);
    p.exclude_hyp_hesitations = exclude_hesitations;
    p.backchannel_mode = backchannels == "optional" ? BackchannelMode::kOptional
                         : backchannels == "exclude" ? BackchannelMode::kExclude
                                                     : BackchannelMode::kScore;
    return p;
  }
};

struct CommonFlags {
  std::string config;
  std::string output;
  bool json = false;
  unsigned jobs = 1;

  void Add(CLI::App *app, bool with_json) {
    app->add_option("--config", config, "key=value file mirroring the long options");
    app->add_option("-o,--output", output, "output file (default stdout)");
    if (with_json) app->add_flag("--json", json, "machine-readable output");
    app->add_option("--jobs", jobs, "worker threads")->check(CLI::PositiveNumber);
  }
};

// ---------------------------------------------------------------------------
// Subcommands.

struct ScoreCmd {
  CommonFlags common;
  PolicyFlags policy;
  std::string ref;
  std::vector<std::string> hyps;
  std::string costs = "4,3,3";
  std::string segmentation = "per-segment";
  bool stages = false;
  double slack = kDefaultAssignmentSlack;

  void Add(CLI::App *app) {
    common.Add(app, true);
    policy.Add(app);
    app->add_option("--ref", ref, "reference STM")->required();
    app->add_option("--hyp", hyps, "hypothesis CTM; repeat for several systems")->required();
    app->add_option("--costs", costs, "sub,ins,del edit costs");
    app->add_option("--segmentation", segmentation, "scoring unit")
        ->check(CLI::IsMember({"per-segment", "single"}));
    app->add_flag("--stages", stages, "score the six-stage configuration ladder");
    app->add_option("--slack", slack, "seconds a hypothesis word may lie outside all segments before a warning");
  }

  int Run() {
    const auto stm = ParseFile(ref, ParseStm);
    ScoreOptions options;
    options.rules = policy.Rules();
    options.legacy_expansions = policy.legacy;
    options.policy = policy.Policy();
    options.segmentation =
        segmentation == "single" ? SegmentationMode::kSingleSegment : SegmentationMode::kPerSegment;
    options.costs = ParseCosts(costs);
    options.slack = slack;
    options.jobs = common.jobs;

    nlohmann::json doc;
    doc["systems"] = nlohmann::json::array();
    std::string text;
    std::vector<ScoreRow> summary;
    for (const auto &path : hyps) {
      const auto ctm = ParseFile(path, ParseCtm);
      const std::string name = StemOf(path);
      std::vector<std::string> warnings;
      std::vector<ScoreRow> rows;
      if (stages) {
        rows = ScoreStages(stm, ctm, options, &warnings);
      } else {
        ScoreRun run = ScoreSystem(stm, ctm, options);
        warnings = run.warnings;
        rows = SummarizeRun(run);
      }
      for (auto &w : warnings) w = name + ": " + w;
      PrintWarnings(warnings);
      doc["systems"].push_back({{"name", name}, {"rows", ScoreJson(rows)}});
      if (hyps.size() > 1) text += "System " + name + "\n";
      text += RenderScoreTable(rows, stages ? "Stage" : "Recording");
      if (hyps.size() > 1) text += "\n";
      ScoreRow last = rows.back();
      last.label = name;
      summary.push_back(last);
    }
    SortByWer(summary);
    doc["summary"] = ScoreJson(summary);
    if (hyps.size() > 1) text += RenderScoreTable(summary, "System");
    WriteOutput(common.output, common.json ? doc.dump(2) + "\n" : text);
    return 0;
  }
};

struct FilterCmd {
  CommonFlags common;
  PolicyFlags policy;
  std::string stm;
  std::string ctm;
  bool mark_optional = false;

  void Add(CLI::App *app) {
    common.Add(app, false);
    policy.Add(app);
    auto *in_stm = app->add_option("--stm", stm, "reference STM to filter");
    auto *in_ctm = app->add_option("--ctm", ctm, "hypothesis CTM to filter");
    in_stm->excludes(in_ctm);
    app->add_flag("--mark-optional", mark_optional,
                  "also mark reference hesitations (and backchannels unless scored) optional");
  }

  int Run() {
    if (stm.empty() == ctm.empty()) throw InputError("filter needs exactly one of --stm or --ctm");
    const auto raw = policy.Rules();
    const auto rules = policy.legacy ? raw : PromoteExpansions(raw);
    const FilterPolicy p = policy.Policy();
    if (!stm.empty()) {
      WriteOutput(common.output, WriteStm(FilterStm(ParseFile(stm, ParseStm), rules, p, mark_optional)));
      return 0;
    }
    WriteOutput(common.output, WriteCtm(FilterCtm(ParseFile(ctm, ParseCtm), rules, p)));
    return 0;
  }
};

struct MergeStmCmd {
  CommonFlags common;
  std::string stm;

  void Add(CLI::App *app) {
    common.Add(app, false);
    app->add_option("--stm", stm, "reference STM")->required();
  }

  int Run() {
    std::vector<std::string> warnings;
    auto merged = MergeStm(ParseFile(stm, ParseStm), &warnings);
    PrintWarnings(warnings);
    WriteOutput(common.output, WriteStm(merged));
    return 0;
  }
};

std::vector<std::string> SplitList(const std::string &text) {
  std::vector<std::string> out;
  std::stringstream ss(text);
  for (std::string p; std::getline(ss, p, ',');) {
    if (!Trim(p).empty()) out.emplace_back(Trim(p));
  }
  return out;
}

struct LatticeCmd {
  AltLevel level;
  CommonFlags common;
  std::string lattices;
  std::string n = "10";
  double threshold = kDefaultPosteriorThreshold;
  std::string non_words;
  bool ctm = false;
  double frame_rate = kDefaultFrameRate;

  explicit LatticeCmd(AltLevel l) : level(l) {}

  void Add(CLI::App *app) {
    common.Add(app, false);
    app->add_option("--lattices", lattices, "lattice archive")->required();
    app->add_option("--n", n, "alternatives per position (or 'inf')");
    if (level != AltLevel::kUtterance) {
      app->add_option("--posterior-threshold", threshold, "minimum posterior of a boundary-blocking arc");
    }
    app->add_option("--non-words", non_words, "comma-separated non-word labels (default <eps>,<sil>,!SIL)");
    app->add_flag("--ctm", ctm, "emit CTM with ALT blocks instead of the alternatives format");
    app->add_option("--frame-rate", frame_rate, "seconds per frame")->check(CLI::PositiveNumber);
  }

  int Run() {
    const auto lats = ParseFile(lattices, ParseLatticeArchive);
    const LabelSet labels = non_words.empty() ? LabelSet() : LabelSet(SplitList(non_words));
    const auto docs = DeriveAlternatives(lats, level, ParseDepth(n), threshold, labels, common.jobs);
    if (!ctm) {
      WriteOutput(common.output, WriteAlternatives(docs));
      return 0;
    }
    std::string text;
    for (const auto &doc : docs) text += WriteCtmWithAlts(doc, frame_rate);
    WriteOutput(common.output, text);
    return 0;
  }
};

struct OracleCmd {
  CommonFlags common;
  PolicyFlags policy;
  std::string ref;
  std::string lattices;
  std::vector<std::string> alternatives;
  std::string level = "phrase";
  std::string n = "1,10,100,inf";
  std::string costs = "4,3,3";
  double threshold = kDefaultPosteriorThreshold;
  std::string non_words;
  double frame_rate = kDefaultFrameRate;
  std::string name;

  void Add(CLI::App *app) {
    common.Add(app, true);
    policy.Add(app);
    app->add_option("--ref", ref, "reference STM")->required();
    auto *lat = app->add_option("--lattices", lattices, "lattice archive");
    auto *alt = app->add_option("--alternatives", alternatives, "alternatives files; repeat for several systems");
    lat->excludes(alt);
    app->add_option("--level", level, "alternatives level derived from lattices")
        ->check(CLI::IsMember({"nbest", "word", "phrase"}));
    app->add_option("--n", n, "comma-separated depths; 'inf' for all");
    app->add_option("--costs", costs, "sub,ins,del edit costs");
    app->add_option("--posterior-threshold", threshold, "minimum posterior of a boundary-blocking arc");
    app->add_option("--non-words", non_words, "comma-separated non-word labels");
    app->add_option("--frame-rate", frame_rate, "seconds per frame")->check(CLI::PositiveNumber);
    app->add_option("--name", name, "system name for lattice input");
  }

  int Run() {
    if (lattices.empty() == alternatives.empty()) {
      throw InputError("oracle-score needs --lattices or --alternatives");
    }
    const auto stm = ParseFile(ref, ParseStm);
    const auto depths = ParseDepthList(n);
    OracleOptions options;
    options.rules = policy.Rules();
    options.legacy_expansions = policy.legacy;
    options.policy = policy.Policy();
    options.costs = ParseCosts(costs);
    options.frame_rate = frame_rate;
    options.jobs = common.jobs;

    std::vector<OracleSystem> systems;
    std::vector<std::string> warnings;
    if (!lattices.empty()) {
      const auto lats = ParseFile(lattices, ParseLatticeArchive);
      const AltLevel lvl = *ParseLevel(level);
      std::size_t deepest = 0;
      for (auto d : depths) deepest = std::max(deepest, d);
      const LabelSet labels = non_words.empty() ? LabelSet() : LabelSet(SplitList(non_words));
      const auto docs = DeriveAlternatives(lats, lvl, deepest, threshold, labels, common.jobs);
      systems.push_back({name.empty() ? StemOf(lattices) : name, lvl,
                         RunOracle(stm, docs, depths, options, &warnings)});
    } else {
      for (const auto &path : alternatives) {
        const auto docs = ParseFile(path, ParseAlternatives);
        AltLevel lvl = docs.empty() ? AltLevel::kPhrase : docs.front().level;
        for (const auto &d : docs) {
          if (d.level != lvl) throw InputError(path + ": documents mix alternative levels");
        }
        systems.push_back({StemOf(path), lvl, RunOracle(stm, docs, depths, options, &warnings)});
      }
    }
    PrintWarnings(warnings);
    WriteOutput(common.output, common.json ? OracleJson(systems).dump(2) + "\n" : RenderOracleTable(systems));
    return 0;
  }
};

struct StatsCmd {
  CommonFlags common;
  std::string alternatives;
  double frame_rate = kDefaultFrameRate;

  void Add(CLI::App *app) {
    common.Add(app, true);
    app->add_option("--alternatives", alternatives, "alternatives file")->required();
    app->add_option("--frame-rate", frame_rate, "seconds per frame")->check(CLI::PositiveNumber);
  }

  int Run() {
    const auto stats = ComputeAlternativesStats(ParseFile(alternatives, ParseAlternatives), frame_rate);
    WriteOutput(common.output, common.json ? StatsJson(stats).dump(2) + "\n" : RenderStats(stats));
    return 0;
  }
};

// ---------------------------------------------------------------------------
// --config handling: key=value lines become "--key value" arguments placed
// before the command line ones, so explicit flags take precedence.

std::map<std::string, std::string> ReadConfig(const std::string &path) {
  std::map<std::string, std::string> out;
  const std::string text = ReadFile(path);
  std::size_t line_no = 0;
  for (auto line : SplitLines(text)) {
    ++line_no;
    line = Trim(line);
    if (line.empty() || line.front() == '#' || StartsWith(line, ";;")) continue;
    const auto eq = line.find('=');
    if (eq == std::string_view::npos) {
      throw InputError(path + ": line " + std::to_string(line_no) + ": expected key=value");
    }
    std::string key(Trim(line.substr(0, eq)));
    while (StartsWith(key, "-")) key.erase(0, 1);
    out[key] = std::string(Trim(line.substr(eq + 1)));
  }
  return out;
}

std::vector<std::string> ExpandConfig(CLI::App *sub, std::vector<std::string> args) {
  std::string config;
  for (std::size_t i = 0; i < args.size(); ++i) {
    if (args[i] == "--config" && i + 1 < args.size()) {
      config = args[i + 1];
      args.erase(args.begin() + i, args.begin() + i + 2);
      break;
    }
    if (StartsWith(args[i], "--config=")) {
      config = args[i].substr(9);
      args.erase(args.begin() + i);
      break;
    }
  }
  if (config.empty()) return args;
  std::vector<std::string> injected;
  for (const auto &[key, value] : ReadConfig(config)) {
    const CLI::Option *opt = sub->get_option_no_throw("--" + key);
    if (opt == nullptr) throw InputError(config + ": unknown option '" + key + "' for " + sub->get_name());
    if (opt->get_expected_max() == 0) {
      const std::string v = ToUpper(value);
      if (v == "TRUE" || v == "1" || v == "YES" || v == "ON") {
        injected.push_back("--" + key);
      } else if (!(v == "FALSE" || v == "0" || v == "NO" || v == "OFF")) {
        throw InputError(config + ": '" + key + "' expects true or false");
      }
      continue;
    }
    if (opt->get_expected_max() > 1) {
      for (const auto &part : SplitList(value)) {
        injected.push_back("--" + key);
        injected.push_back(part);
      }
      continue;
    }
    injected.push_back("--" + key);
    injected.push_back(value);
  }
  args.insert(args.begin(), injected.begin(), injected.end());
  return args;
}

}  // namespace

int main(int argc, char **argv) {
  CLI::App app{"Alternative-aware WER scoring and lattice alternatives", "altscore"};
  app.require_subcommand(1);
  app.option_defaults()->multi_option_policy(CLI::MultiOptionPolicy::TakeLast);

  ScoreCmd score;
  FilterCmd filter;
  MergeStmCmd merge;
  LatticeCmd nbest(AltLevel::kUtterance), words(AltLevel::kWord), phrases(AltLevel::kPhrase);
  OracleCmd oracle;
  StatsCmd stats;

  std::map<std::string, std::function<int()>> actions;
  auto add = [&](const char *name, const char *help, auto &cmd) {
    CLI::App *sub = app.add_subcommand(name, help);
    sub->option_defaults()->multi_option_policy(CLI::MultiOptionPolicy::TakeLast);
    cmd.Add(sub);
    actions[name] = [&cmd] { return cmd.Run(); };
  };
  add("score", "WER, precision and recall of hypothesis CTMs against a reference STM", score);
  add("filter", "apply GLM rules to an STM or CTM", filter);
  add("merge-stm", "merge each recording channel's segments into one", merge);
  add("lattice-nbest", "N-best lists from lattices", nbest);
  add("lattice-words", "word-level alternatives from lattices", words);
  add("lattice-phrases", "phrase-level alternatives from lattices", phrases);
  add("oracle-score", "oracle WER of alternatives at several depths", oracle);
  add("stats", "depth and size statistics of an alternatives file", stats);

  try {
    std::vector<std::string> args(argv + 1, argv + argc);
    if (!args.empty() && actions.count(args.front())) {
      CLI::App *sub = app.get_subcommand(args.front());
      std::vector<std::string> rest(args.begin() + 1, args.end());
      rest = ExpandConfig(sub, rest);
      args.assign(1, args.front());
      args.insert(args.end(), rest.begin(), rest.end());
    }
    std::reverse(args.begin(), args.end());  // CLI11 consumes from the back
    app.parse(args);
  } catch (const CLI::ParseError &e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : 1;
  } catch (const InputError &e) {
    std::cerr << "altscore: " << e.what() << "\n";
    return 1;
  }

  try {
    for (const auto *sub : app.get_subcommands()) return actions.at(sub->get_name())();
  } catch (const InputError &e) {
    std::cerr << "altscore: " << e.what() << "\n";
    return 1;
  } catch (const std::exception &e) {
    std::cerr << "altscore: internal error: " << e.what() << "\n";
    return 2;
  }
  return 0;
}
