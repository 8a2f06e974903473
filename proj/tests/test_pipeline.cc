// tests/test_pipeline.cc

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

#include "altscore/report.h"
#include "altscore/text.h"
#include "doctest.h"

using namespace altscore;

namespace {

const char *kRef =
    "r1 A s 0 2 I'M HAPPY\n"
    "r1 A s 2 4 UH-HUH RIGHT\n"
    "r1 A s 4 6 SEE YOU LATER\n";

// UM for I'M, an inserted hesitation, RIGHT drifting into the next segment,
// a missing and an inserted backchannel.
const char *kHyp =
    "r1 A 0.2 0.4 UM\n"
    "r1 A 0.8 0.6 HAPPY\n"
    "r1 A 1.5 0.3 UH\n"
    "r1 A 3.95 0.3 RIGHT\n"
    "r1 A 4.4 0.3 SEE\n"
    "r1 A 4.8 0.3 MHM\n"
    "r1 A 5.2 0.3 YOU\n"
    "r1 A 5.6 0.3 LATER\n";

ScoreOptions Options() {
  ScoreOptions o;
  o.rules = ParseGlm("I'M => I AM\n");
  return o;
}

}  // namespace

TEST_CASE("identical reference and hypothesis score zero at every stage") {
  auto stm = ParseStm("r1 A s 0 2 HELLO THERE\nr1 A s 2 4 I'M FINE\n");
  auto ctm = ParseCtm("r1 A 0 1 HELLO\nr1 A 1 1 THERE\nr1 A 2 1 I'M\nr1 A 3 1 FINE\n");
  auto rows = ScoreStages(stm, ctm, Options());
  REQUIRE(rows.size() == 6);
  for (const auto &row : rows) CHECK(FormatWer(row.metrics.wer) == "0.00");
}

TEST_CASE("hesitation insertion disappears at the exclusion stage") {
  auto stm = ParseStm("r1 A s 0 2 HELLO THERE\n");
  auto ctm = ParseCtm("r1 A 0 0.5 HELLO\nr1 A 0.5 0.5 UH\nr1 A 1 1 THERE\n");
  auto rows = ScoreStages(stm, ctm, Options());
  CHECK(rows[0].metrics.wer == doctest::Approx(50.0));
  CHECK(rows[1].metrics.wer == doctest::Approx(50.0));
  CHECK(rows[2].label == "exclude hesitations");
  CHECK(rows[2].metrics.wer == 0.0);
}

TEST_CASE("stage ladder") {
  auto stages = StageLadder(Options());
  std::vector<std::string> names;
  for (const auto &s : stages) names.push_back(s.name);
  CHECK(names == std::vector<std::string>{"baseline", "alternations", "exclude hesitations",
                                          "optional backchannels", "exclude backchannels", "single segment"});
  CHECK(stages[0].options.legacy_expansions);
  CHECK(stages[5].options.segmentation == SegmentationMode::kSingleSegment);
  CHECK(stages[5].options.policy.backchannel_mode == BackchannelMode::kExclude);

  auto rows = ScoreStages(ParseStm(kRef), ParseCtm(kHyp), Options());
  REQUIRE(rows.size() == 6);
  for (std::size_t i = 1; i < rows.size(); ++i) CHECK(rows[i].metrics.wer <= rows[i - 1].metrics.wer);
  // Only the UM substitution is left; UH-HUH is skipped.
  CHECK(rows[5].counts.errors() == 1);
  CHECK(rows[5].counts.ref_length() == 6);
  CHECK(rows[0].counts.errors() > rows[5].counts.errors());
}

TEST_CASE("per-recording summary") {
  auto stm = ParseStm("r1 A s 0 2 A B\nr2 A s 0 2 C D\nr1 A s 2 4 E\n");
  auto ctm = ParseCtm("r1 A 0 1 A\nr1 A 1 1 B\nr2 A 0 1 C\nr1 A 2 1 X\n");
  auto run = ScoreSystem(stm, ctm, {});
  REQUIRE(run.segments.size() == 3);
  auto rows = SummarizeRun(run);
  REQUIRE(rows.size() == 3);
  CHECK(rows[0].label == "r1 A");
  CHECK(rows[0].counts.substituted == 1);
  CHECK(rows[1].label == "r2 A");
  CHECK(rows[1].counts.deleted == 1);
  CHECK(rows[2].label == kOverallLabel);
  CHECK(rows[2].metrics.wer == doctest::Approx(40.0));
}

TEST_CASE("scoring is deterministic across thread counts") {
  auto stm = ParseStm(kRef);
  auto ctm = ParseCtm(kHyp);
  ScoreOptions serial = Options(), parallel = Options();
  parallel.jobs = 4;
  auto a = SummarizeRun(ScoreSystem(stm, ctm, serial));
  auto b = SummarizeRun(ScoreSystem(stm, ctm, parallel));
  CHECK(RenderScoreTable(a, "Recording") == RenderScoreTable(b, "Recording"));
  CHECK(ScoreJson(a).dump() == ScoreJson(b).dump());
}

TEST_CASE("ignore segments swallow their words") {
  auto stm = ParseStm("r1 A s 0 2 A\nr1 A s 2 4 IGNORE_TIME_SEGMENT_IN_SCORING\n");
  auto ctm = ParseCtm("r1 A 0 1 A\nr1 A 2.5 1 NOISE\n");
  auto rows = SummarizeRun(ScoreSystem(stm, ctm, {}));
  CHECK(rows.back().counts.errors() == 0);
}

TEST_CASE("report tables and JSON agree") {
  ScoreRow a{"sysA", {}, {}}, b{"sysB", {}, {}}, c{"sysC", {}, {}};
  a.counts.correct = 2, a.counts.substituted = 1;
  b.counts.correct = 3;
  c.counts.correct = 1, c.counts.deleted = 2;
  std::vector<ScoreRow> rows{a, b, c};
  for (auto &r : rows) r.metrics = ComputeMetrics(r.counts);

  std::vector<ScoreRow> one{rows[0]};
  auto table = RenderScoreTable(one, "System");
  auto lines = SplitLines(table);
  CHECK(lines.size() == 2);

  SortByWer(rows);
  CHECK(rows[0].label == "sysB");
  CHECK(rows[1].label == "sysA");
  CHECK(rows[2].label == "sysC");

  auto json = ScoreJson(rows);
  auto text = RenderScoreTable(rows, "System");
  for (std::size_t i = 0; i < rows.size(); ++i) {
    auto fields = SplitFields(SplitLines(text)[i + 1]);
    CHECK(fields[0] == json[i]["label"].get<std::string>());
    CHECK(fields[7] == FormatWer(json[i]["wer"].get<double>()));
    CHECK(fields[8] == FormatRatio(json[i]["precision"].get<double>()));
    CHECK(fields[9] == FormatRatio(json[i]["recall"].get<double>()));
  }
  CHECK(SplitFields(SplitLines(text)[2])[7] == "33.33");
}

TEST_CASE("oracle report") {
  OracleRow r1;
  r1.n = 1;
  r1.wer = 12.345;
  r1.depth = {1, 1, 1};
  r1.compressed_bytes = 100;
  OracleRow rinf = r1;
  rinf.n = kUnboundedDepth;
  rinf.wer = 0.185;
  std::vector<OracleSystem> systems{{"sys", AltLevel::kPhrase, {r1, rinf}}};
  auto text = RenderOracleTable(systems);
  auto json = OracleJson(systems);
  auto lines = SplitLines(text);
  CHECK(SplitFields(lines[0]) == std::vector<std::string>{"System", "Level", "N", "WER", "N_max", "N_.9", "N_.5",
                                                          "Bytes"});
  CHECK(SplitFields(lines[1])[3] == "12.35");
  CHECK(SplitFields(lines[2])[2] == "inf");
  CHECK(json[1]["n"] == "inf");
  for (std::size_t i = 0; i < 2; ++i) CHECK(SplitFields(lines[i + 1])[3] == FormatWer(json[i]["wer"].get<double>()));
}

TEST_CASE("hypothesis networks are filtered like CTM") {
  AlternativesDoc doc;
  doc.positions.push_back({0, 10, {{{"UM"}, 0, {}}, {{"I'M"}, 1, {}}}});
  doc.positions.push_back({10, 20, {{{"HAPPY"}, 0, {}}}});
  auto rules = PromoteExpansions(ParseGlm("I'M => I AM\n"));
  FilterPolicy policy;
  CHECK(DebugString(FilterHypothesisNetwork(NetworkFromDoc(doc), rules, policy)) == "[UM | I'M | I AM] [HAPPY]");
  policy.exclude_hyp_hesitations = true;
  CHECK(DebugString(FilterHypothesisNetwork(NetworkFromDoc(doc), rules, policy)) == "[@ | I'M | I AM] [HAPPY]");
}

TEST_CASE("oracle utterances follow segment assignment") {
  auto stm = ParseStm("r1 A s 0 2 I'M HAPPY\nr1 A s 2 4 SEE YOU\n");
  auto docs = ParseAlternatives(
      "utterance u1 r1 A phrase\nposition 0 100\nalt 0 UM HAPPY\nalt 1 I AM HAPPY\n"
      "utterance u2 r1 A phrase\nposition 210 390\nalt 0 SEE\nalt 1 SEE YOU\n"
      "utterance u3 r9 A phrase\nposition 0 10\nalt 0 X\n");
  OracleOptions options;
  options.rules = ParseGlm("I'M => I AM\n");
  std::vector<std::string> warnings;
  auto utts = BuildOracleUtterances(stm, docs, options, &warnings);
  REQUIRE(utts.size() == 2);
  CHECK(utts[0].hypotheses.size() == 1);
  CHECK(utts[0].hypotheses[0].utterance_id == "u1");
  CHECK(utts[1].hypotheses[0].utterance_id == "u2");
  CHECK(warnings.size() == 1);

  auto rows = RunOracle(stm, docs, {1, 2}, options);
  CHECK(rows[0].counts.errors() == 2);
  CHECK(rows[1].counts.errors() == 0);
}

TEST_CASE("deriving alternatives from lattices") {
  auto lats = ParseLatticeArchive(
      "utterance u1 r1 A\n0 1 A 0 10 0\n0 1 B 0 10 1\n1 2 <sil> 10 20 0\n2 3 C 20 30 0\nfinal 3 0\n");
  auto nbest = DeriveAlternatives(lats, AltLevel::kUtterance, 5);
  REQUIRE(nbest.size() == 1);
  CHECK(nbest[0].level == AltLevel::kUtterance);
  CHECK(nbest[0].utterance_id == "u1");
  CHECK(nbest[0].positions.at(0).alternatives.size() == 2);

  auto phrases = DeriveAlternatives(lats, AltLevel::kPhrase, 5);
  CHECK(phrases[0].positions.size() == 2);
  CHECK(phrases[0].recording_id == "r1");
  auto words = DeriveAlternatives(lats, AltLevel::kWord, 1);
  CHECK(words[0].level == AltLevel::kWord);
  for (const auto &pos : words[0].positions) CHECK(pos.alternatives.size() == 1);
}
