// tests/test_oracle.cc

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

#include "altscore/oracle.h"

#include "altscore/error.h"
#include "altscore/glm_filter.h"
#include "doctest.h"
#include "support/generators.h"
#include "support/oracles.h"

using namespace altscore;

namespace {

NBestList List(const std::vector<std::vector<std::string>> &entries) {
  NBestList list;
  for (std::size_t i = 0; i < entries.size(); ++i) list.entries.push_back({entries[i], static_cast<double>(i), {}});
  return list;
}

AlternativesDoc DocFromPhrases(const std::vector<std::vector<std::vector<std::string>>> &positions) {
  AlternativesDoc doc;
  int t = 0;
  for (const auto &alts : positions) {
    AltPosition pos{t, t + 10, {}};
    for (std::size_t i = 0; i < alts.size(); ++i) pos.alternatives.push_back({alts[i], static_cast<double>(i), {}});
    doc.positions.push_back(pos);
    t += 10;
  }
  return doc;
}

}  // namespace

TEST_CASE("N-best oracle") {
  AltNetwork ref = NetworkFromWords({"A", "B"});
  auto r = OracleScoreNBest(ref, List({{"A", "C"}, {"A", "B"}}));
  CHECK(r.counts.errors() == 0);
  CHECK(r.hyp_choices == std::vector<int>{1});

  auto single = OracleScoreNBest(ref, List({{"A", "C"}}));
  auto plain = Align(ref, NetworkFromWords({"A", "C"}));
  CHECK(single.counts == plain.counts);
  CHECK(single.cost == plain.cost);

  // Equal cost: the earlier entry wins.
  auto tie = OracleScoreNBest(ref, List({{"A", "X"}, {"A", "Y"}}));
  CHECK(tie.hyp_choices == std::vector<int>{0});

  CHECK_THROWS_AS(OracleScoreNBest(ref, NBestList{}), InputError);
}

TEST_CASE("N-best oracle equals the minimum over members") {
  altscore::testing::Gen g(21);
  const auto &vocab = altscore::testing::SmallVocab();
  for (int trial = 0; trial < 100; ++trial) {
    std::vector<std::string> ref_words;
    for (int i = g.Int(0, 5); i > 0; --i) ref_words.push_back(g.Pick(vocab));
    std::vector<std::vector<std::string>> entries(5);
    for (auto &e : entries) {
      for (int i = g.Int(0, 5); i > 0; --i) e.push_back(g.Pick(vocab));
    }
    std::int64_t best = INT64_MAX;
    for (const auto &e : entries) best = std::min(best, altscore::testing::EditCost(ref_words, e, {}));
    CHECK(OracleScoreNBest(NetworkFromWords(ref_words), List(entries)).cost == best);
    // The same list as one slot of a network gives the same cost.
    CHECK(OracleScoreNetwork(NetworkFromWords(ref_words), NetworkFromSequences(List(entries).entries)).cost == best);
  }
}

TEST_CASE("network oracle") {
  AltNetwork ref = NetworkFromWords({"I", "SAW", "IT"});
  auto doc = DocFromPhrases({{{"EYE"}, {"I"}}, {{"SAW", "IT"}, {"SAW", "HIT"}}});
  CHECK(OracleScoreNetwork(ref, NetworkFromDoc(doc)).counts.errors() == 0);

  AltNetwork flat = NetworkFromWords({"I", "SAW", "HIT"});
  CHECK(OracleScoreNetwork(ref, flat) == Align(ref, flat));

  altscore::testing::Gen g(4);
  for (int trial = 0; trial < 100; ++trial) {
    AltNetwork r = altscore::testing::RandomNetwork(g, 3, 0.0);
    AltNetwork h = altscore::testing::RandomNetwork(g, 4, 0.0);
    CHECK(OracleScoreNetwork(r, h).cost == altscore::testing::BruteForceAlign(r, h, {}).cost);
  }
}

TEST_CASE("oracle curve") {
  OracleUtterance utt;
  utt.reference = NetworkFromWords({"A", "B", "C"});
  AlternativesDoc doc = DocFromPhrases({{{"A"}}, {{"X"}, {"B"}}, {{"C", "D"}, {"Y"}, {"C"}}});
  doc.recording_id = "r";
  doc.channel = "A";
  utt.hypotheses.push_back(doc);

  auto rows = OracleCurve({utt}, {1, 2, 3, kUnboundedDepth});
  REQUIRE(rows.size() == 4);
  // n = 1 is the plain 1-best WER: A X C D against A B C.
  CHECK(rows[0].counts == Align(utt.reference, NetworkFromWords({"A", "X", "C", "D"})).counts);
  CHECK(rows[0].wer == doctest::Approx(200.0 / 3.0));
  CHECK(rows[1].wer == doctest::Approx(100.0 / 3.0));
  CHECK(rows[2].wer == 0.0);
  CHECK(rows[3].wer == 0.0);
  CHECK(rows[0].depth == DepthStats{1, 1, 1});
  CHECK(rows[2].depth == DepthStats{3, 3, 2});
  for (std::size_t i = 1; i < rows.size(); ++i) CHECK(rows[i].wer <= rows[i - 1].wer);
  CHECK(rows[0].compressed_bytes > 0);
  CHECK(rows[0].compressed_bytes < rows[2].compressed_bytes);

  CHECK_THROWS_AS(OracleCurve({utt}, {0}), InputError);

  // Thread count does not change results.
  auto parallel = OracleCurve({utt, utt, utt}, {1, 2}, {}, kDefaultFrameRate, {}, 3);
  auto serial = OracleCurve({utt, utt, utt}, {1, 2});
  for (std::size_t i = 0; i < serial.size(); ++i) {
    CHECK(parallel[i].counts == serial[i].counts);
    CHECK(parallel[i].compressed_bytes == serial[i].compressed_bytes);
  }
}

TEST_CASE("compressed size") {
  CHECK(CompressedSize("") > 0);
  std::string repetitive(10000, 'a');
  CHECK(CompressedSize(repetitive) < 100);
}
