// tests/test_align.cc

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

#include "altscore/align.h"

#include <cmath>

#include "altscore/error.h"
#include "altscore/glm_filter.h"
#include "doctest.h"
#include "support/generators.h"
#include "support/oracles.h"

using namespace altscore;

namespace {

ErrorCounts Counts(std::int64_t c, std::int64_t s, std::int64_t d, std::int64_t i) {
  ErrorCounts e;
  e.correct = c;
  e.substituted = s;
  e.deleted = d;
  e.inserted = i;
  return e;
}

AltNetwork Alternation(const std::vector<std::vector<std::string>> &alts) {
  Slot slot;
  for (std::size_t i = 0; i < alts.size(); ++i) slot.alternatives.push_back(MakeAlternative(alts[i], static_cast<int>(i)));
  return AltNetwork{{slot}};
}

}  // namespace

TEST_CASE("alternation matches once") {
  auto r = Align(Alternation({{"I'M"}, {"I", "AM"}}), NetworkFromWords({"I'M"}));
  CHECK(r.counts == Counts(1, 0, 0, 0));
  CHECK(r.ref_choices == std::vector<int>{0});
  CHECK(r.rank_cost == 0);

  auto two = Align(Alternation({{"I'M"}, {"I", "AM"}}), NetworkFromWords({"I", "AM"}));
  CHECK(two.counts == Counts(2, 0, 0, 0));
  CHECK(two.ref_choices == std::vector<int>{1});
}

TEST_CASE("optional deletion") {
  AltNetwork ref{{Slot{{MakeAlternative({"%HESITATION"}, 0, true), Alternative{{}, 1}}}}};
  auto r = Align(ref, AltNetwork{});
  CHECK(r.counts == Counts(0, 0, 0, 0));
  CHECK(r.counts.ref_length() == 0);
  CHECK(r.path.empty());

  auto hit = Align(ref, NetworkFromWords({"%HESITATION"}));
  CHECK(hit.counts == Counts(1, 0, 0, 0));
}

TEST_CASE("plain sequences") {
  CHECK(Align(NetworkFromWords({"A", "B", "C"}), NetworkFromWords({"A", "B", "C"})).counts == Counts(3, 0, 0, 0));
  auto r = Align(NetworkFromWords({"A", "B"}), NetworkFromWords({"X", "A", "B", "Y"}));
  CHECK(r.counts == Counts(2, 0, 0, 2));
  CHECK(r.cost == 6);
  REQUIRE(r.path.size() == 4);
  CHECK(r.path[0].verdict == Verdict::kInsertion);
  CHECK(r.path[1] == AlignedWord{Verdict::kCorrect, "A", "A", 0, 1});
  CHECK(Align(NetworkFromWords({"A"}), NetworkFromWords({"a"})).counts == Counts(1, 0, 0, 0));
  CHECK(Align(AltNetwork{}, AltNetwork{}).counts == Counts(0, 0, 0, 0));
  CHECK(Align(NetworkFromWords({"A", "B"}), AltNetwork{}).counts == Counts(0, 0, 2, 0));
}

TEST_CASE("custom costs") {
  // With a cheap insertion+deletion, a substitution is replaced by both.
  CostModel costs{10, 1, 1};
  auto r = Align(NetworkFromWords({"A"}), NetworkFromWords({"B"}), costs);
  CHECK(r.counts == Counts(0, 0, 1, 1));
  CHECK(r.cost == 2);
}

TEST_CASE("nested networks are rejected") {
  Alternative nested;
  nested.elements.push_back({"", false, {MakeAlternative({"A"})}, std::nullopt});
  CHECK_THROWS_AS(Align(AltNetwork{{Slot{{nested}}}}, AltNetwork{}), InvariantError);
}

TEST_CASE("metrics") {
  Metrics m = ComputeMetrics(Counts(3, 1, 1, 1));
  CHECK(m.wer == doctest::Approx(60.0));
  CHECK(m.precision == doctest::Approx(0.6));
  CHECK(m.recall == doctest::Approx(0.6));

  m = ComputeMetrics(Counts(0, 0, 4, 0));
  CHECK(m.wer == 100.0);
  CHECK(m.precision == 1.0);
  CHECK(m.recall == 0.0);

  m = ComputeMetrics(Counts(5, 0, 0, 0));
  CHECK(m == Metrics{0.0, 1.0, 1.0});

  CHECK(ComputeMetrics(Counts(0, 0, 0, 0)) == Metrics{0.0, 1.0, 1.0});
  CHECK(ComputeMetrics(Counts(0, 0, 0, 2)) == Metrics{100.0, 0.0, 1.0});
}

TEST_CASE("aggregation is a micro-average") {
  AlignmentResult a, b;
  a.counts = Counts(1, 0, 0, 0);
  b.counts = Counts(1, 1, 0, 0);
  std::vector<AlignmentResult> both{a, b};
  CHECK(Aggregate(both).wer == doctest::Approx(100.0 / 3.0));
  std::vector<AlignmentResult> one{b};
  CHECK(Aggregate(one) == ComputeMetrics(b.counts));
  a.counts = b.counts = Counts(4, 0, 0, 0);
  std::vector<AlignmentResult> perfect{a, b};
  CHECK(Aggregate(perfect).wer == 0.0);
  CHECK_THROWS_AS(Aggregate(std::span<const AlignmentResult>{}), InputError);
}

TEST_CASE("DP equals brute force on random networks") {
  altscore::testing::Gen g(11);
  const CostModel costs;
  for (int trial = 0; trial < 300; ++trial) {
    AltNetwork ref = altscore::testing::RandomNetwork(g, 4);
    AltNetwork hyp = altscore::testing::RandomNetwork(g, 4);
    auto brute = altscore::testing::BruteForceAlign(ref, hyp, costs);
    auto r = Align(ref, hyp, costs);
    CAPTURE(DebugString(ref));
    CAPTURE(DebugString(hyp));
    CHECK(r.cost == brute.cost);
    CHECK(r.rank_cost == brute.rank);
    CHECK(PrimaryCost(r.counts, costs) == r.cost);

    // The path spells one sequence from each network's language.
    std::vector<std::string> ref_words, hyp_words;
    for (const auto &w : r.path) {
      if (!w.ref.empty()) ref_words.push_back(w.ref);
      if (!w.hyp.empty()) hyp_words.push_back(w.hyp);
    }
    bool ref_ok = false, hyp_ok = false;
    for (const auto &e : altscore::testing::ExpandNetwork(ref)) ref_ok = ref_ok || e.words == ref_words;
    for (const auto &e : altscore::testing::ExpandNetwork(hyp)) hyp_ok = hyp_ok || e.words == hyp_words;
    CHECK(ref_ok);
    CHECK(hyp_ok);
    CHECK(altscore::testing::EditCost(ref_words, hyp_words, costs) == r.cost);
  }
}
