// tests/test_glm_filter.cc

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

#include "altscore/glm_filter.h"

#include "altscore/error.h"
#include "doctest.h"
#include "support/fixtures.h"
#include "support/generators.h"
#include "support/oracles.h"

using namespace altscore;

namespace {

StmSegment Seg(const std::string &words) {
  return ParseStm("r A s 0 10 " + words + "\n").front();
}

AltNetwork Ref(const std::string &words, const std::string &glm = "") {
  return ApplyGlmToReference(Seg(words), PromoteExpansions(ParseGlm(glm)));
}

AltNetwork Hyp(const std::string &ctm, const std::string &glm = "") {
  return ApplyGlmToHypothesis(ParseCtm(ctm), PromoteExpansions(ParseGlm(glm)));
}

}  // namespace

TEST_CASE("promotion of expansions") {
  auto promoted = PromoteExpansions(ParseGlm("I'M => I AM\n"));
  REQUIRE(promoted.size() == 1);
  CHECK(promoted[0].kind == RuleKind::kAlternation);
  CHECK(promoted[0].rhs == std::vector<std::vector<std::string>>{{"I'M"}, {"I", "AM"}});

  auto alt = ParseGlm("I'M => { I'M / I AM }\n");
  CHECK(PromoteExpansions(alt) == alt);
  CHECK(PromoteExpansions(PromoteExpansions(ParseGlm("A => B\nC => { C / D }\n"))) ==
        PromoteExpansions(ParseGlm("A => B\nC => { C / D }\n")));
  CHECK(PromoteExpansions({}).empty());
}

TEST_CASE("reference filtering") {
  CHECK(DebugString(Ref("I'M", "I'M => I AM\n")) == "[I'M | I AM]");
  CHECK(DebugString(Ref("(%HESITATION)")) == "[(%HESITATION) | @]");
  CHECK(DebugString(Ref("HELLO")) == "[HELLO]");
  CHECK(DebugString(Ref("A { B / C } D")) == "[A] [B | C] [D]");
}

TEST_CASE("longest match wins, single pass") {
  const std::string glm = "A => X\nA B => Y\nX => Z\n";
  CHECK(DebugString(Ref("A B A", glm)) == "[A B | Y] [A | X]");
  // Legacy mode rewrites in place, still a single pass.
  auto legacy = ApplyGlmToReference(Seg("A B A"), ParseGlm(glm));
  CHECK(DebugString(legacy) == "[Y] [X]");
}

TEST_CASE("hypothesis filtering") {
  CHECK(DebugString(Hyp("r A 0 1 I'M\n", "I'M => I AM\n")) == "[I'M | I AM]");
  CHECK(DebugString(Hyp(altscore::testing::kAltBlockListing, "I'M => I AM\n")) == "[UM | I'M | I AM]");
  CHECK(Hyp("").slots.empty());
  // Rules match across plain tokens.
  CHECK(DebugString(Hyp("r A 0 1 A\nr A 1 1 B\n", "A B => C\n")) == "[A B | C]");
}

TEST_CASE("hypothesis words keep their source times") {
  auto net = Hyp("r A 4.49 0.66 I'M 0.9\n", "I'M => I AM\n");
  const auto &alts = net.slots.at(0).alternatives;
  REQUIRE(alts.size() == 2);
  CHECK(alts[0].elements[0].timing == WordTiming{4.49, 0.66, 0.9});
  CHECK(alts[1].elements[0].timing->duration == doctest::Approx(0.33));
  CHECK(alts[1].elements[1].timing->start == doctest::Approx(4.82));
}

TEST_CASE("flattening nested alternatives") {
  AltNetwork flat = Ref("A { B / C }");
  CHECK(FlattenNestedAlts(flat) == flat);

  Slot dup;
  dup.alternatives.push_back(MakeAlternative({"A"}, 0));
  Alternative nested;
  nested.rank = 1;
  nested.elements.push_back({"", false, {MakeAlternative({"A"}, 0)}, std::nullopt});
  dup.alternatives.push_back(nested);
  CHECK(DebugString(FlattenNestedAlts(AltNetwork{{dup}})) == "[A]");

  // {UM, {I'M, {I AM}}}
  Slot slot;
  slot.alternatives.push_back(MakeAlternative({"UM"}, 0));
  Alternative inner;
  inner.rank = 1;
  inner.elements.push_back({"", false, {MakeAlternative({"I'M"}, 0), MakeAlternative({"I", "AM"}, 1)}, std::nullopt});
  slot.alternatives.push_back(inner);
  AltNetwork out = FlattenNestedAlts(AltNetwork{{slot}});
  CHECK(DebugString(out) == "[UM | I'M | I AM]");
  CHECK(out.slots[0].alternatives[2].rank == 2);
  CHECK(IsFlat(out));

  // Cartesian product inside one alternative: X {A / B} {C / D}.
  Alternative prod;
  prod.elements.push_back({"X", false, {}, std::nullopt});
  prod.elements.push_back({"", false, {MakeAlternative({"A"}), MakeAlternative({"B"}, 1)}, std::nullopt});
  prod.elements.push_back({"", false, {MakeAlternative({"C"}), MakeAlternative({"D"}, 1)}, std::nullopt});
  CHECK(DebugString(FlattenNestedAlts(AltNetwork{{Slot{{prod}}}})) == "[X A C | X A D | X B C | X B D]");
}

TEST_CASE("flattening preserves the language") {
  altscore::testing::Gen g(7);
  for (int trial = 0; trial < 50; ++trial) {
    // Wrap two random slots' alternatives as nested groups of one slot.
    AltNetwork a = altscore::testing::RandomNetwork(g, 2, 0.0);
    if (a.slots.size() < 2) continue;
    Alternative nested;
    for (const auto &s : a.slots) nested.elements.push_back({"", false, s.alternatives, std::nullopt});
    AltNetwork wrapped{{Slot{{nested}}}};
    AltNetwork flat = FlattenNestedAlts(wrapped);
    std::set<std::vector<std::string>> want, got;
    for (const auto &e : altscore::testing::ExpandNetwork(a)) want.insert(e.words);
    for (const auto &e : altscore::testing::ExpandNetwork(flat)) got.insert(e.words);
    CHECK(want == got);
    CHECK(flat.slots[0].alternatives.size() == got.size());
  }
}

TEST_CASE("hesitation and backchannel policy") {
  FilterPolicy policy;
  policy.backchannel_mode = BackchannelMode::kExclude;
  CHECK(DebugString(ApplyPolicy(Hyp("r A 0 1 UH-HUH\nr A 1 1 RIGHT\n"), policy, Side::kHypothesis)) == "[RIGHT]");

  policy.backchannel_mode = BackchannelMode::kOptional;
  CHECK(DebugString(ApplyPolicy(Ref("UH-HUH"), policy, Side::kReference)) == "[(UH-HUH) | @]");

  policy.backchannel_mode = BackchannelMode::kScore;
  CHECK(DebugString(ApplyPolicy(Ref("UH-HUH UH"), policy, Side::kReference)) == "[UH-HUH] [(UH) | @]");
  CHECK(DebugString(ApplyPolicy(Hyp("r A 0 1 UH-HUH\nr A 1 1 UH\n"), policy, Side::kHypothesis)) ==
        "[UH-HUH] [UH]");

  policy.exclude_hyp_hesitations = true;
  CHECK(DebugString(ApplyPolicy(Hyp("r A 0 1 UH-HUH\nr A 1 1 UH\n"), policy, Side::kHypothesis)) == "[UH-HUH]");
  // A block whose only word alternative is dropped keeps the empty choice.
  CHECK(DebugString(ApplyPolicy(Hyp("r A * * <ALT_BEGIN>\nr A 0 1 UM\nr A * * <ALT>\nr A 0 1 I'M\n"
                                    "r A * * <ALT_END>\n"),
                                policy, Side::kHypothesis)) == "[@ | I'M]");
}

TEST_CASE("network back to CTM and STM") {
  auto net = Hyp("sw_4390 A 4.49 0.66 I'M\n", "I'M => I AM\n");
  CHECK(WriteCtm(NetworkToCtm(net, "sw_4390", "A")) ==
        "sw_4390 A * * <ALT_BEGIN>\nsw_4390 A 4.49 0.66 I'M\nsw_4390 A * * <ALT>\n"
        "sw_4390 A 4.49 0.33 I\nsw_4390 A 4.82 0.33 AM\nsw_4390 A * * <ALT_END>\n");

  for (const auto &text : altscore::testing::CtmFixtures()) {
    // Without rules, filtering is the identity on single-channel fixtures
    // with non-degenerate blocks.
    auto items = ParseCtm(text);
    bool simple = true;
    for (const auto &item : items) {
      simple = simple && RecordingOf(item) == RecordingOf(items[0]) && ChannelOf(item) == ChannelOf(items[0]);
      if (const auto *b = std::get_if<CtmAltBlock>(&item)) simple = simple && b->alternatives.size() > 1 && b->FirstToken();
    }
    if (!simple) continue;
    CAPTURE(text);
    CHECK(WriteCtm(NetworkToCtm(ApplyGlmToHypothesis(items, {}), RecordingOf(items[0]), ChannelOf(items[0]))) ==
          text);
  }

  StmSegment seg = Seg("(UH) I'M");
  FilterPolicy policy;
  auto ref = ApplyPolicy(ApplyGlmToReference(seg, PromoteExpansions(ParseGlm("I'M => I AM\n"))), policy,
                         Side::kReference);
  CHECK(WriteStm({NetworkToStm(ref, seg)}) == "r A s 0 10 (UH) { I'M / I AM }\n");
  CHECK(ParseStm(WriteStm({NetworkToStm(ref, seg)}))[0].words.size() == 2);
}
