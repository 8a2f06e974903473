// src/glm_filter.cc

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

#include <algorithm>
#include <utility>

#include "altscore/error.h"
#include "altscore/text.h"

namespace altscore {

namespace {

constexpr std::size_t kMaxExpansions = std::size_t{1} << 20;

}  // namespace

std::set<std::string> DefaultHesitationWords() {
  return {"%HESITATION", "UH", "UM", "EH", "MM", "HM", "AH", "HUH",
          "HA", "ER", "OOF", "HEE", "ACH", "EEE", "EW"};
}

std::set<std::string> DefaultBackchannelWords() {
  return {"UH-HUH", "UM-HUM", "MM-HMM", "MHM", "YEAH-HUH"};
}

std::string_view BackchannelModeName(BackchannelMode mode) {
  switch (mode) {
    case BackchannelMode::kScore:
      return "score";
    case BackchannelMode::kOptional:
      return "optional";
    case BackchannelMode::kExclude:
      return "exclude";
  }
  return "score";
}

std::set<std::string> ParseWordList(std::string_view text) {
  std::set<std::string> words;
  for (auto line : SplitLines(text)) {
    line = Trim(line);
    if (line.empty() || StartsWith(line, ";;")) continue;
    for (const auto &w : SplitFields(line)) words.insert(ToUpper(w));
  }
  return words;
}

// ---------------------------------------------------------------------------

GlmMatcher::GlmMatcher(const std::vector<GlmRule> &rules) : rules_(&rules) {
  for (std::size_t i = 0; i < rules.size(); ++i) {
    if (rules[i].lhs.empty()) throw InputError("GLM rule with an empty left-hand side");
    by_first_word_[rules[i].lhs.front()].push_back(i);
  }
  for (auto &[word, ids] : by_first_word_) {
    std::stable_sort(ids.begin(), ids.end(), [&rules](std::size_t a, std::size_t b) {
      return rules[a].lhs.size() > rules[b].lhs.size();
    });
  }
}

const GlmRule *GlmMatcher::Match(std::span<const std::string> words) const {
  if (words.empty()) return nullptr;
  auto it = by_first_word_.find(words.front());
  if (it == by_first_word_.end()) return nullptr;
  for (std::size_t id : it->second) {
    const GlmRule &rule = (*rules_)[id];
    if (rule.lhs.size() > words.size()) continue;
    if (std::equal(rule.lhs.begin(), rule.lhs.end(), words.begin())) return &rule;
  }
  return nullptr;
}

std::vector<GlmRule> PromoteExpansions(const std::vector<GlmRule> &rules) {
  std::vector<GlmRule> out;
  out.reserve(rules.size());
  for (const auto &rule : rules) {
    // An identity expansion has nothing to alternate with.
    if (rule.kind == RuleKind::kAlternation || rule.rhs.empty() || rule.rhs.front() == rule.lhs) {
      out.push_back(rule);
      continue;
    }
    GlmRule promoted = rule;
    promoted.kind = RuleKind::kAlternation;
    promoted.rhs = {rule.lhs, rule.rhs.front()};
    out.push_back(std::move(promoted));
  }
  return out;
}

// ---------------------------------------------------------------------------

namespace {

Slot SlotFromRule(const GlmRule &rule, bool optional) {
  Slot slot;
  for (std::size_t r = 0; r < rule.rhs.size(); ++r) {
    slot.alternatives.push_back(MakeAlternative(rule.rhs[r], static_cast<int>(r)));
    if (rule.kind == RuleKind::kExpansion) break;
  }
  if (optional) {
    bool has_empty = std::any_of(slot.alternatives.begin(), slot.alternatives.end(),
                                 [](const Alternative &a) { return a.empty(); });
    if (!has_empty) slot.alternatives.push_back({{}, static_cast<int>(slot.alternatives.size())});
  }
  return slot;
}

// Rule application over a plain word run; one slot per match or unmatched word.
std::vector<std::pair<Slot, std::size_t>> RewriteRun(const std::vector<std::string> &words,
                                                     const std::vector<bool> &optional,
                                                     const GlmMatcher &matcher) {
  std::vector<std::pair<Slot, std::size_t>> out;  // slot, number of source words
  std::size_t i = 0;
  while (i < words.size()) {
    std::span<const std::string> rest(words.data() + i, words.size() - i);
    if (const GlmRule *rule = matcher.Match(rest)) {
      const std::size_t len = rule->lhs.size();
      bool opt = std::any_of(optional.begin() + i, optional.begin() + i + len, [](bool b) { return b; });
      out.emplace_back(SlotFromRule(*rule, opt), len);
      i += len;
      continue;
    }
    Slot slot;
    slot.alternatives.push_back(MakeAlternative({words[i]}, 0, optional[i]));
    if (optional[i]) slot.alternatives.push_back({{}, 1});
    out.emplace_back(std::move(slot), 1);
    ++i;
  }
  return out;
}

// Words copied verbatim from the source tokens keep their times; rewritten
// words share the matched span evenly.
void AttachTimings(Slot &slot, std::span<const CtmToken *const> source) {
  if (source.empty()) return;
  const double lo = source.front()->start;
  const double hi = source.back()->start + source.back()->duration;
  for (auto &alt : slot.alternatives) {
    bool verbatim = alt.elements.size() == source.size();
    for (std::size_t i = 0; verbatim && i < source.size(); ++i) {
      verbatim = alt.elements[i].word == ToUpper(source[i]->surface);
    }
    const std::size_t n = alt.elements.size();
    for (std::size_t i = 0; i < n; ++i) {
      if (verbatim) {
        const CtmToken &t = *source[i];
        alt.elements[i].timing = WordTiming{t.start, t.duration, t.confidence};
      } else {
        const double step = (hi - lo) / static_cast<double>(n);
        alt.elements[i].timing = WordTiming{lo + step * static_cast<double>(i), step, std::nullopt};
      }
    }
  }
}

}  // namespace

AltNetwork ApplyGlmToReference(const StmSegment &segment, const std::vector<GlmRule> &rules) {
  GlmMatcher matcher(rules);
  AltNetwork net;
  std::vector<std::string> run;
  std::vector<bool> run_optional;
  auto flush = [&] {
    for (auto &[slot, n] : RewriteRun(run, run_optional, matcher)) net.slots.push_back(std::move(slot));
    run.clear();
    run_optional.clear();
  };
  for (const auto &w : segment.words) {
    if (w.alternation.empty()) {
      run.push_back(ToUpper(w.surface));
      run_optional.push_back(w.optional_deletion);
      continue;
    }
    // Already-filtered inline group; single pass means no further rewriting.
    flush();
    Slot slot;
    for (std::size_t r = 0; r < w.alternation.size(); ++r) {
      slot.alternatives.push_back(MakeAlternative(w.alternation[r], static_cast<int>(r)));
    }
    net.slots.push_back(std::move(slot));
  }
  flush();
  return net;
}

std::vector<AltNetwork> ApplyGlmToReference(const std::vector<StmSegment> &segments,
                                            const std::vector<GlmRule> &rules) {
  std::vector<AltNetwork> out;
  out.reserve(segments.size());
  for (const auto &seg : segments) out.push_back(ApplyGlmToReference(seg, rules));
  return out;
}

AltNetwork ApplyGlmToHypothesis(const std::vector<CtmItem> &stream, const std::vector<GlmRule> &rules) {
  GlmMatcher matcher(rules);
  AltNetwork net;
  std::vector<const CtmToken *> run;

  auto flush = [&] {
    std::vector<std::string> words;
    for (const auto *t : run) words.push_back(ToUpper(t->surface));
    std::vector<bool> optional(words.size(), false);
    std::size_t pos = 0;
    for (auto &[slot, n] : RewriteRun(words, optional, matcher)) {
      AttachTimings(slot, std::span<const CtmToken *const>(run.data() + pos, n));
      net.slots.push_back(std::move(slot));
      pos += n;
    }
    run.clear();
  };

  for (const auto &item : stream) {
    if (const auto *tok = std::get_if<CtmToken>(&item)) {
      run.push_back(tok);
      continue;
    }
    flush();
    const auto &block = std::get<CtmAltBlock>(item);
    Slot slot;
    for (std::size_t a = 0; a < block.alternatives.size(); ++a) {
      const auto &tokens = block.alternatives[a];
      std::vector<const CtmToken *> ptrs;
      std::vector<std::string> words;
      for (const auto &t : tokens) {
        ptrs.push_back(&t);
        words.push_back(ToUpper(t.surface));
      }
      Alternative alt;
      alt.rank = static_cast<int>(a);
      std::size_t pos = 0;
      for (auto &[sub, n] : RewriteRun(words, std::vector<bool>(words.size(), false), matcher)) {
        AttachTimings(sub, std::span<const CtmToken *const>(ptrs.data() + pos, n));
        pos += n;
        if (sub.alternatives.size() == 1) {
          for (auto &el : sub.alternatives.front().elements) alt.elements.push_back(std::move(el));
        } else {
          alt.elements.push_back({"", false, std::move(sub.alternatives), std::nullopt});
        }
      }
      slot.alternatives.push_back(std::move(alt));
    }
    net.slots.push_back(std::move(slot));
  }
  flush();
  return FlattenNestedAlts(net);
}

// ---------------------------------------------------------------------------

namespace {

using Expansion = std::vector<AltElement>;

std::vector<Expansion> Expand(const Alternative &alt) {
  std::vector<Expansion> partial{{}};
  for (const auto &el : alt.elements) {
    if (!el.is_group()) {
      for (auto &p : partial) p.push_back(el);
      continue;
    }
    std::vector<Expansion> choices;
    for (const auto &sub : el.group) {
      for (auto &e : Expand(sub)) choices.push_back(std::move(e));
    }
    if (partial.size() * choices.size() > kMaxExpansions) {
      throw InputError("nested alternatives expand to more than " + std::to_string(kMaxExpansions) +
                       " sequences");
    }
    std::vector<Expansion> next;
    next.reserve(partial.size() * choices.size());
    for (const auto &p : partial) {
      for (const auto &c : choices) {
        Expansion e = p;
        e.insert(e.end(), c.begin(), c.end());
        next.push_back(std::move(e));
      }
    }
    partial = std::move(next);
  }
  return partial;
}

using SequenceKey = std::vector<std::pair<std::string, bool>>;

SequenceKey KeyOf(const std::vector<AltElement> &elements) {
  SequenceKey key;
  key.reserve(elements.size());
  for (const auto &el : elements) key.emplace_back(el.word, el.optional);
  return key;
}

bool SlotIsFlatAndUnique(const Slot &slot) {
  std::set<SequenceKey> seen;
  for (const auto &alt : slot.alternatives) {
    for (const auto &el : alt.elements) {
      if (el.is_group()) return false;
    }
    if (!seen.insert(KeyOf(alt.elements)).second) return false;
  }
  return true;
}

}  // namespace

AltNetwork FlattenNestedAlts(const AltNetwork &network) {
  AltNetwork out;
  out.slots.reserve(network.slots.size());
  for (const auto &slot : network.slots) {
    if (SlotIsFlatAndUnique(slot)) {
      out.slots.push_back(slot);
      continue;
    }
    std::vector<const Alternative *> ordered;
    for (const auto &alt : slot.alternatives) ordered.push_back(&alt);
    std::stable_sort(ordered.begin(), ordered.end(),
                     [](const Alternative *a, const Alternative *b) { return a->rank < b->rank; });
    Slot flat;
    std::set<SequenceKey> seen;
    for (const auto *alt : ordered) {
      for (auto &e : Expand(*alt)) {
        if (!seen.insert(KeyOf(e)).second) continue;
        flat.alternatives.push_back({std::move(e), static_cast<int>(flat.alternatives.size())});
      }
    }
    out.slots.push_back(std::move(flat));
  }
  return out;
}

// ---------------------------------------------------------------------------

namespace {

enum class WordClass { kWord, kHesitation, kBackchannel };

WordClass Classify(const std::string &word, const FilterPolicy &policy) {
  if (policy.hesitation_words.count(word)) return WordClass::kHesitation;
  if (policy.backchannel_words.count(word)) return WordClass::kBackchannel;
  return WordClass::kWord;
}

bool AllOfClass(const Alternative &alt, WordClass cls, const FilterPolicy &policy) {
  if (alt.empty()) return false;
  return std::all_of(alt.elements.begin(), alt.elements.end(),
                     [&](const AltElement &el) { return Classify(el.word, policy) == cls; });
}

}  // namespace

AltNetwork ApplyPolicy(const AltNetwork &network, const FilterPolicy &policy, Side side) {
  const AltNetwork flat = FlattenNestedAlts(network);
  AltNetwork out;

  if (side == Side::kHypothesis) {
    for (const auto &slot : flat.slots) {
      Slot kept;
      std::set<SequenceKey> seen;
      bool any_words = false;
      for (const auto &alt : slot.alternatives) {
        Alternative filtered;
        filtered.rank = alt.rank;
        for (const auto &el : alt.elements) {
          WordClass cls = Classify(el.word, policy);
          bool drop = (cls == WordClass::kHesitation && policy.exclude_hyp_hesitations) ||
                      (cls == WordClass::kBackchannel && policy.backchannel_mode == BackchannelMode::kExclude);
          if (!drop) filtered.elements.push_back(el);
        }
        if (!seen.insert(KeyOf(filtered.elements)).second) continue;
        any_words = any_words || !filtered.empty();
        kept.alternatives.push_back(std::move(filtered));
      }
      if (any_words) out.slots.push_back(std::move(kept));
    }
    return out;
  }

  for (const auto &slot : flat.slots) {
    Slot kept = slot;
    bool skippable = false;
    for (auto &alt : kept.alternatives) {
      bool hes = AllOfClass(alt, WordClass::kHesitation, policy);
      bool bc = AllOfClass(alt, WordClass::kBackchannel, policy) &&
                policy.backchannel_mode != BackchannelMode::kScore;
      if (hes || bc) {
        skippable = true;
        for (auto &el : alt.elements) el.optional = true;
      }
    }
    if (skippable) {
      bool has_empty = std::any_of(kept.alternatives.begin(), kept.alternatives.end(),
                                   [](const Alternative &a) { return a.empty(); });
      if (!has_empty) {
        int next_rank = 0;
        for (const auto &alt : kept.alternatives) next_rank = std::max(next_rank, alt.rank + 1);
        kept.alternatives.push_back({{}, next_rank});
      }
    }
    out.slots.push_back(std::move(kept));
  }
  return out;
}

// ---------------------------------------------------------------------------

std::vector<CtmItem> NetworkToCtm(const AltNetwork &network, const std::string &recording_id,
                                  const std::string &channel) {
  const AltNetwork flat = FlattenNestedAlts(network);
  std::vector<CtmItem> items;
  double cursor = 0.0;
  for (const auto &slot : flat.slots) {
    double lo = 0.0, hi = 0.0;
    bool timed = false;
    for (const auto &alt : slot.alternatives) {
      for (const auto &el : alt.elements) {
        if (!el.timing) continue;
        lo = timed ? std::min(lo, el.timing->start) : el.timing->start;
        hi = timed ? std::max(hi, el.timing->start + el.timing->duration)
                   : el.timing->start + el.timing->duration;
        timed = true;
      }
    }
    if (!timed) lo = hi = cursor;
    cursor = hi;

    auto tokens_of = [&](const Alternative &alt) {
      std::vector<CtmToken> tokens;
      const std::size_t n = alt.elements.size();
      for (std::size_t i = 0; i < n; ++i) {
        const auto &el = alt.elements[i];
        CtmToken t{recording_id, channel, 0.0, 0.0, el.word, std::nullopt};
        if (el.timing) {
          t.start = el.timing->start;
          t.duration = el.timing->duration;
          t.confidence = el.timing->confidence;
        } else {
          const double step = (hi - lo) / static_cast<double>(n);
          t.start = lo + step * static_cast<double>(i);
          t.duration = step;
        }
        tokens.push_back(std::move(t));
      }
      return tokens;
    };

    if (slot.alternatives.size() == 1) {
      for (auto &t : tokens_of(slot.alternatives.front())) items.emplace_back(std::move(t));
      continue;
    }
    CtmAltBlock block{recording_id, channel, {}};
    for (const auto &alt : slot.alternatives) block.alternatives.push_back(tokens_of(alt));
    items.emplace_back(std::move(block));
  }
  return items;
}

StmSegment NetworkToStm(const AltNetwork &network, const StmSegment &segment) {
  const AltNetwork flat = FlattenNestedAlts(network);
  StmSegment out = segment;
  out.words.clear();
  for (const auto &slot : flat.slots) {
    const auto &alts = slot.alternatives;
    if (alts.size() == 1) {
      for (const auto &el : alts.front().elements) out.words.push_back({el.word, el.optional, {}});
      continue;
    }
    if (alts.size() == 2 && alts[0].elements.size() == 1 && alts[0].elements[0].optional && alts[1].empty()) {
      out.words.push_back({alts[0].elements[0].word, true, {}});
      continue;
    }
    RefWord group;
    for (const auto &alt : alts) group.alternation.push_back(WordsOf(alt));
    out.words.push_back(std::move(group));
  }
  return out;
}

}  // namespace altscore
