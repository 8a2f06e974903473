// src/alt_network.cc

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

#include "altscore/alt_network.h"

#include <algorithm>

#include "altscore/error.h"
#include "altscore/text.h"

namespace altscore {

bool operator==(const AltElement &a, const AltElement &b) {
  return a.word == b.word && a.optional == b.optional && a.group == b.group;
}

bool operator==(const Alternative &a, const Alternative &b) {
  return a.rank == b.rank && a.elements == b.elements;
}

Alternative MakeAlternative(const std::vector<std::string> &words, int rank, bool optional) {
  Alternative alt;
  alt.rank = rank;
  for (const auto &w : words) alt.elements.push_back({ToUpper(w), optional, {}, std::nullopt});
  return alt;
}

AltNetwork NetworkFromWords(const std::vector<std::string> &words) {
  AltNetwork net;
  for (const auto &w : words) net.slots.push_back({{MakeAlternative({w})}});
  return net;
}

AltNetwork NetworkFromSequences(const std::vector<ScoredSequence> &sequences) {
  AltNetwork net;
  if (sequences.empty()) return net;
  Slot slot;
  for (std::size_t i = 0; i < sequences.size(); ++i) {
    slot.alternatives.push_back(MakeAlternative(sequences[i].words, static_cast<int>(i)));
  }
  net.slots.push_back(std::move(slot));
  return net;
}

AltNetwork NetworkFromDoc(const AlternativesDoc &doc) {
  AltNetwork net;
  for (const auto &pos : doc.positions) {
    if (pos.alternatives.empty()) continue;
    Slot slot;
    for (std::size_t i = 0; i < pos.alternatives.size(); ++i) {
      slot.alternatives.push_back(MakeAlternative(pos.alternatives[i].words, static_cast<int>(i)));
    }
    net.slots.push_back(std::move(slot));
  }
  return net;
}

bool IsFlat(const AltNetwork &net) {
  for (const auto &slot : net.slots) {
    for (const auto &alt : slot.alternatives) {
      for (const auto &el : alt.elements) {
        if (el.is_group()) return false;
      }
    }
  }
  return true;
}

std::vector<std::string> WordsOf(const Alternative &alt) {
  std::vector<std::string> words;
  for (const auto &el : alt.elements) {
    if (el.is_group()) throw InvariantError("WordsOf called on a nested alternative");
    words.push_back(el.word);
  }
  return words;
}

std::size_t CountPaths(const AltNetwork &net, std::size_t cap) {
  auto mul = [cap](std::size_t a, std::size_t b) -> std::size_t {
    if (a == 0 || b == 0) return 0;
    return a > cap / b ? cap : std::min(cap, a * b);
  };
  std::size_t total = 1;
  for (const auto &slot : net.slots) {
    std::size_t slot_count = 0;
    for (const auto &alt : slot.alternatives) {
      std::size_t n = 1;
      for (const auto &el : alt.elements) {
        if (el.is_group()) throw InvariantError("CountPaths needs a flat network");
        if (el.optional) n = mul(n, 2);
      }
      slot_count = std::min(cap, slot_count + n);
    }
    total = mul(total, slot_count);
  }
  return total;
}

namespace {

void AppendAlternative(std::string &out, const Alternative &alt);

void AppendElement(std::string &out, const AltElement &el) {
  if (el.is_group()) {
    out += "{";
    for (std::size_t i = 0; i < el.group.size(); ++i) {
      if (i) out += " / ";
      AppendAlternative(out, el.group[i]);
    }
    out += "}";
  } else if (el.optional) {
    out += "(" + el.word + ")";
  } else {
    out += el.word;
  }
}

void AppendAlternative(std::string &out, const Alternative &alt) {
  if (alt.empty()) {
    out += std::string(kEmptyPhrase);
    return;
  }
  for (std::size_t i = 0; i < alt.elements.size(); ++i) {
    if (i) out += ' ';
    AppendElement(out, alt.elements[i]);
  }
}

}  // namespace

std::string DebugString(const AltNetwork &net) {
  std::string out;
  for (std::size_t s = 0; s < net.slots.size(); ++s) {
    if (s) out += ' ';
    out += "[";
    const auto &alts = net.slots[s].alternatives;
    for (std::size_t i = 0; i < alts.size(); ++i) {
      if (i) out += " | ";
      AppendAlternative(out, alts[i]);
    }
    out += "]";
  }
  return out;
}

}  // namespace altscore
