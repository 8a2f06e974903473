// altscore/alt_network.h

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

#ifndef ALTSCORE_ALT_NETWORK_H_
#define ALTSCORE_ALT_NETWORK_H_

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "altscore/formats.h"

namespace altscore {

struct Alternative;

/// Source time of a hypothesis word, kept so filtered CTM can be written back.
struct WordTiming {
  double start = 0.0;
  double duration = 0.0;
  std::optional<double> confidence;

  bool operator==(const WordTiming &) const = default;
};

/// Either a word or, when `group` is non-empty, a nested alternation.
/// Equality ignores `timing`.
struct AltElement {
  std::string word;
  bool optional = false;  // may be skipped at zero cost
  std::vector<Alternative> group;
  std::optional<WordTiming> timing;

  bool is_group() const { return !group.empty(); }
};

/// A word sequence offered by a slot. Rank 0 is the as-written form and wins
/// cost ties. An empty alternative lets the slot be skipped for free.
struct Alternative {
  std::vector<AltElement> elements;
  int rank = 0;

  bool empty() const { return elements.empty(); }
};

bool operator==(const AltElement &a, const AltElement &b);
bool operator==(const Alternative &a, const Alternative &b);

struct Slot {
  std::vector<Alternative> alternatives;  // never empty

  bool operator==(const Slot &) const = default;
};

/// Linear sequence of slots; the language is the concatenation of one
/// alternative per slot.
struct AltNetwork {
  std::vector<Slot> slots;

  bool operator==(const AltNetwork &) const = default;
};

Alternative MakeAlternative(const std::vector<std::string> &words, int rank = 0,
                            bool optional = false);

/// One slot per word, each with a single alternative.
AltNetwork NetworkFromWords(const std::vector<std::string> &words);

/// One slot whose alternatives are the given sequences in order (N-best).
AltNetwork NetworkFromSequences(const std::vector<ScoredSequence> &sequences);

/// One slot per position; words uppercased.
AltNetwork NetworkFromDoc(const AlternativesDoc &doc);

bool IsFlat(const AltNetwork &net);

/// Words of a flat alternative, optional words included.
std::vector<std::string> WordsOf(const Alternative &alt);

/// Number of distinct choices of one alternative per slot, with optional
/// words counted as two-way choices; saturates at `cap`. Flat networks only.
std::size_t CountPaths(const AltNetwork &net, std::size_t cap);

/// Human-readable form, e.g. "[I'M | I AM] [(%HESITATION) | @]".
std::string DebugString(const AltNetwork &net);

}  // namespace altscore

#endif  // ALTSCORE_ALT_NETWORK_H_
