// altscore/lattice_ops.h

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

// Alternatives derived from word-aligned acyclic lattices.
//
// Lattices must carry per-arc frame extents (that is what "word-aligned"
// means here); arcs along any path are expected to be time-ordered.
//
// Phrase alternatives are built in four steps:
//   1. the lattice is connected and checked for cycles;
//   2. phrase boundaries are placed at frames that no sufficiently probable
//      word arc crosses (ForwardBackward + DetectPhraseBoundaries);
//   3. for each phrase, every arc whose time midpoint lies outside the
//      phrase has its label masked to epsilon;
//   4. the masked lattice is reduced to its distinct word sequences, each
//      with its best path weight, and the n best are kept.

#ifndef ALTSCORE_LATTICE_OPS_H_
#define ALTSCORE_LATTICE_OPS_H_

#include <cstddef>
#include <limits>
#include <span>
#include <vector>

#include "altscore/formats.h"
#include "altscore/lattice.h"

namespace altscore {

/// Requested depth meaning "all distinct sequences".
inline constexpr std::size_t kUnboundedDepth = std::numeric_limits<std::size_t>::max();
inline constexpr double kDefaultPosteriorThreshold = 0.01;

struct ArcPosteriors {
  std::vector<double> posterior;  // per arc index
  double total_weight = 0.0;      // -log of the summed path probability
};

/// Log-semiring forward-backward. Throws InputError when the lattice is not
/// connected (see Connect).
ArcPosteriors ForwardBackward(const Lattice &lat);

/// The k best distinct word sequences from the start state, best first,
/// ordered by (weight, words). Arcs flagged in `masked` (may be empty) and
/// labels in `non_words` contribute no word. Each sequence's weight is its
/// best path weight, i.e. the result of determinizing by word sequence.
std::vector<ScoredSequence> DistinctKBest(const Lattice &lat, std::size_t k,
                                          const LabelSet &non_words = {},
                                          const std::vector<bool> &masked = {});

/// The n most likely distinct word sequences. Throws InputError for n == 0.
NBestList NBest(const Lattice &lat, std::size_t n, const LabelSet &non_words = {});

/// Frames not crossed (start < t < end) by any word arc whose posterior is at
/// least `threshold`. Each run of such frames collapses to its midpoint;
/// runs touching the lattice's first or last frame are absorbed by those,
/// which are always boundaries. Sorted ascending.
std::vector<int> DetectPhraseBoundaries(const Lattice &lat, const ArcPosteriors &post,
                                        double threshold = kDefaultPosteriorThreshold,
                                        const LabelSet &non_words = {});

/// One position per consecutive boundary pair, holding up to n alternatives.
/// An arc belongs to the phrase containing its time midpoint. Empty
/// sequences are kept as explicit empty alternatives. Throws InputError for
/// n == 0.
AlternativesDoc PhraseAlternatives(const Lattice &lat, const std::vector<int> &boundaries, std::size_t n,
                                   const LabelSet &non_words = {});

/// Connect, forward-backward, boundaries and phrase alternatives in one call.
AlternativesDoc DerivePhraseAlternatives(const Lattice &lat, std::size_t n,
                                         double threshold = kDefaultPosteriorThreshold,
                                         const LabelSet &non_words = {});

/// Re-bins every phrase position into single-word positions. The number of
/// word positions is the length of the rank-0 alternative (at least one).
/// Words go to bins by time midpoint when every alternative carries spans,
/// otherwise by index; surplus words are dropped and missing ones become
/// empty alternatives. Lossy on purpose: a word-level document cannot
/// represent every sequence of its phrase source.
AlternativesDoc WordAlternatives(const AlternativesDoc &phrase_doc);

/// Keeps the top n alternatives of every position.
AlternativesDoc Truncate(const AlternativesDoc &doc, std::size_t n);

struct DepthStats {
  std::size_t n_max = 0;
  std::size_t n_90 = 0;
  std::size_t n_50 = 0;

  bool operator==(const DepthStats &) const = default;
};

/// Maximum, 90th and 50th nearest-rank percentiles. Throws InputError on
/// an empty input.
DepthStats ComputeDepthStats(std::span<const std::size_t> depths);

/// Depth per unit: per utterance for N-best documents, per position
/// otherwise (an N-best document has exactly one position).
DepthStats ComputeDepthStats(const std::vector<AlternativesDoc> &docs);

}  // namespace altscore

#endif  // ALTSCORE_LATTICE_OPS_H_
