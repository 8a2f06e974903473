// altscore/align.h

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

#ifndef ALTSCORE_ALIGN_H_
#define ALTSCORE_ALIGN_H_

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "altscore/alt_network.h"

namespace altscore {

/// Edit costs; a correct match costs 0. Defaults are the classic sclite weights.
struct CostModel {
  int substitution = 4;
  int insertion = 3;
  int deletion = 3;

  bool operator==(const CostModel &) const = default;
};

struct ErrorCounts {
  std::int64_t correct = 0;
  std::int64_t substituted = 0;
  std::int64_t deleted = 0;
  std::int64_t inserted = 0;

  std::int64_t ref_length() const { return correct + deleted + substituted; }
  std::int64_t hyp_length() const { return correct + inserted + substituted; }
  std::int64_t errors() const { return inserted + deleted + substituted; }

  ErrorCounts &operator+=(const ErrorCounts &o);
  bool operator==(const ErrorCounts &) const = default;
};

std::int64_t PrimaryCost(const ErrorCounts &counts, const CostModel &costs);

enum class Verdict { kCorrect, kSubstitution, kDeletion, kInsertion };

struct AlignedWord {
  Verdict verdict = Verdict::kCorrect;
  std::string ref;  // empty for insertions
  std::string hyp;  // empty for deletions
  int ref_slot = -1;
  int hyp_slot = -1;

  bool operator==(const AlignedWord &) const = default;
};

struct AlignmentResult {
  ErrorCounts counts;
  std::int64_t cost = 0;       // primary cost of the path
  std::int64_t rank_cost = 0;  // sum of chosen alternative ranks
  std::vector<AlignedWord> path;
  /// Index into each slot's alternatives of the one the path went through.
  std::vector<int> ref_choices;
  std::vector<int> hyp_choices;

  bool operator==(const AlignmentResult &) const = default;
};

/// Minimum-cost alignment of two flat networks.
///
/// Both networks are compiled into acyclic word graphs (one chain per
/// alternative, epsilon edges for empty alternatives and skippable optional
/// words) and the best path through their product is found by dynamic
/// programming. Paths are ordered by (primary cost, rank sum); remaining
/// ties go to the path found first, with match/substitution preferred over
/// deletion over insertion at each step. Counts come from the chosen path.
///
/// Throws InvariantError when either network still has nested alternatives.
AlignmentResult Align(const AltNetwork &ref, const AltNetwork &hyp, const CostModel &costs = {});

struct Metrics {
  double wer = 0.0;        // percent
  double precision = 1.0;  // [0, 1]
  double recall = 1.0;     // [0, 1]

  bool operator==(const Metrics &) const = default;
};

/// WER = 100 (I+D+S)/(C+D+S), precision = C/(C+I+S), recall = C/(C+D+S).
/// Empty hypothesis: precision 1. Empty reference: recall 1, and WER 0 when
/// there are no insertions, otherwise 100.
Metrics ComputeMetrics(const ErrorCounts &counts);
Metrics ComputeMetrics(const AlignmentResult &result);

/// Micro-average: counts are summed before the ratios are taken. Throws
/// InputError on an empty list.
ErrorCounts SumCounts(std::span<const AlignmentResult> results);
Metrics Aggregate(std::span<const AlignmentResult> results);

}  // namespace altscore

#endif  // ALTSCORE_ALIGN_H_
