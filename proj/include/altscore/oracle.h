// altscore/oracle.h

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

#ifndef ALTSCORE_ORACLE_H_
#define ALTSCORE_ORACLE_H_

#include <cstddef>
#include <functional>
#include <string_view>
#include <vector>

#include "altscore/align.h"
#include "altscore/formats.h"
#include "altscore/lattice_ops.h"

namespace altscore {

/// Picks the list entry with the lowest (primary cost, rank sum) against the
/// reference; acoustic and LM scores play no part beyond list order.
/// `hyp_choices` holds the selected entry's index. Throws InputError on an
/// empty list.
AlignmentResult OracleScoreNBest(const AltNetwork &ref, const NBestList &nbest, const CostModel &costs = {});

/// The min-cost path through the alternative network is the oracle
/// selection; this is Align under another name.
AlignmentResult OracleScoreNetwork(const AltNetwork &ref, const AltNetwork &hyp, const CostModel &costs = {});

/// A reference segment and the alternatives documents that fall inside it,
/// in time order. Oracle paths never cross segment boundaries.
struct OracleUtterance {
  AltNetwork reference;
  std::vector<AlternativesDoc> hypotheses;
};

struct OracleRow {
  std::size_t n = 0;  // requested depth; kUnboundedDepth for "all"
  ErrorCounts counts;
  double wer = 0.0;
  DepthStats depth;
  std::size_t compressed_bytes = 0;  // zlib size of the CTM rendering
};

/// Normalization applied to each utterance's hypothesis network after
/// truncation (GLM rules, hesitation policy). Identity when empty.
using HypothesisFilter = std::function<AltNetwork(const AltNetwork &)>;

/// One row per requested depth: every position (or N-best list) is cut to
/// its top n before scoring. Utterances are scored on up to `jobs` threads;
/// results do not depend on the thread count.
std::vector<OracleRow> OracleCurve(const std::vector<OracleUtterance> &utterances,
                                   const std::vector<std::size_t> &n_values, const CostModel &costs = {},
                                   double frame_rate = kDefaultFrameRate, const HypothesisFilter &filter = {},
                                   unsigned jobs = 1);

/// Concatenation of one slot per position across `docs`.
AltNetwork HypothesisNetwork(const std::vector<AlternativesDoc> &docs);

/// zlib (deflate, default level) size of `text`.
std::size_t CompressedSize(std::string_view text);

}  // namespace altscore

#endif  // ALTSCORE_ORACLE_H_
