// src/oracle.cc

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

#include <zlib.h>

#include <optional>

#include "altscore/error.h"
#include "altscore/parallel.h"

namespace altscore {

AlignmentResult OracleScoreNBest(const AltNetwork &ref, const NBestList &nbest, const CostModel &costs) {
  if (nbest.entries.empty()) throw InputError("oracle scoring of an empty N-best list");
  std::optional<AlignmentResult> best;
  for (std::size_t i = 0; i < nbest.entries.size(); ++i) {
    AlignmentResult r = Align(ref, NetworkFromWords(nbest.entries[i].words), costs);
    r.rank_cost += static_cast<std::int64_t>(i);
    if (!best || r.cost < best->cost || (r.cost == best->cost && r.rank_cost < best->rank_cost)) {
      r.hyp_choices = {static_cast<int>(i)};
      for (auto &w : r.path) {
        if (w.hyp_slot >= 0) w.hyp_slot = 0;
      }
      best = std::move(r);
    }
  }
  return *best;
}

AlignmentResult OracleScoreNetwork(const AltNetwork &ref, const AltNetwork &hyp, const CostModel &costs) {
  return Align(ref, hyp, costs);
}

AltNetwork HypothesisNetwork(const std::vector<AlternativesDoc> &docs) {
  AltNetwork net;
  for (const auto &doc : docs) {
    AltNetwork part = NetworkFromDoc(doc);
    for (auto &slot : part.slots) net.slots.push_back(std::move(slot));
  }
  return net;
}

std::size_t CompressedSize(std::string_view text) {
  uLongf size = compressBound(static_cast<uLong>(text.size()));
  std::vector<Bytef> buf(size);
  int rc = compress2(buf.data(), &size, reinterpret_cast<const Bytef *>(text.data()),
                     static_cast<uLong>(text.size()), Z_DEFAULT_COMPRESSION);
  if (rc != Z_OK) throw InvariantError("zlib compression failed with code " + std::to_string(rc));
  return static_cast<std::size_t>(size);
}

std::vector<OracleRow> OracleCurve(const std::vector<OracleUtterance> &utterances,
                                   const std::vector<std::size_t> &n_values, const CostModel &costs,
                                   double frame_rate, const HypothesisFilter &filter, unsigned jobs) {
  std::vector<OracleRow> rows;
  for (std::size_t n : n_values) {
    if (n == 0) throw InputError("oracle depth must be positive");
    std::vector<ErrorCounts> counts(utterances.size());
    std::vector<std::string> ctm(utterances.size());
    std::vector<std::vector<std::size_t>> depths(utterances.size());
    ParallelFor(utterances.size(), jobs, [&](std::size_t u) {
      std::vector<AlternativesDoc> cut;
      for (const auto &doc : utterances[u].hypotheses) {
        cut.push_back(Truncate(doc, n));
        for (const auto &pos : cut.back().positions) depths[u].push_back(pos.alternatives.size());
        ctm[u] += WriteCtmWithAlts(cut.back(), frame_rate);
      }
      AltNetwork hyp = HypothesisNetwork(cut);
      if (filter) hyp = filter(hyp);
      counts[u] = Align(utterances[u].reference, hyp, costs).counts;
    });
    OracleRow row;
    row.n = n;
    std::vector<std::size_t> all_depths;
    std::string all_ctm;
    for (std::size_t u = 0; u < utterances.size(); ++u) {
      row.counts += counts[u];
      all_depths.insert(all_depths.end(), depths[u].begin(), depths[u].end());
      all_ctm += ctm[u];
    }
    row.wer = ComputeMetrics(row.counts).wer;
    if (!all_depths.empty()) row.depth = ComputeDepthStats(all_depths);
    row.compressed_bytes = CompressedSize(all_ctm);
    rows.push_back(row);
  }
  return rows;
}

}  // namespace altscore
