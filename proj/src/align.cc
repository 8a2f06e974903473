// src/align.cc

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

#include <algorithm>
#include <limits>
#include <unordered_map>

#include "altscore/error.h"
#include "altscore/text.h"

namespace altscore {

ErrorCounts &ErrorCounts::operator+=(const ErrorCounts &o) {
  correct += o.correct;
  substituted += o.substituted;
  deleted += o.deleted;
  inserted += o.inserted;
  return *this;
}

std::int64_t PrimaryCost(const ErrorCounts &counts, const CostModel &costs) {
  return costs.substitution * counts.substituted + costs.insertion * counts.inserted +
         costs.deletion * counts.deleted;
}

namespace {

constexpr int kEpsilon = -1;

struct WordEdge {
  int from = 0;
  int to = 0;
  int word = kEpsilon;
  int rank = 0;
  int slot = 0;
  int alt = 0;
};

struct WordGraph {
  int num_nodes = 1;
  std::vector<WordEdge> edges;
  std::vector<std::vector<int>> out;  // edge ids per node
};

class Vocabulary {
 public:
  int Id(const std::string &word) {
    auto [it, inserted] = ids_.try_emplace(ToUpper(word), static_cast<int>(words_.size()));
    if (inserted) words_.push_back(it->first);
    return it->second;
  }
  const std::string &Word(int id) const { return words_[id]; }

 private:
  std::unordered_map<std::string, int> ids_;
  std::vector<std::string> words_;
};

// Node ids increase along every edge, so numeric order is topological.
WordGraph Compile(const AltNetwork &net, Vocabulary &vocab) {
  WordGraph g;
  int boundary = 0;
  for (int s = 0; s < static_cast<int>(net.slots.size()); ++s) {
    const auto &alts = net.slots[s].alternatives;
    if (alts.empty()) throw InvariantError("slot " + std::to_string(s) + " has no alternatives");
    std::vector<WordEdge> pending;  // edges into the next boundary, fixed up below
    for (int a = 0; a < static_cast<int>(alts.size()); ++a) {
      const Alternative &alt = alts[a];
      if (alt.empty()) {
        pending.push_back({boundary, -1, kEpsilon, alt.rank, s, a});
        continue;
      }
      int node = boundary;
      for (std::size_t k = 0; k < alt.elements.size(); ++k) {
        const AltElement &el = alt.elements[k];
        if (el.is_group()) {
          throw InvariantError("alignment needs flat networks; run flatten_nested_alts (FlattenNestedAlts) first");
        }
        const int rank = k == 0 ? alt.rank : 0;
        const bool last = k + 1 == alt.elements.size();
        const int to = last ? -1 : g.num_nodes++;
        pending.push_back({node, to, vocab.Id(el.word), rank, s, a});
        if (el.optional) pending.push_back({node, to, kEpsilon, rank, s, a});
        node = to;
      }
    }
    const int next = g.num_nodes++;
    for (auto &e : pending) {
      if (e.to < 0) e.to = next;
      g.edges.push_back(e);
    }
    boundary = next;
  }
  g.out.resize(g.num_nodes);
  for (int e = 0; e < static_cast<int>(g.edges.size()); ++e) g.out[g.edges[e].from].push_back(e);
  return g;
}

enum class Op : std::uint8_t { kNone, kMatch, kSub, kDel, kIns, kRefEps, kHypEps };

struct Cell {
  std::int32_t cost = std::numeric_limits<std::int32_t>::max();
  std::int32_t rank = 0;
  std::int32_t ref_edge = -1;
  std::int32_t hyp_edge = -1;
  Op op = Op::kNone;
};

}  // namespace

AlignmentResult Align(const AltNetwork &ref, const AltNetwork &hyp, const CostModel &costs) {
  Vocabulary vocab;
  const WordGraph rg = Compile(ref, vocab);
  const WordGraph hg = Compile(hyp, vocab);
  const std::size_t R = rg.num_nodes;
  const std::size_t H = hg.num_nodes;
  std::vector<Cell> dp(R * H);
  auto at = [H](std::size_t r, std::size_t h) { return r * H + h; };
  dp[at(0, 0)].cost = 0;

  auto relax = [&](std::size_t r, std::size_t h, std::int32_t cost, std::int32_t rank, int re, int he, Op op) {
    Cell &c = dp[at(r, h)];
    if (cost < c.cost || (cost == c.cost && rank < c.rank)) c = {cost, rank, re, he, op};
  };

  for (std::size_t r = 0; r < R; ++r) {
    for (std::size_t h = 0; h < H; ++h) {
      const Cell &cur = dp[at(r, h)];
      if (cur.op == Op::kNone && !(r == 0 && h == 0)) continue;
      const std::int32_t c0 = cur.cost;
      const std::int32_t k0 = cur.rank;
      for (int re : rg.out[r]) {
        const WordEdge &e = rg.edges[re];
        if (e.word == kEpsilon) {
          relax(e.to, h, c0, k0 + e.rank, re, -1, Op::kRefEps);
          continue;
        }
        for (int he : hg.out[h]) {
          const WordEdge &f = hg.edges[he];
          if (f.word == kEpsilon) continue;
          const bool same = e.word == f.word;
          relax(e.to, f.to, c0 + (same ? 0 : costs.substitution), k0 + e.rank + f.rank, re, he,
                same ? Op::kMatch : Op::kSub);
        }
        relax(e.to, h, c0 + costs.deletion, k0 + e.rank, re, -1, Op::kDel);
      }
      for (int he : hg.out[h]) {
        const WordEdge &f = hg.edges[he];
        if (f.word == kEpsilon) {
          relax(r, f.to, c0, k0 + f.rank, -1, he, Op::kHypEps);
        } else {
          relax(r, f.to, c0 + costs.insertion, k0 + f.rank, -1, he, Op::kIns);
        }
      }
    }
  }

  AlignmentResult result;
  result.ref_choices.assign(ref.slots.size(), -1);
  result.hyp_choices.assign(hyp.slots.size(), -1);
  const Cell &final_cell = dp[at(R - 1, H - 1)];
  if (final_cell.op == Op::kNone && !(R == 1 && H == 1)) {
    throw InvariantError("alignment found no path through the product graph");
  }
  result.cost = final_cell.cost;
  result.rank_cost = final_cell.rank;

  std::size_t r = R - 1, h = H - 1;
  while (r != 0 || h != 0) {
    const Cell &c = dp[at(r, h)];
    const WordEdge *e = c.ref_edge >= 0 ? &rg.edges[c.ref_edge] : nullptr;
    const WordEdge *f = c.hyp_edge >= 0 ? &hg.edges[c.hyp_edge] : nullptr;
    if (e) result.ref_choices[e->slot] = e->alt;
    if (f) result.hyp_choices[f->slot] = f->alt;
    AlignedWord w;
    switch (c.op) {
      case Op::kMatch:
        w = {Verdict::kCorrect, vocab.Word(e->word), vocab.Word(f->word), e->slot, f->slot};
        ++result.counts.correct;
        break;
      case Op::kSub:
        w = {Verdict::kSubstitution, vocab.Word(e->word), vocab.Word(f->word), e->slot, f->slot};
        ++result.counts.substituted;
        break;
      case Op::kDel:
        w = {Verdict::kDeletion, vocab.Word(e->word), "", e->slot, -1};
        ++result.counts.deleted;
        break;
      case Op::kIns:
        w = {Verdict::kInsertion, "", vocab.Word(f->word), -1, f->slot};
        ++result.counts.inserted;
        break;
      case Op::kRefEps:
      case Op::kHypEps:
        break;
      case Op::kNone:
        throw InvariantError("broken alignment backtrace");
    }
    if (c.op != Op::kRefEps && c.op != Op::kHypEps) result.path.push_back(std::move(w));
    if (e) r = e->from;
    if (f) h = f->from;
  }
  std::reverse(result.path.begin(), result.path.end());
  return result;
}

Metrics ComputeMetrics(const ErrorCounts &c) {
  Metrics m;
  const double n = static_cast<double>(c.ref_length());
  if (c.ref_length() > 0) {
    m.wer = 100.0 * static_cast<double>(c.errors()) / n;
    m.recall = static_cast<double>(c.correct) / n;
  } else {
    m.wer = c.inserted > 0 ? 100.0 : 0.0;
    m.recall = 1.0;
  }
  if (c.hyp_length() > 0) {
    m.precision = static_cast<double>(c.correct) / static_cast<double>(c.hyp_length());
  } else {
    m.precision = 1.0;
  }
  return m;
}

Metrics ComputeMetrics(const AlignmentResult &result) { return ComputeMetrics(result.counts); }

ErrorCounts SumCounts(std::span<const AlignmentResult> results) {
  if (results.empty()) throw InputError("cannot aggregate an empty list of alignments");
  ErrorCounts total;
  for (const auto &r : results) total += r.counts;
  return total;
}

Metrics Aggregate(std::span<const AlignmentResult> results) {
  return ComputeMetrics(SumCounts(results));
}

}  // namespace altscore
