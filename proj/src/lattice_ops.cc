// src/lattice_ops.cc

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

#include "altscore/lattice_ops.h"

#include <algorithm>
#include <cmath>
#include <map>

#include "altscore/error.h"
#include "altscore/text.h"

namespace altscore {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// -log(exp(-a) + exp(-b))
double LogAddCost(double a, double b) {
  if (a == kInf) return b;
  if (b == kInf) return a;
  double lo = std::min(a, b);
  return lo - std::log1p(std::exp(-std::fabs(a - b)));
}

bool Before(const ScoredSequence &a, const ScoredSequence &b) {
  if (a.score != b.score) return a.score < b.score;
  return a.words < b.words;
}

}  // namespace

ArcPosteriors ForwardBackward(const Lattice &lat) {
  if (!IsConnected(lat)) {
    throw InputError("forward-backward needs a connected lattice; run Connect first");
  }
  const auto order = TopologicalOrder(lat);
  const auto out = OutArcs(lat);
  std::vector<double> alpha(lat.num_states, kInf), beta(lat.num_states, kInf);
  alpha[lat.start] = 0.0;
  for (int s : order) {
    if (alpha[s] == kInf) continue;
    for (int a : out[s]) {
      const auto &arc = lat.arcs[a];
      alpha[arc.to] = LogAddCost(alpha[arc.to], alpha[s] + arc.weight);
    }
  }
  for (auto it = order.rbegin(); it != order.rend(); ++it) {
    const int s = *it;
    auto fin = lat.finals.find(s);
    double b = fin != lat.finals.end() ? fin->second : kInf;
    for (int a : out[s]) {
      const auto &arc = lat.arcs[a];
      b = LogAddCost(b, arc.weight + beta[arc.to]);
    }
    beta[s] = b;
  }
  ArcPosteriors post;
  post.total_weight = beta[lat.start];
  post.posterior.resize(lat.arcs.size());
  for (std::size_t a = 0; a < lat.arcs.size(); ++a) {
    const auto &arc = lat.arcs[a];
    post.posterior[a] = std::exp(-(alpha[arc.from] + arc.weight + beta[arc.to] - post.total_weight));
  }
  return post;
}

std::vector<ScoredSequence> DistinctKBest(const Lattice &lat, std::size_t k, const LabelSet &non_words,
                                          const std::vector<bool> &masked) {
  if (k == 0) throw InputError("number of alternatives must be positive");
  if (lat.num_states == 0) return {};
  const auto order = TopologicalOrder(lat);
  const auto out = OutArcs(lat);

  // best[s]: the k best distinct completions from s to a final state.
  std::vector<std::vector<ScoredSequence>> best(lat.num_states);
  for (auto it = order.rbegin(); it != order.rend(); ++it) {
    const int s = *it;
    std::vector<ScoredSequence> cand;
    if (auto fin = lat.finals.find(s); fin != lat.finals.end()) {
      cand.push_back({{}, fin->second, {}});
    }
    for (int a : out[s]) {
      const auto &arc = lat.arcs[a];
      const bool word = !(a < static_cast<int>(masked.size()) && masked[a]) && !non_words.Contains(arc.label);
      for (const auto &suffix : best[arc.to]) {
        ScoredSequence seq;
        seq.score = arc.weight + suffix.score;
        if (word) {
          seq.words.reserve(suffix.words.size() + 1);
          seq.words.push_back(ToUpper(arc.label));
          seq.spans.push_back({arc.start_frame, arc.end_frame});
        }
        seq.words.insert(seq.words.end(), suffix.words.begin(), suffix.words.end());
        seq.spans.insert(seq.spans.end(), suffix.spans.begin(), suffix.spans.end());
        cand.push_back(std::move(seq));
      }
    }
    std::stable_sort(cand.begin(), cand.end(), Before);
    std::vector<ScoredSequence> kept;
    std::map<std::vector<std::string>, bool> seen;
    for (auto &c : cand) {
      if (kept.size() >= k) break;
      if (!seen.emplace(c.words, true).second) continue;
      kept.push_back(std::move(c));
    }
    best[s] = std::move(kept);
  }
  return best[lat.start];
}

NBestList NBest(const Lattice &lat, std::size_t n, const LabelSet &non_words) {
  if (n == 0) throw InputError("n must be positive");
  NBestList list;
  auto [lo, hi] = FrameExtent(lat);
  list.start_frame = lo;
  list.end_frame = hi;
  list.entries = DistinctKBest(lat, n, non_words);
  return list;
}

std::vector<int> DetectPhraseBoundaries(const Lattice &lat, const ArcPosteriors &post, double threshold,
                                        const LabelSet &non_words) {
  if (post.posterior.size() != lat.arcs.size()) {
    throw InvariantError("posteriors do not match the lattice's arcs");
  }
  auto [first, last] = FrameExtent(lat);
  if (first >= last) return {first};

  // crossed[t - first] > 0 iff some qualifying arc has start < t < end.
  std::vector<int> diff(last - first + 2, 0);
  for (std::size_t a = 0; a < lat.arcs.size(); ++a) {
    const auto &arc = lat.arcs[a];
    if (non_words.Contains(arc.label) || post.posterior[a] < threshold) continue;
    if (arc.end_frame - arc.start_frame < 2) continue;
    diff[arc.start_frame + 1 - first] += 1;
    diff[arc.end_frame - first] -= 1;
  }
  std::vector<int> boundaries{first};
  int cover = 0;
  int run_start = -1;
  for (int t = first; t <= last; ++t) {
    cover += diff[t - first];
    const bool free = cover == 0;
    if (free && run_start < 0) run_start = t;
    if (!free || t == last) {
      if (run_start >= 0) {
        const int run_end = free ? t : t - 1;
        if (run_start != first && run_end != last) boundaries.push_back((run_start + run_end) / 2);
        run_start = -1;
      }
    }
  }
  boundaries.push_back(last);
  return boundaries;
}

AlternativesDoc PhraseAlternatives(const Lattice &lat, const std::vector<int> &boundaries, std::size_t n,
                                   const LabelSet &non_words) {
  if (n == 0) throw InputError("n must be positive");
  if (boundaries.empty()) throw InputError("phrase alternatives need at least one boundary");
  if (!std::is_sorted(boundaries.begin(), boundaries.end())) {
    throw InputError("phrase boundaries must be sorted");
  }
  AlternativesDoc doc;
  doc.level = AltLevel::kPhrase;
  const std::size_t phrases = boundaries.size() < 2 ? 1 : boundaries.size() - 1;

  // Phrase index per arc, from the arc's time midpoint.
  std::vector<std::size_t> owner(lat.arcs.size(), 0);
  for (std::size_t a = 0; a < lat.arcs.size(); ++a) {
    const double mid = (lat.arcs[a].start_frame + lat.arcs[a].end_frame) / 2.0;
    std::size_t p = 0;
    while (p + 1 < phrases && mid >= boundaries[p + 1]) ++p;
    owner[a] = p;
  }

  for (std::size_t p = 0; p < phrases; ++p) {
    std::vector<bool> masked(lat.arcs.size());
    for (std::size_t a = 0; a < lat.arcs.size(); ++a) masked[a] = owner[a] != p;
    AltPosition pos;
    pos.start_frame = boundaries[p];
    pos.end_frame = boundaries.size() < 2 ? boundaries[0] : boundaries[p + 1];
    pos.alternatives = DistinctKBest(lat, n, non_words, masked);
    if (!pos.alternatives.empty()) doc.positions.push_back(std::move(pos));
  }
  return doc;
}

AlternativesDoc DerivePhraseAlternatives(const Lattice &lat, std::size_t n, double threshold,
                                         const LabelSet &non_words) {
  const Lattice connected = Connect(lat);
  const auto post = ForwardBackward(connected);
  const auto boundaries = DetectPhraseBoundaries(connected, post, threshold, non_words);
  return PhraseAlternatives(connected, boundaries, n, non_words);
}

AlternativesDoc WordAlternatives(const AlternativesDoc &phrase_doc) {
  AlternativesDoc doc = phrase_doc;
  doc.level = AltLevel::kWord;
  doc.positions.clear();

  for (const auto &pos : phrase_doc.positions) {
    if (pos.alternatives.empty()) continue;
    const auto &top = pos.alternatives.front();
    const std::size_t bins = std::max<std::size_t>(1, top.words.size());
    const bool timed = std::all_of(pos.alternatives.begin(), pos.alternatives.end(),
                                   [](const ScoredSequence &s) { return s.spans.size() == s.words.size(); }) &&
                       !top.words.empty();

    std::vector<AltPosition> out(bins);
    for (std::size_t b = 0; b < bins; ++b) {
      if (timed) {
        out[b].start_frame = top.spans[b].first;
        out[b].end_frame = top.spans[b].second;
      } else {
        const double width = pos.end_frame - pos.start_frame;
        out[b].start_frame = pos.start_frame + static_cast<int>(std::lround(width * b / bins));
        out[b].end_frame = pos.start_frame + static_cast<int>(std::lround(width * (b + 1) / bins));
      }
    }
    if (timed) {
      out.front().start_frame = std::min(out.front().start_frame, pos.start_frame);
      out.back().end_frame = std::max(out.back().end_frame, pos.end_frame);
      for (std::size_t b = 1; b < bins; ++b) {
        out[b].start_frame = std::max(out[b].start_frame, out[b - 1].end_frame);
        out[b].end_frame = std::max(out[b].end_frame, out[b].start_frame);
      }
    }

    auto bin_of = [&](const ScoredSequence &alt, std::size_t i) -> std::size_t {
      if (!timed) return i;
      const double mid = (alt.spans[i].first + alt.spans[i].second) / 2.0;
      std::size_t best = 0;
      double best_dist = kInf;
      for (std::size_t b = 0; b < bins; ++b) {
        const double lo = top.spans[b].first, hi = top.spans[b].second;
        const double dist = mid < lo ? lo - mid : (mid > hi ? mid - hi : 0.0);
        if (dist < best_dist) {
          best_dist = dist;
          best = b;
        }
      }
      return best;
    };

    for (const auto &alt : pos.alternatives) {
      std::vector<std::optional<std::size_t>> word_in_bin(bins);
      for (std::size_t i = 0; i < alt.words.size(); ++i) {
        const std::size_t b = bin_of(alt, i);
        if (b < bins && !word_in_bin[b]) word_in_bin[b] = i;
      }
      for (std::size_t b = 0; b < bins; ++b) {
        ScoredSequence w;
        w.score = alt.score;
        if (word_in_bin[b]) {
          w.words.push_back(alt.words[*word_in_bin[b]]);
          if (timed) w.spans.push_back(alt.spans[*word_in_bin[b]]);
        }
        auto &alts = out[b].alternatives;
        bool dup = std::any_of(alts.begin(), alts.end(),
                               [&](const ScoredSequence &x) { return x.words == w.words; });
        if (!dup) alts.push_back(std::move(w));
      }
    }
    for (auto &p : out) doc.positions.push_back(std::move(p));
  }
  return doc;
}

AlternativesDoc Truncate(const AlternativesDoc &doc, std::size_t n) {
  AlternativesDoc out = doc;
  for (auto &pos : out.positions) {
    if (pos.alternatives.size() > n) pos.alternatives.resize(n);
  }
  return out;
}

DepthStats ComputeDepthStats(std::span<const std::size_t> depths) {
  if (depths.empty()) throw InputError("depth statistics of an empty document");
  std::vector<std::size_t> sorted(depths.begin(), depths.end());
  std::sort(sorted.begin(), sorted.end());
  // Nearest rank: ceil(p * N), computed in integers for p = 9/10 and 1/2.
  const std::size_t n = sorted.size();
  const std::size_t rank90 = (9 * n + 9) / 10;
  const std::size_t rank50 = (n + 1) / 2;
  return {sorted.back(), sorted[rank90 - 1], sorted[rank50 - 1]};
}

DepthStats ComputeDepthStats(const std::vector<AlternativesDoc> &docs) {
  std::vector<std::size_t> depths;
  for (const auto &doc : docs) {
    for (const auto &pos : doc.positions) depths.push_back(pos.alternatives.size());
  }
  return ComputeDepthStats(depths);
}

}  // namespace altscore
