// src/lattice.cc

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

#include "altscore/lattice.h"

#include <algorithm>
#include <limits>

#include "altscore/error.h"
#include "altscore/text.h"

namespace altscore {

LabelSet::LabelSet() : LabelSet(std::vector<std::string>{"<sil>", "<eps>", "!SIL"}) {}

LabelSet::LabelSet(const std::vector<std::string> &labels) {
  for (const auto &l : labels) upper_.insert(ToUpper(l));
}

bool LabelSet::Contains(std::string_view label) const {
  return IsEpsilon(label) || upper_.count(ToUpper(label)) > 0;
}

bool IsEpsilon(std::string_view label) {
  return label.empty() || ToUpper(label) == "<EPS>";
}

std::vector<std::vector<int>> OutArcs(const Lattice &lat) {
  std::vector<std::vector<int>> out(lat.num_states);
  for (int a = 0; a < static_cast<int>(lat.arcs.size()); ++a) {
    out[lat.arcs[a].from].push_back(a);
  }
  return out;
}

std::vector<int> TopologicalOrder(const Lattice &lat) {
  std::vector<int> indegree(lat.num_states, 0);
  for (const auto &arc : lat.arcs) ++indegree[arc.to];
  auto out = OutArcs(lat);

  // Kahn's algorithm with a min-id queue so the order is deterministic.
  std::vector<int> order;
  order.reserve(lat.num_states);
  std::set<int> ready;
  for (int s = 0; s < lat.num_states; ++s) {
    if (indegree[s] == 0) ready.insert(s);
  }
  while (!ready.empty()) {
    int s = *ready.begin();
    ready.erase(ready.begin());
    order.push_back(s);
    for (int a : out[s]) {
      if (--indegree[lat.arcs[a].to] == 0) ready.insert(lat.arcs[a].to);
    }
  }
  if (static_cast<int>(order.size()) != lat.num_states) {
    for (int s = 0; s < lat.num_states; ++s) {
      if (indegree[s] > 0) {
        throw InputError("lattice has a cycle through state " + std::to_string(s));
      }
    }
  }
  return order;
}

bool IsAcyclic(const Lattice &lat) {
  try {
    TopologicalOrder(lat);
    return true;
  } catch (const InputError &) {
    return false;
  }
}

namespace {

struct Reachability {
  std::vector<bool> accessible;
  std::vector<bool> coaccessible;
};

Reachability ComputeReachability(const Lattice &lat) {
  Reachability r{std::vector<bool>(lat.num_states, false),
                 std::vector<bool>(lat.num_states, false)};
  if (lat.num_states == 0) return r;
  auto order = TopologicalOrder(lat);
  auto out = OutArcs(lat);
  if (lat.start >= 0 && lat.start < lat.num_states) r.accessible[lat.start] = true;
  for (int s : order) {
    if (!r.accessible[s]) continue;
    for (int a : out[s]) r.accessible[lat.arcs[a].to] = true;
  }
  for (const auto &[s, w] : lat.finals) {
    if (s >= 0 && s < lat.num_states) r.coaccessible[s] = true;
  }
  for (auto it = order.rbegin(); it != order.rend(); ++it) {
    for (int a : out[*it]) {
      if (r.coaccessible[lat.arcs[a].to]) r.coaccessible[*it] = true;
    }
  }
  return r;
}

}  // namespace

bool IsConnected(const Lattice &lat) {
  if (lat.num_states == 0 || lat.start < 0 || lat.start >= lat.num_states) return false;
  auto r = ComputeReachability(lat);
  if (!r.coaccessible[lat.start]) return false;
  for (const auto &arc : lat.arcs) {
    if (!r.accessible[arc.from] || !r.coaccessible[arc.to]) return false;
  }
  for (const auto &[s, w] : lat.finals) {
    if (!r.accessible[s]) return false;
  }
  return true;
}

Lattice Connect(const Lattice &lat) {
  if (lat.num_states == 0 || lat.start < 0 || lat.start >= lat.num_states) {
    throw InputError("lattice has no valid start state");
  }
  auto r = ComputeReachability(lat);
  if (!r.coaccessible[lat.start]) {
    throw InputError("lattice start state " + std::to_string(lat.start) +
                     " reaches no final state");
  }
  std::vector<int> remap(lat.num_states, -1);
  int next = 0;
  for (int s = 0; s < lat.num_states; ++s) {
    if (r.accessible[s] && r.coaccessible[s]) remap[s] = next++;
  }
  Lattice out;
  out.num_states = next;
  out.start = remap[lat.start];
  for (const auto &arc : lat.arcs) {
    if (remap[arc.from] < 0 || remap[arc.to] < 0) continue;
    LatticeArc copy = arc;
    copy.from = remap[arc.from];
    copy.to = remap[arc.to];
    out.arcs.push_back(std::move(copy));
  }
  for (const auto &[s, w] : lat.finals) {
    if (remap[s] >= 0) out.finals[remap[s]] = w;
  }
  return out;
}

std::pair<int, int> FrameExtent(const Lattice &lat) {
  if (lat.arcs.empty()) return {0, 0};
  int lo = std::numeric_limits<int>::max();
  int hi = std::numeric_limits<int>::min();
  for (const auto &arc : lat.arcs) {
    lo = std::min(lo, arc.start_frame);
    hi = std::max(hi, arc.end_frame);
  }
  return {lo, hi};
}

}  // namespace altscore
