// altscore/lattice.h

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

#ifndef ALTSCORE_LATTICE_H_
#define ALTSCORE_LATTICE_H_

#include <map>
#include <set>
#include <string>
#include <string_view>
#include <vector>

namespace altscore {

inline constexpr std::string_view kEpsilonLabel = "<eps>";

/// Word arc of an acyclic lattice. Frames are 10 ms units by convention; the
/// arc covers [start_frame, end_frame). Weight is a negative log probability.
struct LatticeArc {
  int from = 0;
  int to = 0;
  std::string label;
  int start_frame = 0;
  int end_frame = 0;
  double weight = 0.0;

  bool operator==(const LatticeArc &) const = default;
};

struct Lattice {
  int num_states = 0;
  int start = 0;
  std::vector<LatticeArc> arcs;
  std::map<int, double> finals;  // state -> final weight

  bool operator==(const Lattice &) const = default;
};

/// Labels treated as non-words: skipped in output sequences and ignored when
/// looking for phrase boundaries. Matching is case-insensitive.
class LabelSet {
 public:
  LabelSet();  // {<sil>, <eps>, !SIL}
  explicit LabelSet(const std::vector<std::string> &labels);

  bool Contains(std::string_view label) const;

 private:
  std::set<std::string> upper_;
};

bool IsEpsilon(std::string_view label);

/// States in topological order. Throws InputError naming a state on a cycle.
std::vector<int> TopologicalOrder(const Lattice &lat);

bool IsAcyclic(const Lattice &lat);

/// True when every arc lies on some start -> final path and the start state
/// reaches a final state.
bool IsConnected(const Lattice &lat);

/// Drops states and arcs that are not on any start -> final path and
/// renumbers the surviving states in their original relative order. Throws
/// InputError when no final state is reachable from the start state.
Lattice Connect(const Lattice &lat);

/// [min start_frame, max end_frame] over all arcs; {0, 0} for an arc-free lattice.
std::pair<int, int> FrameExtent(const Lattice &lat);

/// Outgoing arc indices per state.
std::vector<std::vector<int>> OutArcs(const Lattice &lat);

}  // namespace altscore

#endif  // ALTSCORE_LATTICE_H_
