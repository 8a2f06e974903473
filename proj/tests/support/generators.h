// tests/support/generators.h

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

// Seeded random inputs for property tests.

#ifndef ALTSCORE_TESTS_SUPPORT_GENERATORS_H_
#define ALTSCORE_TESTS_SUPPORT_GENERATORS_H_

#include <random>
#include <string>
#include <vector>

#include "altscore/align.h"
#include "altscore/alt_network.h"
#include "altscore/lattice.h"

namespace altscore::testing {

class Gen {
 public:
  explicit Gen(unsigned seed) : rng_(seed) {}

  int Int(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng_); }
  bool Chance(double p) { return std::bernoulli_distribution(p)(rng_); }
  template <typename T>
  const T &Pick(const std::vector<T> &v) {
    return v[Int(0, static_cast<int>(v.size()) - 1)];
  }

  std::mt19937 &rng() { return rng_; }

 private:
  std::mt19937 rng_;
};

inline const std::vector<std::string> &SmallVocab() {
  static const std::vector<std::string> v{"A", "B", "C", "D"};
  return v;
}

/// Flat network of up to `max_slots` slots; slots hold 1-3 alternatives of
/// 0-2 words, some of them optional.
inline AltNetwork RandomNetwork(Gen &g, int max_slots, double optional_rate = 0.15) {
  AltNetwork net;
  const int slots = g.Int(0, max_slots);
  for (int s = 0; s < slots; ++s) {
    Slot slot;
    const int alts = g.Int(1, 3);
    for (int a = 0; a < alts; ++a) {
      Alternative alt;
      alt.rank = a;
      const int len = alts == 1 ? g.Int(1, 2) : g.Int(0, 2);
      for (int w = 0; w < len; ++w) {
        alt.elements.push_back({g.Pick(SmallVocab()), g.Chance(optional_rate), {}, std::nullopt});
      }
      slot.alternatives.push_back(std::move(alt));
    }
    net.slots.push_back(std::move(slot));
  }
  return net;
}

/// Acyclic lattice whose states carry increasing times, so that every path
/// tiles [0, T) with its arcs. A chain through all states keeps it
/// connected; extra forward arcs add ambiguity. Weights are multiples of
/// 0.25 so path sums are exact in any order.
inline Lattice RandomTiledLattice(Gen &g, int max_states = 12, double extra_arc_rate = 0.3,
                                  const std::vector<std::string> &labels = {"A", "B", "C", "D", "<eps>",
                                                                            "<sil>"}) {
  Lattice lat;
  lat.num_states = g.Int(2, max_states);
  std::vector<int> time(lat.num_states, 0);
  for (int s = 1; s < lat.num_states; ++s) time[s] = time[s - 1] + g.Int(1, 6);
  auto add = [&](int from, int to) {
    lat.arcs.push_back({from, to, g.Pick(labels), time[from], time[to], 0.25 * g.Int(0, 12)});
  };
  for (int s = 0; s + 1 < lat.num_states; ++s) {
    add(s, s + 1);
    if (g.Chance(0.3)) add(s, s + 1);
  }
  for (int i = 0; i < lat.num_states; ++i) {
    for (int j = i + 2; j < lat.num_states; ++j) {
      if (g.Chance(extra_arc_rate / (j - i))) add(i, j);
    }
  }
  lat.start = 0;
  lat.finals[lat.num_states - 1] = 0.25 * g.Int(0, 4);
  return lat;
}

}  // namespace altscore::testing

#endif  // ALTSCORE_TESTS_SUPPORT_GENERATORS_H_
