# tools/make_mini_lattices.py

# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#  http://www.apache.org/licenses/LICENSE-2.0
#
# THIS CODE IS PROVIDED *AS IS* BASIS, WITHOUT WARRANTIES OR CONDITIONS OF ANY
# KIND, EITHER EXPRESS OR IMPLIED, INCLUDING WITHOUT LIMITATION ANY IMPLIED
# WARRANTIES OR CONDITIONS OF TITLE, FITNESS FOR A PARTICULAR PURPOSE,
# MERCHANTABLITY OR NON-INFRINGEMENT.
# See the Apache 2 License for the specific language governing permissions and
# limitations under the License.

"""Writes data/mini_benchmark/lattices.txt.

One lattice per reference segment. The reference words (optional
hesitations left out) always form a path; every word slot also carries two
confusable words, some slots are bridged by a compound arc and some can be
skipped, so the best path is usually wrong.
"""

import random
import sys
from pathlib import Path

CONFUSERS = [
    "A", "THE", "AN", "IT", "HIM", "ON", "IN", "TO", "TOO", "SO", "SEW", "NO", "KNOW",
    "WAY", "WHEY", "HOLE", "WHOLE", "WEATHER", "WHETHER", "NIGHT", "KNIGHT", "CELL",
    "STELLAR", "I'D", "AIM", "GOING", "LEAF", "LIVE", "OKAY", "YEAH", "MUCH", "MATCH",
]


def parse_stm(path):
    segments = []
    for line in Path(path).read_text().splitlines():
        if not line.strip() or line.startswith(";;"):
            continue
        f = line.split()
        words = [w for w in f[5:] if not (w.startswith("(") and w.endswith(")"))]
        segments.append((f[0], f[1], float(f[3]), float(f[4]), words))
    return segments


def lattice(words, start, end, rng):
    f0, f1 = round(start * 100), round(end * 100)
    inner0, inner1 = f0 + 5, f1 - 5
    k = len(words)
    edges = [inner0 + round((inner1 - inner0) * i / k) for i in range(k + 1)]
    arcs = [(0, 1, "<sil>", f0, inner0, 0.0)]
    for i, word in enumerate(words):
        s, t = i + 1, i + 2
        a, b = edges[i], edges[i + 1]
        others = rng.sample([c for c in CONFUSERS if c != word], 2)
        correct_best = rng.random() < 0.5
        arcs.append((s, t, word, a, b, round(rng.uniform(0.2, 0.8) if correct_best else rng.uniform(1.2, 2.5), 2)))
        for other in others:
            arcs.append((s, t, other, a, b, round(rng.uniform(0.9, 1.8) if correct_best else rng.uniform(0.2, 1.0), 2)))
        if rng.random() < 0.25:
            arcs.append((s, t, "<eps>", a, b, round(rng.uniform(2.0, 3.5), 2)))
        if i + 1 < k and rng.random() < 0.4:
            arcs.append((s, t + 1, rng.choice(CONFUSERS), a, edges[i + 2], round(rng.uniform(0.8, 2.0), 2)))
    arcs.append((k + 1, k + 2, "<sil>", inner1, f1, 0.0))
    return arcs, k + 2


def main():
    root = Path(__file__).resolve().parent.parent / "data" / "mini_benchmark"
    rng = random.Random(20240611)
    out = [";; Dense lattices; every reference transcript is a path."]
    counts = {}
    for rec, chan, start, end, words in parse_stm(root / "ref.stm"):
        counts[rec] = counts.get(rec, 0) + 1
        arcs, final = lattice(words, start, end, rng)
        out.append(f"utterance {rec}_{counts[rec]} {rec} {chan}")
        for a in arcs:
            out.append(" ".join(str(x) for x in a))
        out.append(f"final {final} 0")
    (root / "lattices.txt").write_text("\n".join(out) + "\n")
    return 0


if __name__ == "__main__":
    sys.exit(main())
