# python/altscore/__init__.py

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

"""Scoring speech recognition output against references with alternations.

Inputs are the text of STM, CTM, GLM, lattice and alternatives files.
"""

import json

from . import _altscore
from ._altscore import InputError, ParseError, align, arc_posteriors, derive_alternatives
from ._altscore import filter_ctm, filter_stm, metrics, nbest

__all__ = [
    "InputError",
    "ParseError",
    "align",
    "arc_posteriors",
    "derive_alternatives",
    "filter_ctm",
    "filter_stm",
    "metrics",
    "nbest",
    "normalize",
    "oracle_score",
    "score",
    "score_stages",
]


def score(stm, ctm, glm="", **options):
    """Per recording/channel rows followed by the "overall" row, as dicts."""
    return json.loads(_altscore.score(stm, ctm, glm, **options))


def score_stages(stm, ctm, glm="", **options):
    """Overall row for each step of the normalization ladder."""
    return json.loads(_altscore.score_stages(stm, ctm, glm, **options))


def oracle_score(stm, *, lattices=None, alternatives=None, n_values=(1, 10, 100, None), **options):
    """Oracle WER per depth. None in `n_values` means unbounded."""
    rows = json.loads(
        _altscore.oracle_score(stm, lattices=lattices, alternatives=alternatives, n_values=list(n_values), **options)
    )
    for row in rows:
        del row["system"]
    return rows


def normalize(kind, text):
    """Parse and rewrite `text` in canonical form. `kind` is one of
    stm, ctm, glm, lattice, lattices or alternatives."""
    return _altscore.roundtrip(kind, text)
