"""Golden data: the printed singular vectors and Zhu-layer values.

The JSON files under ``golden/`` hold the published coefficient tables; the
loaders below rebuild them as engine states so that every other module (and
the regression tests) compares freshly computed objects against this single
copy of the data.
"""

from __future__ import annotations

from functools import lru_cache
from importlib import resources
import json

from .arith import Poly2, Q, frac
from .modes import BPAlgebra, State, parse_mode


@lru_cache(maxsize=None)
def _load(name: str):
    with resources.files("bpalgebra.golden").joinpath(name).open("r") as fh:
        return json.load(fh)


def golden_tables() -> dict:
    return _load("tables.json")


def golden_zhu() -> dict:
    return _load("zhu.json")


def golden_states() -> dict:
    """Tables 1-2 in the canonical state-serialization format."""
    return _load("states.json")


def golden_classify() -> dict:
    return _load("classify.json")


def table_words(name: str):
    """(level, convention, [(mode word, coefficient), ...]) for a table entry."""
    entry = golden_tables()[name]
    words = [
        ([parse_mode(t) for t in word], frac(coeff))
        for word, coeff in entry["terms"]
    ]
    return frac(entry["level"]), entry["convention"], words


def table_state(name: str, algebra: BPAlgebra | None = None) -> State:
    """The table entry as a canonical state (built by normal ordering)."""
    level, convention, words = table_words(name)
    if algebra is None:
        algebra = BPAlgebra(level, convention)
    if algebra.k != level or algebra.convention != convention:
        raise ValueError(f"table {name} lives at level {level} in {convention}")
    return algebra.state_from_words(words)


def omega4(algebra=None) -> State:
    return table_state("omega4", algebra)


def omega3(algebra=None) -> State:
    return table_state("omega3", algebra)


def omega4_bar(algebra=None) -> State:
    return table_state("omega4_bar", algebra)


def omega3_bar(algebra=None) -> State:
    return table_state("omega3_bar", algebra)


def singular_vector_bar(k) -> State | None:
    """The known low-weight singular vector at a supported rational level."""
    k = frac(k)
    if k == Q(-5, 3):
        return omega4_bar()
    if k == Q(-9, 4):
        return omega3_bar()
    return None


def golden_poly(name: str) -> Poly2:
    return Poly2.from_json(golden_zhu()[name])
