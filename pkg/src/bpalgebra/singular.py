"""Singular vectors as exact kernels of annihilation-operator systems.

A vector in a vacuum weight space is singular when the generators of the
strictly positive part of the mode algebra kill it.  The default annihilator
set is {J(1), L(1), L(2), G+(1), G-(1)} in the grading's own labels; every
strictly positive mode is an iterated bracket of these.  The charge-carrying
weight-zero mode G-(0) is *not* imposed by default (the stricter
highest-weight check is available via a flag); for the half-integer grading
the corresponding mode is genuinely positive and belongs to the default set.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from .arith import Poly2, Q, kernel_basis
from .modes import BAR, GM, GP, J, L, OMEGA, VAC, BPAlgebra, Mode, State
from .weightspace import enumerate_basis


@dataclass
class AnnihilatorSet:
    """Modes required to annihilate a candidate singular vector."""

    modes: list
    include_gm0: bool = False
    include_gp0: bool = False

    @staticmethod
    def default(convention: str, include_gm0=False, include_gp0=False) -> "AnnihilatorSet":
        modes = [(J, 1), (L, 1), (L, 2), (GP, 1), (GM, 1)]
        extra = []
        if include_gm0:
            extra.append((GM, 0) if convention == BAR else (GM, 1))
        if include_gp0:
            extra.append((GP, 0))
        out = modes + [m for m in extra if m not in modes]
        return AnnihilatorSet(out, include_gm0, include_gp0)


@dataclass
class SingularSolution:
    k: Fraction
    weight: Fraction
    charge: int
    convention: str
    dimension: int
    vectors: list  # list of State
    annihilators: list = field(default_factory=list)


def _coerce_rows(images, column_index):
    """Linear-system rows from annihilator images of the basis states."""
    rows = {}
    for col, image in enumerate(images):
        for mono, coeff in image.terms.items():
            if not coeff.is_const():
                raise ValueError("vacuum computations must have constant coefficients")
            rows.setdefault(mono, {})[col] = coeff.const_value()
    ncols = len(images)
    return [
        [row.get(c, Q(0)) for c in range(ncols)] for _, row in sorted(rows.items(), key=lambda t: str(t[0]))
    ]


def find_singular(k, weight, charge, convention: str = OMEGA, ann: AnnihilatorSet | None = None) -> SingularSolution:
    """Exact kernel of the stacked annihilator system on a vacuum weight space.

    The returned basis vectors are normalized to be monic in their first
    canonical monomial.
    """
    algebra = BPAlgebra(k, convention)
    ann = ann or AnnihilatorSet.default(convention)
    basis = enumerate_basis(algebra, VAC, weight, charge)
    states = basis.states()
    rows = []
    for mode in ann.modes:
        images = [algebra.apply_mode(mode, s) for s in states]
        rows.extend(_coerce_rows(images, len(states)))
    kernel = kernel_basis(rows, len(states))
    vectors = []
    for vec in kernel:
        s = State(VAC)
        for mono, coeff in zip(basis.monomials, vec):
            s.add_term(mono, coeff)
        vectors.append(normalize_monic(s))
    # Re-verify each solution through the mode action, independently of the
    # linear solve.
    for s in vectors:
        ok, witness = verify_singular(algebra, s, ann)
        if not ok:
            raise AssertionError(f"kernel vector fails reverification: {witness}")
    return SingularSolution(
        algebra.k, basis.weight, charge, convention, len(vectors), vectors, list(ann.modes)
    )


def normalize_monic(s: State) -> State:
    """Scale so the canonically-first monomial has coefficient one."""
    if s.is_zero():
        return s
    first = s.monomials_sorted()[0]
    lead = s.terms[first]
    if not lead.is_const():
        raise ValueError("cannot normalize a state with non-constant coefficients")
    return s.scaled(1 / lead.const_value())


def scale_to_match(s: State, mono, coefficient) -> State:
    """Rescale so the given monomial carries the given coefficient."""
    cur = s.coefficient(tuple(mono))
    if not cur:
        raise ValueError("state has no such monomial")
    return s.scaled(Poly2.const(coefficient) * Poly2.const(1 / cur.const_value()))


def verify_singular(algebra: BPAlgebra, s: State, ann: AnnihilatorSet | None = None):
    """True iff every annihilator kills s; otherwise the first witness.

    Returns (ok, witness) with witness = (mode, image-state) on failure.
    """
    ann = ann or AnnihilatorSet.default(algebra.convention)
    for mode in ann.modes:
        image = algebra.apply_mode(mode, s)
        if not image.is_zero():
            return False, (mode, image)
    return True, None


def integral_level_vector(algebra: BPAlgebra, side: str, n: int) -> State:
    """The integral-level family members G+(-1)^n 1 and G-(-2)^n 1."""
    if algebra.convention != BAR:
        raise ValueError("the integral-level vectors are integer-graded objects")
    word = [(GP, -1)] * n if side == "+" else [(GM, -2)] * n
    return algebra.normal_form(word)
