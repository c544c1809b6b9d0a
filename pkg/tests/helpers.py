"""Shared randomized property checks.

The acceptance suite runs each of these at 100 cases with a fixed seed; the
unit tests reuse them at smaller counts.  All checks raise AssertionError
with a reproduction hint on failure.
"""

from __future__ import annotations

import random

from bpalgebra import BPAlgebra, State
from bpalgebra.modes import BAR, GM, GP, HW, J, L, VAC
from bpalgebra.weightspace import enumerate_basis
from bpalgebra.zhu import ZhuReducer, zhu_circle, zhu_star

GENS = (J, L, GP, GM)


def random_mode(rng: random.Random, lo=-3, hi=3):
    return (rng.choice(GENS), rng.randint(lo, hi))


def random_state(algebra: BPAlgebra, rng: random.Random, max_weight: int,
                 base: str = VAC, terms: int = 2) -> State:
    weight = rng.randint(0, max_weight)
    charge_range = range(-2, 3) if base == VAC else range(0, 3)
    charge = rng.choice(list(charge_range))
    basis = enumerate_basis(algebra, base, weight, charge)
    state = State(base)
    if not basis.monomials:
        state.add_term((), rng.randint(1, 3))
        return state
    for _ in range(min(terms, len(basis.monomials))):
        mono = rng.choice(basis.monomials)
        state.add_term(mono, rng.choice([-3, -2, -1, 1, 2, 3]))
    if state.is_zero():
        state.add_term(basis.monomials[0], 1)
    return state


def check_bracket_consistency(algebra: BPAlgebra, cases: int, seed: int, max_weight=6):
    """[a, b] s == a(b s) - b(a s) for random generator modes and states."""
    rng = random.Random(seed)
    for case in range(cases):
        a = random_mode(rng)
        b = random_mode(rng)
        s = random_state(algebra, rng, max_weight, base=rng.choice([VAC, HW]) if algebra.convention == BAR else VAC)
        lhs = algebra.apply_mode(a, algebra.apply_mode(b, s)) - algebra.apply_mode(
            b, algebra.apply_mode(a, s)
        )
        rhs = algebra.apply_bracket(algebra.bracket(a, b), s)
        assert lhs == rhs, f"case {case}: [{a},{b}] on {s}"


def check_grading(algebra: BPAlgebra, cases: int, seed: int, max_weight=6):
    """apply_mode shifts weight by -n (own grading) and charge by +-1/0."""
    rng = random.Random(seed)
    charges = {J: 0, L: 0, GP: 1, GM: -1}
    for case in range(cases):
        mode = random_mode(rng)
        base = rng.choice([VAC, HW]) if algebra.convention == BAR else VAC
        weight = rng.randint(0, max_weight)
        charge = rng.randint(-1, 1)
        basis = enumerate_basis(algebra, base, weight, charge)
        if not basis.monomials:
            continue
        mono = rng.choice(basis.monomials)
        image = algebra.apply_mode(mode, State(base, {mono: _one()}))
        for mono2 in image.terms:
            assert algebra.monomial_weight(mono2) == weight + algebra.weight(mode), (
                f"case {case}: weight shift of {mode}"
            )
            assert algebra.monomial_charge(mono2) == charge + charges[mode[0]], (
                f"case {case}: charge shift of {mode}"
            )


def _one():
    from bpalgebra.arith import Poly2

    return Poly2.const(1)


def check_confluence(algebra: BPAlgebra, cases: int, seed: int, max_len=5):
    """Normal forms agree across reduction routes.

    A random word is reduced directly, and with a random adjacent pair first
    rewritten through the commutator: w = (swapped word) + (bracket insertion).
    """
    rng = random.Random(seed)
    for case in range(cases):
        length = rng.randint(2, max_len)
        word = [random_mode(rng, -3, 2) for _ in range(length)]
        direct = algebra.normal_form(word)
        i = rng.randrange(length - 1)
        swapped = list(word)
        swapped[i], swapped[i + 1] = swapped[i + 1], swapped[i]
        tail = algebra.normal_form(word[i + 2:])
        correction = algebra.apply_bracket(algebra.bracket(word[i], word[i + 1]), tail)
        for m in reversed(word[:i]):
            correction = algebra.apply_mode(m, correction)
        other = algebra.normal_form(swapped) + correction
        assert direct == other, f"case {case}: word {word} at position {i}"


def check_spectral_flow_brackets(algebra: BPAlgebra, cases: int, seed: int, max_weight=4):
    """[psi(a), psi(b)] s == psi([a, b]) s for random modes and states."""
    rng = random.Random(seed)
    for case in range(cases):
        a = random_mode(rng, -2, 2)
        b = random_mode(rng, -2, 2)
        s = random_state(algebra, rng, max_weight)
        lhs = algebra.apply_spectral_flow_op(
            a, algebra.apply_spectral_flow_op(b, s)
        ) - algebra.apply_spectral_flow_op(b, algebra.apply_spectral_flow_op(a, s))
        rhs = algebra.apply_spectral_flow_bracket(algebra.bracket(a, b), s)
        assert lhs == rhs, f"case {case}: psi-bracket of {a}, {b}"


def check_zhu_multiplicativity(algebra: BPAlgebra, cases: int, seed: int, max_weight=3):
    """zhu_reduce(a * b) == zhu_reduce(a) zhu_reduce(b) on random states."""
    rng = random.Random(seed)
    reducer = ZhuReducer(algebra)
    for case in range(cases):
        a = _homogeneous_state(algebra, rng, max_weight)
        b = random_state(algebra, rng, max_weight)
        left = reducer.reduce_state(zhu_star(algebra, a, b))
        right = reducer.reduce_state(a) * reducer.reduce_state(b)
        assert left == right, f"case {case}: star multiplicativity"


def check_circle_vanishes(algebra: BPAlgebra, cases: int, seed: int, max_weight=3):
    """zhu_reduce kills O(V): reduce(a o b) == 0 on random states."""
    rng = random.Random(seed)
    reducer = ZhuReducer(algebra)
    for case in range(cases):
        a = _homogeneous_state(algebra, rng, max_weight)
        b = random_state(algebra, rng, max_weight)
        circ = zhu_circle(algebra, a, b)
        assert reducer.reduce_state(circ).is_zero(), f"case {case}: circle image"


def _homogeneous_state(algebra: BPAlgebra, rng: random.Random, max_weight: int) -> State:
    for _ in range(20):
        weight = rng.randint(0, max_weight)
        charge = rng.randint(-1, 1)
        basis = enumerate_basis(algebra, VAC, weight, charge)
        if basis.monomials:
            state = State(VAC)
            for _ in range(2):
                state.add_term(rng.choice(basis.monomials), rng.choice([-2, -1, 1, 2]))
            if not state.is_zero():
                return state
    return algebra.unit()
