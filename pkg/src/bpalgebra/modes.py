"""Mode algebra of the Bershadsky-Polyakov vertex algebra at a fixed level.

Two index conventions are supported for the four generating fields J, L, G+,
G- and are written here as in the source algebra:

* ``omega`` -- modes taken with respect to the standard Virasoro vector
  (half-integer grading; G+- carry conformal weight 3/2).  The commutation
  table is encoded verbatim in :func:`BPAlgebra._bracket_omega`.
* ``bar`` -- modes with respect to the shifted Virasoro vector obtained by
  adding half the derivative of J (integer grading; G+ has weight 1 and G-
  weight 2).  Brackets in this convention are *derived* from the omega table
  through the mode substitution
      J(n) = J_n,  L(n) = L_n - (n+1)/2 J_n,  G+(n) = G+_n,  G-(n) = G-_{n+1},
  so the printed table remains the single source of truth.

States are finite Q[x,y]-linear combinations of canonical PBW monomials
applied to the vacuum or to a generic highest-weight vector v(x,y) with
(J(0), L(0)) eigenvalues (x, y).  The canonical monomial order puts the
generators in the order L < J < G+ < G- (the order used by the tables we
reproduce) with non-increasing mode indices inside each generator block.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
import re

from .arith import Poly2, Q, binomial, frac

OMEGA = "omega"
BAR = "bar"
VAC = "vac"
HW = "hw"

J, L, GP, GM = "J", "L", "G+", "G-"
GENERATORS = (J, L, GP, GM)

# Canonical PBW generator order; within a generator indices are
# non-increasing left to right.  This matches the monomials of the golden
# tables verbatim (L-modes leftmost, then J, then G+, then G-).
_RANK = {L: 0, J: 1, GP: 2, GM: 3}

Mode = tuple  # (generator, index)

_MODE_RE = re.compile(r"^(J|L|G\+|G-)\((-?\d+)\)$")


def mode(gen: str, n: int) -> Mode:
    if gen not in GENERATORS:
        raise ValueError(f"unknown generator {gen!r}")
    return (gen, int(n))


def parse_mode(text: str) -> Mode:
    m = _MODE_RE.match(text.strip())
    if not m:
        raise ValueError(f"cannot parse mode {text!r}")
    return (m.group(1), int(m.group(2)))


def mode_str(m: Mode) -> str:
    return f"{m[0]}({m[1]})"


def _mode_key(m: Mode):
    return (_RANK[m[0]], -m[1])


@dataclass
class Bracket:
    """Exact commutator [a, b] of two generator modes.

    ``j2`` holds unexpanded (J^2)_p markers as (p, coefficient) pairs; they
    are expanded with the normal-ordered splitting only when applied to a
    state, where finitely many terms survive.  ``linear`` lists (mode, coeff)
    and ``scalar`` is the central term with delta conditions already
    evaluated.
    """

    j2: list = field(default_factory=list)
    linear: list = field(default_factory=list)
    scalar: Fraction = Q(0)


class State:
    """Sparse Q[x,y]-combination of canonical PBW monomials over a base tag."""

    __slots__ = ("base", "terms")

    def __init__(self, base: str, terms: dict | None = None):
        self.base = base
        self.terms: dict[tuple, Poly2] = terms or {}

    def copy(self) -> "State":
        return State(self.base, dict(self.terms))

    def is_zero(self) -> bool:
        return not self.terms

    def __eq__(self, other):
        return (
            isinstance(other, State)
            and self.base == other.base
            and self.terms == other.terms
        )

    def __hash__(self):
        return hash((self.base, frozenset(self.terms.items())))

    def add_term(self, mono: tuple, coeff) -> None:
        if not isinstance(coeff, Poly2):
            coeff = Poly2.const(coeff)
        if not coeff:
            return
        cur = self.terms.get(mono)
        new = coeff if cur is None else cur + coeff
        if new:
            self.terms[mono] = new
        else:
            del self.terms[mono]

    def __add__(self, other: "State") -> "State":
        if self.base != other.base:
            raise ValueError("cannot add states over different bases")
        out = self.copy()
        for mono, coeff in other.terms.items():
            out.add_term(mono, coeff)
        return out

    def __sub__(self, other: "State") -> "State":
        return self + other.scaled(-1)

    def scaled(self, factor) -> "State":
        if not isinstance(factor, Poly2):
            factor = Poly2.const(factor)
        out = State(self.base)
        if not factor:
            return out
        for mono, coeff in self.terms.items():
            out.add_term(mono, coeff * factor)
        return out

    def monomials_sorted(self):
        return sorted(self.terms, key=lambda mono: (len(mono), [_mode_key(m) for m in mono]))

    def coefficient(self, mono: tuple) -> Poly2:
        return self.terms.get(tuple(mono), Poly2())

    def __str__(self):
        tag = "1" if self.base == VAC else "v(x,y)"
        if not self.terms:
            return "0"
        parts = []
        for mono in self.monomials_sorted():
            coeff = self.terms[mono]
            word = "".join(mode_str(m) for m in mono)
            parts.append(f"({coeff})*{word}{tag}" if word else f"({coeff})*{tag}")
        return " + ".join(parts)

    __repr__ = __str__

    def to_json(self):
        out = []
        for mono in self.monomials_sorted():
            out.append([[mode_str(m) for m in mono], self.terms[mono].to_json()])
        return out

    @staticmethod
    def from_json(data, base=VAC) -> "State":
        s = State(base)
        for word, coeff in data:
            s.add_term(tuple(parse_mode(t) for t in word), Poly2.from_json(coeff))
        return s


class BPAlgebra:
    """The mode algebra at a fixed rational level, in one index convention."""

    def __init__(self, k, convention: str = BAR):
        if convention not in (OMEGA, BAR):
            raise ValueError(f"unknown convention {convention!r}")
        self.k = frac(k)
        if self.k == -3:
            raise ValueError("level -3 is excluded (the critical level)")
        self.convention = convention
        self.heis_level = (2 * self.k + 3) / 3
        self.central_charge = -(3 * self.k + 1) * (2 * self.k + 3) / (self.k + 3)
        self.central_charge_bar = -4 * (self.k + 1) * (2 * self.k + 3) / (self.k + 3)
        self._insert_memo: dict = {}
        self._action_memo: dict = {}

    # ------------------------------------------------------------------
    # Gradings
    # ------------------------------------------------------------------
    def weight(self, m: Mode) -> Fraction:
        """Shift of the convention's L(0)-eigenvalue produced by the mode."""
        gen, n = m
        if self.convention == BAR:
            return Q(-n)
        if gen in (GP, GM):
            return Q(1, 2) - n
        return Q(-n)

    @staticmethod
    def charge(m: Mode) -> int:
        return {J: 0, L: 0, GP: 1, GM: -1}[m[0]]

    def monomial_weight(self, mono: tuple) -> Fraction:
        return sum((self.weight(m) for m in mono), Q(0))

    def monomial_charge(self, mono: tuple) -> int:
        return sum(self.charge(m) for m in mono)

    def state_weight(self, s: State) -> Fraction:
        """Weight of a homogeneous state (error if mixed)."""
        weights = {self.monomial_weight(m) for m in s.terms}
        if len(weights) != 1:
            raise ValueError(f"state is not weight-homogeneous: {sorted(weights)}")
        return weights.pop()

    def state_charge(self, s: State) -> int:
        charges = {self.monomial_charge(m) for m in s.terms}
        if len(charges) != 1:
            raise ValueError(f"state is not charge-homogeneous: {sorted(charges)}")
        return charges.pop()

    # ------------------------------------------------------------------
    # Creation ranges / base actions
    # ------------------------------------------------------------------
    def creation_bound(self, gen: str, base: str) -> int:
        """Largest index n such that gen(n) is a creation mode on the base."""
        if self.convention == BAR:
            if base == VAC:
                return {J: -1, L: -2, GP: -1, GM: -2}[gen]
            return {J: -1, L: -1, GP: 0, GM: -1}[gen]
        if base != VAC:
            raise ValueError("omega-convention engine only supports the vacuum base")
        return {J: -1, L: -2, GP: -1, GM: -1}[gen]

    def is_creation(self, m: Mode, base: str) -> bool:
        return m[1] <= self.creation_bound(m[0], base)

    def _base_action(self, m: Mode, base: str) -> Poly2:
        """Action of a non-creation mode on the bare base vector."""
        gen, n = m
        if base == VAC:
            return Poly2()
        if m == (J, 0):
            return Poly2.x()
        if m == (L, 0):
            return Poly2.y()
        return Poly2()  # annihilators, including G-(0)

    # ------------------------------------------------------------------
    # Brackets
    # ------------------------------------------------------------------
    def _bracket_omega(self, a: Mode, b: Mode) -> Bracket:
        """The commutation table of the generating fields, encoded verbatim.

        Indices: L_m carries the conformal (weight) index, J/G+- the n-th
        product index.  [L_m, L_n] is the Virasoro relation with central
        charge c_k; the remaining relations are the printed list.
        """
        (ga, m), (gb, n) = a, b
        k = self.k
        if ga == J and gb == J:
            return Bracket(scalar=self.heis_level * m if m + n == 0 else Q(0))
        if ga == J and gb in (GP, GM):
            sign = 1 if gb == GP else -1
            return Bracket(linear=[((gb, m + n), Q(sign))])
        if ga == L and gb == J:
            return Bracket(linear=[((J, m + n), Q(-n))])
        if ga == L and gb == L:
            out = Bracket(linear=[((L, m + n), Q(m - n))])
            if m + n == 0:
                out.scalar = self.central_charge * (m**3 - m) / 12
            return out
        if ga == L and gb in (GP, GM):
            return Bracket(linear=[((gb, m + n), Q(m, 2) - n + Q(1, 2))])
        if ga == GP and gb == GM:
            out = Bracket(j2=[(m + n - 1, Q(3))])
            out.linear = [
                ((J, m + n - 1), Q(3, 2) * (k + 1) * (m - n)),
                ((L, m + n - 1), -(k + 3)),
            ]
            if m + n == 1:
                out.scalar = (k + 1) * (2 * k + 3) * (m - 1) * m / 2
            return out
        if ga == gb and ga in (GP, GM):
            return Bracket()
        # Remaining cases by antisymmetry.
        flipped = self._bracket_omega(b, a)
        return Bracket(
            j2=[(p, -c) for p, c in flipped.j2],
            linear=[(md, -c) for md, c in flipped.linear],
            scalar=-flipped.scalar,
        )

    def _to_omega(self, m: Mode):
        """A convention mode as an affine combination of omega modes."""
        gen, n = m
        if self.convention == OMEGA:
            return [((gen, n), Q(1))]
        if gen == L:
            return [((L, n), Q(1)), ((J, n), -Q(n + 1, 2))]
        if gen == GM:
            return [((GM, n + 1), Q(1))]
        return [((gen, n), Q(1))]

    def _from_omega_linear(self, m: Mode):
        """An omega mode as an affine combination of this convention's modes."""
        gen, n = m
        if self.convention == OMEGA:
            return [((gen, n), Q(1))]
        if gen == L:
            return [((L, n), Q(1)), ((J, n), Q(n + 1, 2))]
        if gen == GM:
            return [((GM, n - 1), Q(1))]
        return [((gen, n), Q(1))]

    def bracket(self, a: Mode, b: Mode) -> Bracket:
        """[a, b] with both modes (and the result) in this convention."""
        if self.convention == OMEGA:
            return self._bracket_omega(a, b)
        out = Bracket()
        linear_acc: dict[Mode, Fraction] = {}
        j2_acc: dict[int, Fraction] = {}
        scalar = Q(0)
        for ma, ca in self._to_omega(a):
            for mb, cb in self._to_omega(b):
                piece = self._bracket_omega(ma, mb)
                cc = ca * cb
                scalar += cc * piece.scalar
                for p, coeff in piece.j2:
                    j2_acc[p] = j2_acc.get(p, Q(0)) + cc * coeff
                for md, coeff in piece.linear:
                    for md2, conv in self._from_omega_linear(md):
                        linear_acc[md2] = linear_acc.get(md2, Q(0)) + cc * coeff * conv
        out.scalar = scalar
        out.j2 = sorted(((p, c) for p, c in j2_acc.items() if c), key=lambda t: t[0])
        out.linear = sorted(
            ((md, c) for md, c in linear_acc.items() if c), key=lambda t: _mode_key(t[0])
        )
        return out

    # ------------------------------------------------------------------
    # Left action and normal ordering
    # ------------------------------------------------------------------
    def zero(self, base: str = VAC) -> State:
        return State(base)

    def unit(self, base: str = VAC) -> State:
        s = State(base)
        s.add_term((), 1)
        return s

    def apply_mode(self, m: Mode, s: State) -> State:
        out = State(s.base)
        for mono, coeff in s.terms.items():
            for mono2, c2 in self._insert(m, mono, s.base).items():
                out.add_term(mono2, coeff * c2)
        return out

    def apply_bracket(self, br: Bracket, s: State) -> State:
        out = s.scaled(br.scalar) if br.scalar else State(s.base)
        for md, coeff in br.linear:
            out = out + self.apply_mode(md, s).scaled(coeff)
        for p, coeff in br.j2:
            out = out + self.apply_j2(p, s).scaled(coeff)
        return out

    def apply_j2(self, p: int, s: State) -> State:
        """(J^2)_p s with the normal-ordered splitting.

        (J^2)_p = sum_{j<=-1} J_j J_{p-j} + sum_{j>=0} J_{p-j} J_j, truncated
        to the finitely many terms that act nonzero on s.  This exact
        splitting is required to reproduce the printed bracket table.
        """
        out = State(s.base)
        if s.is_zero():
            return out
        maxw = max(self.monomial_weight(m) for m in s.terms)
        # J modes have weight -index in either convention.
        jmin = p - int(maxw)
        for j in range(jmin, 0):
            inner = self.apply_mode((J, p - j), s)
            out = out + self.apply_mode((J, j), inner)
        for j in range(0, int(maxw) + 1):
            inner = self.apply_mode((J, j), s)
            out = out + self.apply_mode((J, p - j), inner)
        return out

    def _insert(self, m: Mode, mono: tuple, base: str) -> dict:
        key = (m, mono, base)
        memo = self._insert_memo
        hit = memo.get(key)
        if hit is not None:
            return hit
        if not mono:
            if self.is_creation(m, base):
                result = {(m,): Poly2.const(1)}
            else:
                act = self._base_action(m, base)
                result = {(): act} if act else {}
        elif self.is_creation(m, base) and _mode_key(m) <= _mode_key(mono[0]):
            result = {(m,) + mono: Poly2.const(1)}
        else:
            head, rest = mono[0], mono[1:]
            rest_state = State(base, {rest: Poly2.const(1)})
            swapped = self.apply_mode(head, self.apply_mode(m, rest_state))
            correction = self.apply_bracket(self.bracket(m, head), rest_state)
            total = swapped + correction
            result = dict(total.terms)
        memo[key] = result
        return result

    def normal_form(self, word, base: str = VAC, coeff=1) -> State:
        """Canonical state for a mode word applied right-to-left to the base."""
        s = self.unit(base).scaled(coeff)
        for m in reversed(list(word)):
            s = self.apply_mode(m, s)
        return s

    def state_from_words(self, entries, base: str = VAC) -> State:
        """Sum of coeff * word(base) over (word, coeff) pairs."""
        out = State(base)
        for word, coeff in entries:
            out = out + self.normal_form(word, base=base, coeff=coeff)
        return out

    # ------------------------------------------------------------------
    # Convention conversion
    # ------------------------------------------------------------------
    def convert(self, s: State, target: "BPAlgebra") -> State:
        """Re-express a vacuum state in the target convention's PBW basis."""
        if s.base != VAC:
            raise ValueError("convention conversion is defined on vacuum states")
        if target.k != self.k:
            raise ValueError("conversion requires matching levels")
        if target.convention == self.convention:
            return s.copy()
        out = State(VAC)
        for mono, coeff in s.terms.items():
            expansions = [self._cross_convert_mode(m, target) for m in mono]
            words = [((), Q(1))]
            for options in expansions:
                words = [
                    (word + (md,), c * c2) for word, c in words for md, c2 in options
                ]
            for word, c in words:
                out = out + target.normal_form(word, coeff=coeff * c)
        return out

    def _cross_convert_mode(self, m: Mode, target: "BPAlgebra"):
        gen, n = m
        if target.convention == BAR:  # self is omega
            if gen == L:
                return [((L, n), Q(1)), ((J, n), Q(n + 1, 2))]
            if gen == GM:
                return [((GM, n - 1), Q(1))]
            return [((gen, n), Q(1))]
        # self is bar, target omega
        if gen == L:
            return [((L, n), Q(1)), ((J, n), -Q(n + 1, 2))]
        if gen == GM:
            return [((GM, n + 1), Q(1))]
        return [((gen, n), Q(1))]

    # ------------------------------------------------------------------
    # Spectral flow
    # ------------------------------------------------------------------
    def spectral_flow_mode(self, m: Mode):
        """The mode substitution of the spectral-flow twist (bar convention).

        Returns (list of (mode, coeff), scalar).
        """
        if self.convention != BAR:
            raise ValueError("spectral flow is defined on the integer-graded convention")
        gen, n = m
        lam = self.heis_level
        if gen == J:
            return [((J, n), Q(1))], (-lam if n == 0 else Q(0))
        if gen == L:
            return [((L, n), Q(1)), ((J, n), Q(-1))], (lam if n == 0 else Q(0))
        if gen == GP:
            return [((GP, n - 1), Q(1))], Q(0)
        return [((GM, n + 1), Q(1))], Q(0)

    def apply_spectral_flow_op(self, m: Mode, s: State) -> State:
        combo, scalar = self.spectral_flow_mode(m)
        out = s.scaled(scalar) if scalar else State(s.base)
        for md, coeff in combo:
            out = out + self.apply_mode(md, s).scaled(coeff)
        return out

    def apply_spectral_flow_bracket(self, br: Bracket, s: State) -> State:
        """Apply the spectral-flow image of a bracket result to a state."""
        out = s.scaled(br.scalar) if br.scalar else State(s.base)
        for md, coeff in br.linear:
            out = out + self.apply_spectral_flow_op(md, s).scaled(coeff)
        for p, coeff in br.j2:
            out = out + self._apply_j2_flowed(p, s).scaled(coeff)
        return out

    def _apply_j2_flowed(self, p: int, s: State) -> State:
        # Same splitting as apply_j2 with each J_q replaced by its flow image.
        out = State(s.base)
        if s.is_zero():
            return out
        maxw = max(self.monomial_weight(m) for m in s.terms)
        jmin = p - int(maxw) - 1
        for j in range(jmin, 0):
            inner = self.apply_spectral_flow_op((J, p - j), s)
            out = out + self.apply_spectral_flow_op((J, j), inner)
        for j in range(0, int(maxw) + 2):
            inner = self.apply_spectral_flow_op((J, j), s)
            out = out + self.apply_spectral_flow_op((J, p - j), inner)
        return out

    # ------------------------------------------------------------------
    # Modes of composite states (Borcherds iterate recursion)
    # ------------------------------------------------------------------
    def _gen_shift(self, gen: str) -> int:
        """Product-index shift of a generator state's modes.

        For the weight-one generators the p-th product mode is gen(p); for
        the weight-two generators it is gen(p-1).
        """
        if self.convention != BAR:
            raise ValueError("composite mode actions are implemented for the bar convention")
        return 1 if gen in (L, GM) else 0

    def state_product_action(self, u: State, p: int, w: State) -> State:
        """The p-th product mode of the vacuum state u, applied to w."""
        if u.base != VAC:
            raise ValueError("the acting state must live over the vacuum")
        out = State(w.base)
        for umono, ucoeff in u.terms.items():
            for wmono, wcoeff in w.terms.items():
                part = self._mono_product_action(umono, p, wmono, w.base)
                out = out + part.scaled(ucoeff * wcoeff)
        return out

    def _mono_product_action(self, umono: tuple, p: int, wmono: tuple, base: str) -> State:
        """Iterate recursion (a_(m) b)_(p) = sum_j (-1)^j C(m,j)
        (a_(m-j) b_(p+j) - (-1)^m b_(m+p-j) a_(j)) on the head of umono."""
        key = (umono, p, wmono, base)
        memo = self._action_memo
        hit = memo.get(key)
        if hit is not None:
            return hit
        if not umono:
            if p == -1:
                result = State(base, {wmono: Poly2.const(1)})
            else:
                result = State(base)
            memo[key] = result
            return result
        gen, n = umono[0]
        s = self._gen_shift(gen)
        m = n + s
        rest = umono[1:]
        rest_weight = self.monomial_weight(rest)
        w_weight = self.monomial_weight(wmono)
        wstate = State(base, {wmono: Poly2.const(1)})
        result = State(base)
        # Head sum: gen(n-j) (rest_(p+j) w), truncated by module weights.
        j = 0
        while rest_weight + w_weight - (p + j) - 1 >= 0:
            coeff = Q(-1) ** j * binomial(m, j)
            if coeff:
                inner = self._mono_product_action(rest, p + j, wmono, base)
                if not inner.is_zero():
                    result = result + self.apply_mode((gen, n - j), inner).scaled(coeff)
            j += 1
        # Tail sum: -(-1)^m rest_(m+p-j) (gen(j-s) w), truncated where
        # gen(j-s) kills w.
        tail_sign = Q(1) if m % 2 else Q(-1)
        for j in range(0, int(w_weight) + s + 1):
            coeff = Q(-1) ** j * binomial(m, j) * tail_sign
            if not coeff:
                continue
            hit_w = self.apply_mode((gen, j - s), wstate)
            if hit_w.is_zero():
                continue
            for mono2, c2 in hit_w.terms.items():
                part = self._mono_product_action(rest, m + p - j, mono2, base)
                result = result + part.scaled(coeff * c2)
        memo[key] = result
        return result


def level_pair(k) -> tuple[BPAlgebra, BPAlgebra]:
    """Convenience constructor: (omega engine, bar engine) at level k."""
    return BPAlgebra(k, OMEGA), BPAlgebra(k, BAR)
