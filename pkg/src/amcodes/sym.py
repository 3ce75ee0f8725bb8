"""Symmetric and alternating special forms: elementary symmetric polynomials,
the Vandermonde product, fast tuple evaluation that never expands symbols,
the product-form dichotomy classifier, and the unique split of an
even-permutation-invariant polynomial into symmetric plus Vandermonde parts.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from itertools import combinations

import numpy as np

from .gf import Field, FieldElement
from .mvpoly import (
    MultiPoly,
    Permutation,
    WrongArity,
    alternating_generators,
    exact_divide,
    is_invariant,
    symmetric_generators,
)


class IndexOutOfRange(Exception):
    pass


class EvenCharacteristic(Exception):
    pass


class NotAmInvariant(Exception):
    pass


# Symbolic expansion of the Vandermonde product has m!/2 * 2 terms; beyond
# this arity every consumer must use the tuple-evaluation path instead.
MAX_SYMBOLIC_VANDERMONDE = 12


def elem_sym_poly(field: Field, m: int, i: int) -> MultiPoly:
    """The i-th elementary symmetric polynomial in m variables; index 0 is 1."""
    if not 0 <= i <= m:
        raise IndexOutOfRange(f"elementary symmetric index {i} outside 0..{m}")
    terms = {}
    for subset in combinations(range(m), i):
        e = [0] * m
        for j in subset:
            e[j] = 1
        terms[tuple(e)] = 1
    return MultiPoly(field, m, terms)


def vandermonde_poly(field: Field, m: int) -> MultiPoly:
    """Symbolic product of (x_i - x_j) over i < j.  Refuses m > 12; use
    :func:`vandermonde_eval` for larger arities."""
    if m > MAX_SYMBOLIC_VANDERMONDE:
        raise ValueError(f"symbolic Vandermonde expansion refused for m={m} > 12")
    out = MultiPoly.one(field, m)
    for i in range(1, m + 1):
        for j in range(i + 1, m + 1):
            out = out * (MultiPoly.variable(field, m, i) - MultiPoly.variable(field, m, j))
    return out


def _point_indices(point) -> list[int]:
    return [p.index if isinstance(p, FieldElement) else int(p) for p in point]


def eval_all_elem_sym(field: Field, point) -> tuple[int, ...]:
    """All m+1 elementary symmetric values at a point, as coefficient indices.

    Incremental expansion of prod(T + x_i): O(m^2) field operations, no
    symbolic polynomials involved.
    """
    xs = _point_indices(point)
    m = len(xs)
    e = [0] * (m + 1)
    e[0] = 1
    for i, x in enumerate(xs):
        for j in range(min(i + 1, m), 0, -1):
            e[j] = field.add(e[j], field.mul(e[j - 1], x))
    return tuple(e)


def vandermonde_eval(field: Field, point) -> int:
    """Value of prod_{i<j}(x_i - x_j) at a point; zero iff two coordinates
    coincide."""
    xs = _point_indices(point)
    acc = 1
    for i in range(len(xs)):
        for j in range(i + 1, len(xs)):
            acc = field.mul(acc, field.sub(xs[i], xs[j]))
            if acc == 0:
                return 0
    return acc


def eval_all_elem_sym_batch(field: Field, points: np.ndarray) -> np.ndarray:
    """Vectorized :func:`eval_all_elem_sym` over an (N, m) array of indices;
    returns an (N, m+1) array."""
    add, mul = field.add_table(), field.mul_table()
    n, m = points.shape
    e = np.zeros((n, m + 1), dtype=field.np_dtype)
    e[:, 0] = 1
    for i in range(m):
        x = points[:, i]
        for j in range(min(i + 1, m), 0, -1):
            e[:, j] = add[e[:, j], mul[e[:, j - 1], x]]
    return e


def vandermonde_eval_batch(field: Field, points: np.ndarray) -> np.ndarray:
    """Vectorized :func:`vandermonde_eval` over an (N, m) array of indices."""
    sub, mul = field.sub_table(), field.mul_table()
    n, m = points.shape
    acc = np.ones(n, dtype=field.np_dtype)
    for i in range(m):
        for j in range(i + 1, m):
            acc = mul[acc, sub[points[:, i], points[:, j]]]
    return acc


# ---------------------------------------------------------------------------
# Linear combinations of elementary symmetric polynomials.
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class SymCombo:
    """A combination sum(a_i * sigma^i, i = 0..m), stored as coefficient
    indices a_0..a_m."""

    field: Field
    m: int
    coeffs: tuple[int, ...]

    def __post_init__(self):
        coeffs = tuple(
            c.index if isinstance(c, FieldElement) else int(c) for c in self.coeffs
        )
        if len(coeffs) != self.m + 1:
            raise IndexOutOfRange(f"need m+1={self.m + 1} coefficients, got {len(coeffs)}")
        if any(not 0 <= c < self.field.order for c in coeffs):
            raise ValueError("coefficient index out of field range")
        object.__setattr__(self, "coeffs", coeffs)

    @property
    def is_zero(self) -> bool:
        return all(c == 0 for c in self.coeffs)

    def evaluate(self, point) -> int:
        esp = eval_all_elem_sym(self.field, point)
        f = self.field
        acc = 0
        for a, s in zip(self.coeffs, esp):
            acc = f.add(acc, f.mul(a, s))
        return acc

    def to_poly(self) -> MultiPoly:
        out = MultiPoly.zero(self.field, self.m)
        for i, a in enumerate(self.coeffs):
            if a:
                out = out + elem_sym_poly(self.field, self.m, i).scale(a)
        return out

    def to_string(self) -> str:
        return ",".join(str(c) for c in self.coeffs)

    @classmethod
    def from_string(cls, field: Field, m: int, text: str) -> "SymCombo":
        return cls(field, m, tuple(int(t) for t in text.split(",")))


class ComboType(enum.Enum):
    TYPE1 = "type1"
    TYPE2 = "type2"
    DEGENERATE = "degenerate"


@dataclass(frozen=True)
class SymComboClass:
    """Classification verdict: TYPE2 combos factor as a * prod(alpha + x_i)
    with the witnesses attached (as coefficient indices); constants are
    DEGENERATE; everything else is TYPE1 (absolutely irreducible by the
    factorization dichotomy -- no irreducibility test is attempted)."""

    kind: ComboType
    a: int | None = None
    alpha: int | None = None


def classify_sym_combo(s: SymCombo) -> SymComboClass:
    """Decide the factorization type of a symmetric combination.

    TYPE2 requires a_m != 0 and a_i = a_m * alpha^(m-i) for all i, with alpha
    read off the top coefficient ratio and then verified against the whole
    geometric pattern.  alpha is only searched inside the base field.
    """
    f = s.field
    if all(c == 0 for c in s.coeffs[1:]):
        return SymComboClass(ComboType.DEGENERATE)
    a_m = s.coeffs[s.m]
    if a_m == 0:
        return SymComboClass(ComboType.TYPE1)
    alpha = f.mul(s.coeffs[s.m - 1], f.inv(a_m))
    for i, a_i in enumerate(s.coeffs):
        if a_i != f.mul(a_m, f.pow(alpha, s.m - i)):
            return SymComboClass(ComboType.TYPE1)
    return SymComboClass(ComboType.TYPE2, a=a_m, alpha=alpha)


def isolate_variable(s: SymCombo, which: int) -> tuple[SymCombo, SymCombo]:
    """Write s = x_which * p1 + p2 with p1, p2 symmetric in the remaining
    variables, reading coefficients off sigma_m^i = x * sigma_{m-1}^{i-1}
    + sigma_{m-1}^i."""
    if not 1 <= which <= s.m:
        raise IndexOutOfRange(f"variable index {which} outside 1..{s.m}")
    if s.m < 1:
        raise IndexOutOfRange("cannot isolate a variable of a 0-variable combination")
    p1 = SymCombo(s.field, s.m - 1, s.coeffs[1:])
    p2 = SymCombo(s.field, s.m - 1, s.coeffs[: s.m])
    return p1, p2


@dataclass(frozen=True)
class AmInvariantPair:
    """The unique split g = s1 * v_m + s2 with s1, s2 symmetric."""

    s1: MultiPoly
    s2: MultiPoly


def decompose_am_invariant(g: MultiPoly) -> AmInvariantPair:
    """Split an even-permutation-invariant polynomial into its symmetric and
    Vandermonde-multiple parts.

    Uses the parity average against the transposition (1 2):
    s2 = (g + tau(g)) / 2 and s1 = ((g - tau(g)) / 2) / v_m.  Requires odd
    characteristic and m >= 2.
    """
    field, m = g.field, g.m
    if field.char == 2:
        raise EvenCharacteristic("the parity split needs 1/2; characteristic 2 rejected")
    if m < 2:
        raise WrongArity(f"decomposition needs m >= 2, got m={m}")
    if not is_invariant(g, alternating_generators(m)):
        raise NotAmInvariant("input is not invariant under even permutations")
    tau = Permutation.transposition(m, 1, 2)
    g_tau = g.apply_permutation(tau)
    half = field.inv(field.add(1, 1))
    s2 = (g + g_tau).scale(half)
    anti = (g - g_tau).scale(half)
    s1 = exact_divide(anti, vandermonde_poly(field, m))
    sm_gens = symmetric_generators(m)
    if not (is_invariant(s1, sm_gens) and is_invariant(s2, sm_gens)):
        raise AssertionError("internal inconsistency: split parts are not symmetric")
    return AmInvariantPair(s1=s1, s2=s2)
