"""Numeric bounds for distinguished zero counts and code distances, plus the
fiber census machinery that measures the corresponding quantities by
exhaustive enumeration.

All bound arithmetic is exact integer/rational; the only irrational pieces
(the half-integer powers of q and the 13/3 and 26/3 powers of m) are rounded
toward pessimism through exact integer square/cube roots, never floats.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .gf import Field
from .perm import TooManyVariables, distinguished_count, iterate_distinguished_batches
from .sym import vandermonde_eval_batch
from . import codes as codes_mod


class ScanTooLarge(Exception):
    pass


DEFAULT_SCAN_CAP = 10**9


def _ceil_sqrt(n: int) -> int:
    if n <= 0:
        return 0
    return math.isqrt(n - 1) + 1


def _floor_root(n: int, k: int) -> int:
    if n < 0:
        raise ValueError("negative radicand")
    if n == 0:
        return 0
    x = int(round(n ** (1.0 / k))) + 2
    while x**k > n:
        x -= 1
    while (x + 1) ** k <= n:
        x += 1
    return x


def _ceil_root(n: int, k: int) -> int:
    if n <= 0:
        return 0
    return _floor_root(n - 1, k) + 1


def weil_interval(delta: int, m: int, q: int) -> tuple[int, int]:
    """Two-sided point-count window q^(m-1) +/- err for a hypersurface of
    degree delta, with err = (delta-1)(delta-2) q^(m-3/2) + 5 delta^(13/3)
    q^(m-2).  The error term is rounded up (outward on both ends)."""
    if delta < 1:
        raise ValueError(f"degree must be >= 1, got {delta}")
    if m < 2:
        raise ValueError(f"need m >= 2, got m={m}")
    base = q ** (m - 2)
    t1 = _ceil_sqrt(((delta - 1) * (delta - 2) * base) ** 2 * q)
    t2 = _ceil_root((5 * base) ** 3 * delta**13, 3)
    err = t1 + t2
    center = q ** (m - 1)
    return center - err, center + err


def indep_case_bound(q: int, m: int) -> int:
    """Distinguished-zero bound for the linearly independent case:
    m^4 q^(m-3/2) + m^2 q^(m-3/2) + 5 m^(26/3) q^(m-2) + 5 m^(13/3) q^(m-2)
    + m! C(q-1, m-1), each irrational term ceiling-rounded.

    The derivation behind it assumes m >= 4 (and the headline regime is far
    larger); below that the value is still computed but is context-free.
    """
    if m < 2:
        raise ValueError(f"need m >= 2, got m={m}")
    base = q ** (m - 2)
    t1 = _ceil_sqrt(((m**4 + m**2) * base) ** 2 * q)
    t2 = _ceil_root((5 * base) ** 3 * m**26, 3)
    t3 = _ceil_root((5 * base) ** 3 * m**13, 3)
    t4 = math.factorial(m) * math.comb(q - 1, m - 1)
    return t1 + t2 + t3 + t4


def vandermonde_degree(m: int) -> int:
    """M = C(m, 2), the total degree of the Vandermonde product."""
    return math.comb(m, 2)


def fiber_gcd(q: int, m: int) -> int:
    """gcd(C(m, 2), q - 1), the multiplicity factor in the fiber bound."""
    return math.gcd(vandermonde_degree(m), q - 1)


def dep_case_bound(q: int, m: int) -> int:
    """Distinguished-zero bound for the linearly dependent case:
    P(q, m) / (q-1) * d + m P(q-1, m-1) with d = gcd(C(m, 2), q-1); the
    d = 1 instance is sharp."""
    if m < 2:
        raise ValueError(f"need m >= 2, got m={m}")
    d = fiber_gcd(q, m)
    fiber_term = Fraction(distinguished_count(q, m), q - 1) * d
    assert fiber_term.denominator == 1
    return int(fiber_term) + m * distinguished_count(q - 1, m - 1)


def main_bound(q: int, m: int) -> int:
    """The headline distinguished-zero bound; numerically identical to
    :func:`dep_case_bound` (use :func:`main_bound_applies` for the regime
    flag, which is attached, never enforced)."""
    return dep_case_bound(q, m)


def main_bound_applies(q: int, m: int) -> bool:
    """True in the proven regime q >= m^10 and m >= 6."""
    return q >= m**10 and m >= 6


def am_code_distance_bound(q: int, m: int) -> int:
    """Lower bound on the minimum distance of the even-orbit code:
    n - (2 C(q, m)/(q-1) + 2 C(q-1, m-1)) with n = 2 C(q, m).

    The middle term need not be an integer; the bound is evaluated in exact
    rationals and the floor is taken on the whole subtracted quantity (valid
    since the distance is an integer)."""
    n = 2 * math.comb(q, m)
    subtracted = Fraction(2 * math.comb(q, m), q - 1) + 2 * math.comb(q - 1, m - 1)
    return n - math.floor(subtracted)


def dj_distance_formula(q: int, m: int) -> int:
    """Exact minimum distance of the symmetric-orbit code:
    C(q, m) - C(q-1, m-1)."""
    return math.comb(q, m) - math.comb(q - 1, m - 1)


# ---------------------------------------------------------------------------
# Fiber census.
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class FiberCensus:
    """Measured sizes of the Vandermonde fibers over GF(q)^m.

    ``nonzero_counts[i]`` is |v^-1(lambda)| for the element of index i+1.
    The zero fiber is observed directly in a full scan and derived as
    q^m - P(q, m) in a distinguished-only scan (the two coincide because the
    product vanishes exactly on non-distinguished points).
    """

    q: int
    m: int
    scan: str
    nonzero_counts: tuple[int, ...]
    zero_fiber: int

    @property
    def max_fiber(self) -> int:
        return max(self.nonzero_counts)

    @property
    def uniform(self) -> bool:
        return len(set(self.nonzero_counts)) == 1

    @property
    def expected_uniform(self) -> int:
        return distinguished_count(self.q, self.m) // (self.q - 1)

    @property
    def fiber_bound(self) -> int:
        """P(q, m) d / (q - 1): the proven cap on any nonzero fiber."""
        return self.expected_uniform * fiber_gcd(self.q, self.m)

    def records(self):
        for i, c in enumerate(self.nonzero_counts, start=1):
            yield {"lambda": i, "count": c}
        yield {"lambda": 0, "count": self.zero_fiber}


def full_tuple_batches(field: Field, m: int, batch_size: int = 65536):
    """Yield (N, m) index arrays covering all q^m tuples in lexicographic
    order."""
    q = field.order
    total = q**m
    weights = q ** np.arange(m - 1, -1, -1, dtype=np.int64)
    for start in range(0, total, batch_size):
        idx = np.arange(start, min(start + batch_size, total), dtype=np.int64)
        yield ((idx[:, None] // weights[None, :]) % q).astype(field.np_dtype)


def vm_fiber_census(
    field: Field,
    m: int,
    scan: str = "distinguished",
    cap: int = DEFAULT_SCAN_CAP,
    force: bool = False,
) -> FiberCensus:
    """Exhaustively evaluate the Vandermonde product and histogram its
    values.  ``scan="distinguished"`` visits the P(q, m) distinguished
    points; ``scan="full"`` visits all q^m tuples.  Scans larger than ``cap``
    evaluations are refused unless forced."""
    q = field.order
    if m > q:
        raise TooManyVariables(f"m={m} exceeds field order q={q}")
    if scan not in ("distinguished", "full"):
        raise ValueError(f"unknown scan mode {scan!r}")
    total = q**m if scan == "full" else distinguished_count(q, m)
    if total > cap and not force:
        raise ScanTooLarge(f"{total} evaluations exceed cap {cap}; re-run with force")

    counts = np.zeros(q, dtype=np.int64)
    batches = (
        full_tuple_batches(field, m)
        if scan == "full"
        else iterate_distinguished_batches(field, m)
    )
    for pts in batches:
        values = vandermonde_eval_batch(field, pts)
        counts += np.bincount(values, minlength=q)

    if scan == "full":
        zero_fiber = int(counts[0])
    else:
        zero_fiber = q**m - total
    return FiberCensus(
        q=q,
        m=m,
        scan=scan,
        nonzero_counts=tuple(int(c) for c in counts[1:]),
        zero_fiber=zero_fiber,
    )


# ---------------------------------------------------------------------------
# Bound report and code comparisons.
# ---------------------------------------------------------------------------

BOUND_REPORT_FIELDS = (
    "q",
    "m",
    "M",
    "d",
    "weil_lo",
    "weil_hi",
    "indep_bound",
    "dep_bound",
    "main_bound",
    "main_flag",
    "dist_bound",
    "max_fiber",
    "fibers_uniform",
)


@dataclass(frozen=True)
class BoundReport:
    """Every numeric bound for one (q, m), next to the measured fiber data
    when a census was run (None otherwise)."""

    q: int
    m: int
    M: int
    d: int
    weil_lo: int
    weil_hi: int
    indep_bound: int
    dep_bound: int
    main_bound: int
    main_flag: bool
    dist_bound: int
    max_fiber: int | None = None
    fibers_uniform: bool | None = None

    def as_record(self) -> dict:
        return {name: getattr(self, name) for name in BOUND_REPORT_FIELDS}

    @property
    def precondition_flags(self) -> dict:
        """Advisory flags for the preconditions the formulas were derived
        under; reported, never enforced."""
        return {
            "q_odd": self.q % 2 == 1,
            "regime": main_bound_applies(self.q, self.m),
            "gcd_m_coprime": math.gcd(self.m, self.q - 1) == 1,
            "gcd_M_coprime": self.d == 1,
        }


def bound_report(q: int, m: int, census: FiberCensus | None = None) -> BoundReport:
    """Assemble the full report; the point-count window is taken at the
    largest relevant degree, M + m."""
    M = vandermonde_degree(m)
    lo, hi = weil_interval(M + m, m, q)
    return BoundReport(
        q=q,
        m=m,
        M=M,
        d=fiber_gcd(q, m),
        weil_lo=lo,
        weil_hi=hi,
        indep_bound=indep_case_bound(q, m),
        dep_bound=dep_case_bound(q, m),
        main_bound=main_bound(q, m),
        main_flag=main_bound_applies(q, m),
        dist_bound=am_code_distance_bound(q, m),
        max_fiber=None if census is None else census.max_fiber,
        fibers_uniform=None if census is None else census.uniform,
    )


@dataclass(frozen=True)
class CodeComparison:
    """Parameters of the three constructions at one (q, m), plus the ratio
    of relative distances (even-orbit over symmetric-orbit, bound-based) and
    the ratio of rates (even-orbit over Reed-Muller at t = m)."""

    q: int
    m: int
    am: "codes_mod.CodeParams"
    dj: "codes_mod.CodeParams"
    grm: "codes_mod.CodeParams"

    @property
    def delta_ratio(self) -> float:
        return self.am.delta / self.dj.delta

    @property
    def rho_ratio(self) -> float:
        return self.am.rho / self.grm.rho


def compare_codes(q: int, m: int) -> CodeComparison:
    """Formula-level comparison row; the even-orbit distance is its lower
    bound (flagged as such), the other two distances are exact."""
    am = codes_mod.CodeParams(
        q=q,
        n=2 * math.comb(q, m),
        k=2 * (m + 1),
        d=am_code_distance_bound(q, m),
        d_is_exact=False,
    )
    dj = codes_mod.CodeParams(
        q=q,
        n=math.comb(q, m),
        k=m + 1,
        d=dj_distance_formula(q, m),
        d_is_exact=True,
    )
    grm = codes_mod.grm_params(q, m, m)
    return CodeComparison(q=q, m=m, am=am, dj=dj, grm=grm)


def compare_trend(m: int, q_list) -> list[CodeComparison]:
    return [compare_codes(q, m) for q in q_list]
