"""Evaluation codes on orbit representatives of distinguished points.

The even-orbit code evaluates the 2(m+1)-dimensional span of the elementary
symmetric polynomials and their Vandermonde multiples on one representative
per even-permutation orbit; the symmetric-orbit code evaluates the (m+1)-
dimensional symmetric span on the sorted subsets.  Generator matrices are
always built by fast tuple evaluation -- no symbolic expansion -- so orders
like q = 13, m = 6 stay cheap.
"""

from __future__ import annotations

import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .gf import Field, FieldElement
from .mvpoly import MultiPoly
from .perm import (
    TooManyVariables,
    am_orbit_reps,
    iterate_distinguished_batches,
    sm_orbit_reps,
)
from .sym import (
    SymCombo,
    elem_sym_poly,
    eval_all_elem_sym,
    eval_all_elem_sym_batch,
    vandermonde_eval,
    vandermonde_eval_batch,
    vandermonde_poly,
)


class EvenQ(Exception):
    pass


class RankDeficient(Exception):
    def __init__(self, measured: int, expected: int):
        self.measured = measured
        self.expected = expected
        super().__init__(f"generator matrix rank {measured} != expected {expected}")


class WrongLength(Exception):
    pass


class NotOrbitMultiple(Exception):
    pass


class DegreeOutOfRange(Exception):
    pass


DEFAULT_DISTANCE_BUDGET = 10**8


@dataclass(frozen=True)
class CodeParams:
    """[n, k, d]_q parameters; ``d_is_exact`` distinguishes a proven-exact
    distance from a lower bound."""

    q: int
    n: int
    k: int
    d: int
    d_is_exact: bool = True

    @property
    def delta(self) -> float:
        return self.d / self.n

    @property
    def rho(self) -> float:
        return self.k / self.n


# ---------------------------------------------------------------------------
# Field linear algebra on index matrices.
# ---------------------------------------------------------------------------


def gf_matvec(field: Field, A: np.ndarray, B: np.ndarray) -> np.ndarray:
    """(N, k) x (k, n) matrix product over the field, via operation tables."""
    add, mul = field.add_table(), field.mul_table()
    out = np.zeros((A.shape[0], B.shape[1]), dtype=field.np_dtype)
    for i in range(A.shape[1]):
        out = add[out, mul[A[:, i][:, None], B[i][None, :]]]
    return out


def matrix_rank(field: Field, M: np.ndarray) -> int:
    """Rank over the field by Gaussian elimination."""
    A = np.array(M, dtype=field.np_dtype, copy=True)
    sub, mul, inv = field.sub_table(), field.mul_table(), field.inv_table()
    k, n = A.shape
    r = 0
    for c in range(n):
        if r == k:
            break
        nz = np.flatnonzero(A[r:, c])
        if nz.size == 0:
            continue
        piv = r + nz[0]
        if piv != r:
            A[[r, piv]] = A[[piv, r]]
        A[r] = mul[inv[A[r, c]], A[r]]
        rows = np.flatnonzero(A[r + 1 :, c])
        if rows.size:
            factors = A[r + 1 + rows, c]
            A[r + 1 + rows] = sub[A[r + 1 + rows], mul[factors[:, None], A[r][None, :]]]
        r += 1
    return r


def combo_values(field: Field, coeffs, esp: np.ndarray) -> np.ndarray:
    """Values of sum(a_i sigma^i) given precomputed elementary symmetric
    values, one (m+1)-row per point."""
    add, mul = field.add_table(), field.mul_table()
    out = np.zeros(esp.shape[0], dtype=field.np_dtype)
    for i, c in enumerate(coeffs):
        if c:
            out = add[out, mul[c, esp[:, i]]]
    return out


# ---------------------------------------------------------------------------
# Message space and code construction.
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class MessageSpace:
    """Ordered basis sigma^0..sigma^m, then (if alternating) v*sigma^0..
    v*sigma^m.  ``strategy`` picks between the fast tuple path and symbolic
    expansion; both must agree and the tests hold them to that."""

    field: Field
    m: int
    alternating: bool = True
    strategy: str = "fast"

    @property
    def size(self) -> int:
        return 2 * (self.m + 1) if self.alternating else self.m + 1

    def symbolic_basis(self) -> list[MultiPoly]:
        sigmas = [elem_sym_poly(self.field, self.m, i) for i in range(self.m + 1)]
        if not self.alternating:
            return sigmas
        v = vandermonde_poly(self.field, self.m)
        return sigmas + [v * s for s in sigmas]

    def eval_basis_at(self, point) -> list[int]:
        esp = eval_all_elem_sym(self.field, point)
        if not self.alternating:
            return list(esp)
        v = vandermonde_eval(self.field, point)
        return list(esp) + [self.field.mul(v, s) for s in esp]

    def eval_basis_matrix(self, points: np.ndarray) -> np.ndarray:
        """(size, N) matrix of basis values on N points."""
        if self.strategy == "symbolic":
            basis = self.symbolic_basis()
            rows = [
                [p.evaluate(tuple(pt)).index for pt in points] for p in basis
            ]
            return np.array(rows, dtype=self.field.np_dtype)
        esp = eval_all_elem_sym_batch(self.field, points)
        if not self.alternating:
            return esp.T.copy()
        v = vandermonde_eval_batch(self.field, points)
        mul = self.field.mul_table()
        extra = mul[v[:, None], esp]
        return np.concatenate([esp.T, extra.T], axis=0).copy()


@dataclass(frozen=True, eq=False)
class EvalCode:
    """A linear code given by its evaluation points and generator matrix."""

    field: Field
    m: int
    kind: str
    points: tuple
    G: np.ndarray
    advisories: dict

    @property
    def n(self) -> int:
        return self.G.shape[1]

    @property
    def k(self) -> int:
        return self.G.shape[0]

    def encode(self, message) -> np.ndarray:
        """message . G as a length-n vector of coefficient indices."""
        msg = [c.index if isinstance(c, FieldElement) else int(c) for c in message]
        if len(msg) != self.k:
            raise WrongLength(f"message length {len(msg)} != k={self.k}")
        A = np.array([msg], dtype=self.field.np_dtype)
        return gf_matvec(self.field, A, self.G)[0]


def _build_code(field: Field, m: int, kind: str) -> EvalCode:
    if kind == "am":
        if field.order % 2 == 0:
            raise EvenQ("q must be odd")
        reps = am_orbit_reps(field, m)
        space = MessageSpace(field, m, alternating=True)
    elif kind == "dj":
        reps = sm_orbit_reps(field, m)
        space = MessageSpace(field, m, alternating=False)
    else:
        raise ValueError(f"unknown code kind {kind!r}")
    pts = reps.as_array(field)
    G = space.eval_basis_matrix(pts)
    rank = matrix_rank(field, G)
    if rank != space.size:
        raise RankDeficient(rank, space.size)
    q = field.order
    advisories = {
        "gcd_m": math.gcd(m, q - 1),
        "gcd_M": math.gcd(math.comb(m, 2), q - 1),
    }
    return EvalCode(
        field=field, m=m, kind=kind, points=reps.reps, G=G, advisories=advisories
    )


def build_am_code(field: Field, m: int) -> EvalCode:
    """The even-orbit code: n = 2 C(q, m), k = 2(m+1), q odd.  The rank is
    measured, and a shortfall raises RankDeficient rather than being
    silently accepted."""
    return _build_code(field, m, "am")


def build_dj_code(field: Field, m: int) -> EvalCode:
    """The symmetric-orbit code: n = C(q, m), k = m+1."""
    return _build_code(field, m, "dj")


def grm_params(q: int, m: int, t: int) -> CodeParams:
    """Parameters [q^m, C(m+t, m), (1 - t/q) q^m] of the order-t Reed-Muller
    code on all of GF(q)^m; exact per the classical result."""
    if not 0 <= t < q:
        raise DegreeOutOfRange(f"order t={t} outside 0..q-1={q - 1}")
    return CodeParams(
        q=q,
        n=q**m,
        k=math.comb(m + t, m),
        d=(q - t) * q ** (m - 1),
        d_is_exact=True,
    )


def encode(code: EvalCode, message) -> np.ndarray:
    return code.encode(message)


def codeword_weight(code: EvalCode, message) -> int:
    return int(np.count_nonzero(code.encode(message)))


def weight_from_zeros(n: int, m: int, z_distinguished: int) -> int:
    """Weight of an invariant codeword from its distinguished zero count:
    n - 2 z / m!.  The count must be a whole number of half-orbits."""
    half_orbit = math.factorial(m) // 2
    if z_distinguished % half_orbit:
        raise NotOrbitMultiple(
            f"{z_distinguished} is not a multiple of m!/2 = {half_orbit}"
        )
    return n - z_distinguished // half_orbit


def dzero_count(
    field: Field, m: int, s1: SymCombo, s2: SymCombo, mode: str = "exhaustive"
) -> int:
    """|Z_D| of F = s1 * v + s2: the number of distinguished points where F
    vanishes.  ``exhaustive`` scans all P(q, m) points; ``via_reps`` scans
    one representative per even orbit and multiplies by m!/2 (valid because
    F is constant on even orbits)."""
    if field.order % 2 == 0:
        raise EvenQ("q must be odd")
    if m > field.order:
        raise TooManyVariables(f"m={m} exceeds field order q={field.order}")
    if mode == "via_reps":
        pts = am_orbit_reps(field, m).as_array(field)
        zero = int(np.count_nonzero(eval_pair_batch(field, s1, s2, pts) == 0))
        return zero * (math.factorial(m) // 2)
    if mode != "exhaustive":
        raise ValueError(f"unknown mode {mode!r}")
    total = 0
    for pts in iterate_distinguished_batches(field, m):
        total += int(np.count_nonzero(eval_pair_batch(field, s1, s2, pts) == 0))
    return total


def eval_pair_batch(
    field: Field, s1: SymCombo, s2: SymCombo, pts: np.ndarray
) -> np.ndarray:
    """Values of s1 * v + s2 on a batch of points, by the fast tuple path."""
    esp = eval_all_elem_sym_batch(field, pts)
    v = vandermonde_eval_batch(field, pts)
    add, mul = field.add_table(), field.mul_table()
    return add[mul[combo_values(field, s1.coeffs, esp), v], combo_values(field, s2.coeffs, esp)]


# ---------------------------------------------------------------------------
# Projective message enumeration and minimum distance.
# ---------------------------------------------------------------------------


def projective_class_count(q: int, k: int) -> int:
    return (q**k - 1) // (q - 1)


def _stratum_offsets(q: int, k: int) -> list[int]:
    # stratum t: first nonzero coordinate at position t, so q^(k-1-t) classes
    offsets = [0]
    for t in range(k):
        offsets.append(offsets[-1] + q ** (k - 1 - t))
    return offsets


def messages_from_class_indices(q: int, k: int, indices: np.ndarray, dtype) -> np.ndarray:
    """Decode projective class indices into canonical messages (first
    nonzero coordinate normalized to 1, remaining digits base-q, most
    significant first)."""
    offsets = _stratum_offsets(q, k)
    out = np.zeros((len(indices), k), dtype=dtype)
    strata = np.searchsorted(offsets, indices, side="right") - 1
    for t in np.unique(strata):
        sel = np.flatnonzero(strata == t)
        local = indices[sel] - offsets[t]
        out[sel, t] = 1
        free = k - 1 - t
        if free:
            weights = q ** np.arange(free - 1, -1, -1, dtype=np.int64)
            out[sel, t + 1 :] = ((local[:, None] // weights[None, :]) % q).astype(dtype)
    return out


def projective_message_chunks(q: int, k: int, dtype, chunk: int = 65536, indices=None):
    """Yield (class_indices, messages) blocks over all projective classes,
    or over a given sorted index subset, in index order."""
    if indices is None:
        total = projective_class_count(q, k)
        starts = range(0, total, chunk)
        blocks = (np.arange(s, min(s + chunk, total), dtype=np.int64) for s in starts)
    else:
        indices = np.asarray(indices, dtype=np.int64)
        blocks = (indices[s : s + chunk] for s in range(0, len(indices), chunk))
    for idx in blocks:
        yield idx, messages_from_class_indices(q, k, idx, dtype)


def min_distance(code: EvalCode, budget: int = DEFAULT_DISTANCE_BUDGET) -> CodeParams:
    """Exact minimum distance by scanning one message per scalar class
    (weights are scale-invariant), or the standing lower bound when the scan
    would exceed the budget (flagged, not an error)."""
    q = code.field.order
    classes = projective_class_count(q, code.k)
    if classes * code.n > budget:
        from . import bounds

        if code.kind == "am":
            d = bounds.am_code_distance_bound(q, code.m)
        elif code.kind == "dj":
            d = bounds.dj_distance_formula(q, code.m)
        else:
            d = 1
        return CodeParams(q=q, n=code.n, k=code.k, d=d, d_is_exact=False)

    best = code.n
    for _, msgs in projective_message_chunks(q, code.k, code.field.np_dtype):
        words = gf_matvec(code.field, msgs, code.G)
        w = int((words != 0).sum(axis=1).min())
        best = min(best, w)
    return CodeParams(q=q, n=code.n, k=code.k, d=best, d_is_exact=True)


# ---------------------------------------------------------------------------
# Dependent-family scan: weights of (v + lambda) * s1 over every projective
# combination class and every nonzero lambda.
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class DepFamilyResult:
    min_weight: int
    bound: int
    at_class: int
    at_lambda: int
    classes_scanned: int
    exhaustive: bool

    @property
    def ok(self) -> bool:
        return self.min_weight >= self.bound


@lru_cache(maxsize=8)
def _cached_field(p: int, e: int, modulus: tuple) -> Field:
    return Field(p, e, modulus)


def _dep_chunk_worker(payload):
    (p, e, modulus, E_bytes, E_shape, V_bytes, idx_bytes, n) = payload
    field = _cached_field(p, e, modulus)
    E = np.frombuffer(E_bytes, dtype=field.np_dtype).reshape(E_shape)
    V = np.frombuffer(V_bytes, dtype=field.np_dtype)
    indices = np.frombuffer(idx_bytes, dtype=np.int64)
    return _dep_chunk_scan(field, E, V, indices, n)


def _dep_chunk_scan(field: Field, E: np.ndarray, V: np.ndarray, indices, n: int):
    """Scan one block of combination classes; return (min weight, class
    index, lambda index) with ties broken by class then lambda order."""
    q = field.order
    neg = field.neg_table()
    cols = [np.flatnonzero(V == neg[lam]) for lam in range(1, q)]
    _, msgs = next(projective_message_chunks(q, E.shape[0], field.np_dtype,
                                             chunk=len(indices), indices=indices))
    values = gf_matvec(field, msgs, E)
    nonzero = values != 0
    total_nz = nonzero.sum(axis=1).astype(np.int64)
    weights = np.empty((len(indices), q - 1), dtype=np.int64)
    for li, c in enumerate(cols):
        hit = nonzero[:, c].sum(axis=1) if c.size else 0
        weights[:, li] = total_nz - hit
    flat = int(np.argmin(weights))
    row, lam = divmod(flat, q - 1)
    return int(weights[row, lam]), int(indices[row]), lam + 1


def dependent_family_scan(
    field: Field,
    m: int,
    samples: int | None = None,
    seed: int = 0,
    jobs: int = 1,
    chunk: int = 65536,
) -> DepFamilyResult:
    """Minimum weight over the dependent codeword family (v + lambda) s1,
    lambda != 0, s1 over nonzero projective combination classes.

    The weight of (v + lambda) s1 on the representatives needs no per-pair
    evaluation: a coordinate vanishes iff s1 does or v hits -lambda, so one
    matrix product per class block settles all q-1 lambdas at once.  With
    ``samples`` set, a seeded uniform subset of classes is scanned instead
    of all of them.  Work is split into fixed blocks and reduced in block
    order, so results do not depend on ``jobs``.
    """
    if field.order % 2 == 0:
        raise EvenQ("q must be odd")
    from . import bounds

    q = field.order
    reps = am_orbit_reps(field, m).as_array(field)
    E = eval_all_elem_sym_batch(field, reps).T.copy()
    V = vandermonde_eval_batch(field, reps)
    n = reps.shape[0]
    total = projective_class_count(q, m + 1)
    if samples is not None and samples < total:
        rng = np.random.default_rng(seed)
        indices = np.sort(rng.choice(total, size=samples, replace=False))
        exhaustive = False
    else:
        indices = np.arange(total, dtype=np.int64)
        exhaustive = True

    blocks = [indices[s : s + chunk] for s in range(0, len(indices), chunk)]
    if jobs > 1 and len(blocks) > 1:
        payloads = [
            (
                field.char,
                field.degree,
                field.modulus,
                E.tobytes(),
                E.shape,
                V.tobytes(),
                blk.astype(np.int64).tobytes(),
                n,
            )
            for blk in blocks
        ]
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            results = list(pool.map(_dep_chunk_worker, payloads))
    else:
        results = [_dep_chunk_scan(field, E, V, blk, n) for blk in blocks]

    best = (n + 1, -1, -1)
    for w, cls, lam in results:  # block order: deterministic reduction
        if w < best[0]:
            best = (w, cls, lam)
    return DepFamilyResult(
        min_weight=best[0],
        bound=bounds.am_code_distance_bound(q, m),
        at_class=best[1],
        at_lambda=best[2],
        classes_scanned=len(indices),
        exhaustive=exhaustive,
    )


def generator_matrix_csv(code: EvalCode) -> str:
    """Deterministic CSV export: a metadata header then the matrix rows as
    coefficient indices."""
    lines = ["q,m,kind,n,k", f"{code.field.order},{code.m},{code.kind},{code.n},{code.k}"]
    for row in code.G:
        lines.append(",".join(str(int(x)) for x in row))
    return "\n".join(lines) + "\n"
