"""Distinguished-point enumeration and permutation-group orbit machinery.

A point of F_q^m is distinguished when its coordinates are pairwise
distinct; there are P(q, m) = C(q, m) * m! of them.  This module enumerates
them in lexicographic index order, computes orbits under arbitrary subgroups
of the symmetric group by closure under generators (the group itself is only
materialized on demand), and emits canonical orbit representatives.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field as dc_field
from itertools import combinations, islice

import numpy as np

from .gf import Field
from .mvpoly import Permutation, alternating_generators, symmetric_generators
from .sym import vandermonde_eval


class TooManyVariables(Exception):
    pass


class NotDistinguished(Exception):
    pass


class GroupTooLarge(Exception):
    pass


DEFAULT_GROUP_CAP = math.factorial(10)


def distinguished_count(q: int, m: int) -> int:
    """P(q, m): the number of m-tuples over GF(q) with pairwise-distinct
    coordinates; 0 when m exceeds q."""
    if m > q:
        return 0
    return math.comb(q, m) * math.factorial(m)


def iterate_distinguished(field: Field, m: int):
    """Yield every distinguished tuple of coordinate indices exactly once,
    in lexicographic order."""
    q = field.order
    if m > q:
        raise TooManyVariables(f"m={m} exceeds field order q={q}")

    prefix = [0] * m
    used = [False] * q

    def rec(depth):
        if depth == m:
            yield tuple(prefix)
            return
        for v in range(q):
            if not used[v]:
                used[v] = True
                prefix[depth] = v
                yield from rec(depth + 1)
                used[v] = False

    yield from rec(0)


def iterate_distinguished_batches(field: Field, m: int, batch_size: int = 65536):
    """Yield (N, m) numpy index arrays covering the distinguished set in
    lexicographic order."""
    it = iterate_distinguished(field, m)
    while True:
        block = list(islice(it, batch_size))
        if not block:
            return
        yield np.array(block, dtype=field.np_dtype)


@dataclass(frozen=True)
class DistinguishedSet:
    """Implicit view of the distinguished points of F_q^m."""

    field: Field
    m: int

    def __post_init__(self):
        if self.m > self.field.order:
            raise TooManyVariables(f"m={self.m} exceeds field order q={self.field.order}")

    @property
    def count(self) -> int:
        return distinguished_count(self.field.order, self.m)

    def __contains__(self, point) -> bool:
        if len(point) != self.m:
            return False
        return vandermonde_eval(self.field, point) != 0

    def __iter__(self):
        return iterate_distinguished(self.field, self.m)


class PermGroup:
    """A subgroup of the symmetric group on m symbols, held by generators.

    The element set is materialized lazily by breadth-first closure and only
    when its size stays within the cap; orbit computations never need it.
    """

    def __init__(self, m: int, generators, cap: int = DEFAULT_GROUP_CAP):
        self.m = m
        self.generators = tuple(generators)
        for g in self.generators:
            if g.m != m:
                raise ValueError(f"generator arity {g.m} != {m}")
        self.cap = cap
        self._elements = None

    def materialize(self) -> frozenset:
        if self._elements is None:
            ident = Permutation.identity(self.m)
            seen = {ident}
            frontier = [ident]
            while frontier:
                nxt = []
                for h in frontier:
                    for g in self.generators:
                        c = g * h
                        if c not in seen:
                            if len(seen) >= self.cap:
                                raise GroupTooLarge(
                                    f"group closure exceeded cap {self.cap}"
                                )
                            seen.add(c)
                            nxt.append(c)
                frontier = nxt
            self._elements = frozenset(seen)
        return self._elements

    @property
    def order(self) -> int:
        return len(self.materialize())

    def __iter__(self):
        return iter(sorted(self.materialize(), key=lambda s: s.images))

    def __contains__(self, sigma: Permutation) -> bool:
        return sigma in self.materialize()

    def __repr__(self):
        return f"PermGroup(m={self.m}, generators={list(self.generators)})"


def subgroup_from_generators(m: int, gens, cap: int = DEFAULT_GROUP_CAP) -> PermGroup:
    return PermGroup(m, gens, cap=cap)


def symmetric_group(m: int) -> PermGroup:
    return PermGroup(m, symmetric_generators(m))


def alternating_group(m: int) -> PermGroup:
    return PermGroup(m, alternating_generators(m))


def trivial_group(m: int) -> PermGroup:
    return PermGroup(m, ())


def is_even(sigma: Permutation) -> bool:
    return sigma.is_even


def _require_distinguished(field: Field, point):
    if vandermonde_eval(field, point) == 0:
        raise NotDistinguished(f"{tuple(point)} has a repeated coordinate")


def orbit_of(point, group: PermGroup, field: Field | None = None) -> set:
    """Orbit of a distinguished point under the group, by closure under the
    generators (the group is never materialized)."""
    point = tuple(point)
    if field is not None:
        _require_distinguished(field, point)
    elif len(set(point)) != len(point):
        raise NotDistinguished(f"{point} has a repeated coordinate")
    seen = {point}
    frontier = [point]
    while frontier:
        nxt = []
        for p in frontier:
            for g in group.generators:
                q = g.apply_to_point(p)
                if q not in seen:
                    seen.add(q)
                    nxt.append(q)
        frontier = nxt
    return seen


def orbit_partition(field: Field, m: int, group: PermGroup) -> list[set]:
    """All orbits of the distinguished set under the group, ordered by their
    lexicographically smallest member."""
    orbits = []
    seen: set = set()
    for p in iterate_distinguished(field, m):
        if p in seen:
            continue
        orb = orbit_of(p, group)
        seen |= orb
        orbits.append(orb)
    return orbits


@dataclass(frozen=True)
class OrbitReps:
    """One representative per orbit, in a deterministic order, plus the
    common orbit size (the action on distinguished points is free, so every
    orbit has exactly |H| elements)."""

    group: PermGroup
    reps: tuple = dc_field(default=())
    orbit_size: int = 0

    def __len__(self):
        return len(self.reps)

    def __iter__(self):
        return iter(self.reps)

    def as_array(self, field: Field) -> np.ndarray:
        return np.array(self.reps, dtype=field.np_dtype)


def am_orbit_reps(field: Field, m: int) -> OrbitReps:
    """Even-permutation orbit representatives: for each m-subset of field
    elements in index order, the sorted tuple and the sorted tuple with its
    last two entries swapped.  The two lie in the two distinct even-orbit
    halves of the full symmetric orbit; the order (subsets ascending,
    unswapped before swapped) pins generator-matrix columns bit-exactly.
    """
    q = field.order
    if m > q:
        raise TooManyVariables(f"m={m} exceeds field order q={q}")
    if m < 2:
        raise ValueError(f"alternating orbit representatives need m >= 2, got {m}")
    reps = []
    for subset in combinations(range(q), m):
        reps.append(subset)
        swapped = subset[: m - 2] + (subset[m - 1], subset[m - 2])
        reps.append(swapped)
    return OrbitReps(
        group=alternating_group(m),
        reps=tuple(reps),
        orbit_size=math.factorial(m) // 2,
    )


def sm_orbit_reps(field: Field, m: int) -> OrbitReps:
    """Full-symmetric-group representatives: the sorted m-subsets."""
    q = field.order
    if m > q:
        raise TooManyVariables(f"m={m} exceeds field order q={q}")
    reps = tuple(combinations(range(q), m))
    return OrbitReps(group=symmetric_group(m), reps=reps, orbit_size=math.factorial(m))


def orbit_reps(field: Field, m: int, group: PermGroup) -> OrbitReps:
    """Generic-subgroup representatives: the lexicographically smallest point
    of each orbit, in lexicographic order."""
    reps = []
    seen: set = set()
    size = None
    for p in iterate_distinguished(field, m):
        if p in seen:
            continue
        orb = orbit_of(p, group)
        if size is None:
            size = len(orb)
        seen |= orb
        reps.append(p)
    return OrbitReps(group=group, reps=tuple(reps), orbit_size=size or 1)


def scalar_class(field: Field, point) -> set:
    """The nonzero scalar multiples {c * P : c != 0} of a distinguished
    point; these classes partition the distinguished set into blocks of
    size q - 1."""
    point = tuple(point)
    _require_distinguished(field, point)
    return {
        tuple(field.mul(c, x) for x in point) for c in range(1, field.order)
    }
