"""Sparse multivariate polynomials over a finite field, plus the action of
variable permutations.

Polynomials are stored as a mapping from exponent vectors (length-m tuples)
to nonzero coefficient indices; values are immutable after construction and
all operations are pure, so concurrent reads are safe.  Exact division uses
graded-lexicographic leading terms and only accepts zero remainders.
"""

from __future__ import annotations

from .gf import Field, FieldElement


class MixedContexts(Exception):
    pass


class WrongArity(Exception):
    pass


class NotDivisible(Exception):
    pass


class DivisionByZeroPoly(Exception):
    pass


class Permutation:
    """A bijection of {1..m}, given by the tuple of images of 1..m."""

    __slots__ = ("images", "_even")

    def __init__(self, images):
        images = tuple(int(i) for i in images)
        if sorted(images) != list(range(1, len(images) + 1)):
            raise ValueError(f"{images} is not a permutation of 1..{len(images)}")
        self.images = images
        self._even = None

    @property
    def m(self) -> int:
        return len(self.images)

    @classmethod
    def identity(cls, m: int) -> "Permutation":
        return cls(range(1, m + 1))

    @classmethod
    def transposition(cls, m: int, i: int, j: int) -> "Permutation":
        images = list(range(1, m + 1))
        images[i - 1], images[j - 1] = j, i
        return cls(images)

    @classmethod
    def cycle(cls, m: int, *points: int) -> "Permutation":
        images = list(range(1, m + 1))
        for a, b in zip(points, points[1:] + points[:1]):
            images[a - 1] = b
        return cls(images)

    def __call__(self, i: int) -> int:
        return self.images[i - 1]

    def inverse(self) -> "Permutation":
        inv = [0] * self.m
        for i, img in enumerate(self.images, start=1):
            inv[img - 1] = i
        return Permutation(inv)

    def __mul__(self, other: "Permutation") -> "Permutation":
        """Composition (self * other)(i) = self(other(i))."""
        if self.m != other.m:
            raise WrongArity("cannot compose permutations of different arity")
        return Permutation(tuple(self.images[j - 1] for j in other.images))

    @property
    def is_even(self) -> bool:
        if self._even is None:
            inversions = 0
            imgs = self.images
            for i in range(len(imgs)):
                for j in range(i + 1, len(imgs)):
                    if imgs[i] > imgs[j]:
                        inversions += 1
            self._even = inversions % 2 == 0
        return self._even

    def apply_to_point(self, point: tuple) -> tuple:
        """The point action sigma . P = (P_sigma(1), ..., P_sigma(m))."""
        if len(point) != self.m:
            raise WrongArity(f"point arity {len(point)} != {self.m}")
        return tuple(point[img - 1] for img in self.images)

    def __eq__(self, other):
        return isinstance(other, Permutation) and self.images == other.images

    def __hash__(self):
        return hash(self.images)

    def __repr__(self):
        return f"Permutation{self.images}"


def symmetric_generators(m: int) -> list[Permutation]:
    """Generators of the full symmetric group on m symbols."""
    if m < 2:
        return []
    gens = [Permutation.transposition(m, 1, 2)]
    if m > 2:
        gens.append(Permutation.cycle(m, *range(1, m + 1)))
    return gens


def alternating_generators(m: int) -> list[Permutation]:
    """Generators of the even-permutation subgroup: the 3-cycles (1 2 k)."""
    return [Permutation.cycle(m, 1, 2, k) for k in range(3, m + 1)]


def _grlex_key(exps):
    return (sum(exps), exps)


class MultiPoly:
    """Sparse polynomial in m variables over a Field.

    ``terms`` maps exponent tuples to nonzero coefficient indices.  Treat
    instances as immutable.
    """

    __slots__ = ("field", "m", "terms")

    def __init__(self, field: Field, m: int, terms: dict):
        self.field = field
        self.m = m
        self.terms = {e: c for e, c in terms.items() if c != 0}

    # -- constructors ----------------------------------------------------

    @classmethod
    def zero(cls, field, m):
        return cls(field, m, {})

    @classmethod
    def constant(cls, field, m, c):
        c = c.index if isinstance(c, FieldElement) else int(c)
        return cls(field, m, {(0,) * m: c})

    @classmethod
    def one(cls, field, m):
        return cls.constant(field, m, 1)

    @classmethod
    def variable(cls, field, m, i):
        if not 1 <= i <= m:
            raise WrongArity(f"variable index {i} out of range 1..{m}")
        e = [0] * m
        e[i - 1] = 1
        return cls(field, m, {tuple(e): 1})

    @classmethod
    def monomial(cls, field, m, exps, c=1):
        if len(exps) != m:
            raise WrongArity(f"exponent vector length {len(exps)} != {m}")
        c = c.index if isinstance(c, FieldElement) else int(c)
        return cls(field, m, {tuple(exps): c})

    # -- helpers ---------------------------------------------------------

    def _check_context(self, other):
        if self.field is not other.field or self.m != other.m:
            raise MixedContexts("operands live in different polynomial rings")

    @property
    def is_zero(self) -> bool:
        return not self.terms

    def total_degree(self) -> int:
        """Max exponent sum; -1 for the zero polynomial."""
        if not self.terms:
            return -1
        return max(sum(e) for e in self.terms)

    def leading_term(self):
        """(exponents, coefficient) of the graded-lex largest term."""
        e = max(self.terms, key=_grlex_key)
        return e, self.terms[e]

    def coefficient(self, exps) -> int:
        return self.terms.get(tuple(exps), 0)

    # -- ring arithmetic ---------------------------------------------------

    def __add__(self, other):
        if not isinstance(other, MultiPoly):
            return NotImplemented
        self._check_context(other)
        f = self.field
        out = dict(self.terms)
        for e, c in other.terms.items():
            s = f.add(out.get(e, 0), c)
            if s:
                out[e] = s
            else:
                out.pop(e, None)
        return MultiPoly(f, self.m, out)

    def __neg__(self):
        f = self.field
        return MultiPoly(f, self.m, {e: f.neg(c) for e, c in self.terms.items()})

    def __sub__(self, other):
        if not isinstance(other, MultiPoly):
            return NotImplemented
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, (FieldElement, int)):
            return self.scale(other)
        if not isinstance(other, MultiPoly):
            return NotImplemented
        self._check_context(other)
        f = self.field
        out: dict = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                s = f.add(out.get(e, 0), f.mul(c1, c2))
                if s:
                    out[e] = s
                else:
                    out.pop(e, None)
        return MultiPoly(f, self.m, out)

    __rmul__ = __mul__

    def scale(self, c) -> "MultiPoly":
        f = self.field
        if isinstance(c, FieldElement):
            if c.field is not f:
                raise MixedContexts("scalar from a different field")
            c = c.index
        else:
            c = int(c) % f.char
        if c == 0:
            return MultiPoly.zero(f, self.m)
        return MultiPoly(f, self.m, {e: f.mul(c, v) for e, v in self.terms.items()})

    def __pow__(self, n: int):
        if n < 0:
            raise ValueError("negative polynomial powers are not defined")
        result = MultiPoly.one(self.field, self.m)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def __eq__(self, other):
        if not isinstance(other, MultiPoly):
            return NotImplemented
        return self.field is other.field and self.m == other.m and self.terms == other.terms

    def __hash__(self):
        return hash((id(self.field), self.m, frozenset(self.terms.items())))

    # -- evaluation and variable actions -----------------------------------

    def evaluate(self, point) -> FieldElement:
        """Evaluate at a length-m point of field elements (or raw indices)."""
        if len(point) != self.m:
            raise WrongArity(f"point arity {len(point)} != {self.m}")
        xs = [p.index if isinstance(p, FieldElement) else int(p) for p in point]
        return FieldElement(self.field, _eval_terms(self.field, self.terms, xs))

    def apply_permutation(self, sigma: Permutation) -> "MultiPoly":
        """sigma(f) = f(x_sigma(1), ..., x_sigma(m)): a left action, so
        sigma(tau(f)) = (sigma * tau)(f)."""
        if sigma.m != self.m:
            raise WrongArity(f"permutation arity {sigma.m} != {self.m}")
        imgs = sigma.images
        out = {}
        for e, c in self.terms.items():
            ne = [0] * self.m
            for i in range(self.m):
                ne[imgs[i] - 1] = e[i]
            out[tuple(ne)] = c
        return MultiPoly(self.field, self.m, out)

    # -- text format for CLI I/O -------------------------------------------

    def to_text(self) -> str:
        """Render as `c*x1^a1*...*xm^am` terms joined by " + "; zero
        exponents are omitted and the zero polynomial renders as "0"."""
        if not self.terms:
            return "0"
        parts = []
        for e in sorted(self.terms, key=_grlex_key, reverse=True):
            factors = [str(self.terms[e])]
            factors += [f"x{i + 1}^{k}" for i, k in enumerate(e) if k]
            parts.append("*".join(factors))
        return " + ".join(parts)

    @classmethod
    def from_text(cls, field: Field, m: int, text: str) -> "MultiPoly":
        text = text.strip()
        if text in ("", "0"):
            return cls.zero(field, m)
        out: dict = {}
        for raw in text.split("+"):
            factors = raw.strip().split("*")
            coeff = None
            exps = [0] * m
            for fac in factors:
                fac = fac.strip()
                if fac.startswith("x"):
                    if "^" in fac:
                        var_s, exp_s = fac[1:].split("^", 1)
                        var, exp = int(var_s), int(exp_s)
                    else:
                        var, exp = int(fac[1:]), 1
                    if not 1 <= var <= m:
                        raise WrongArity(f"variable x{var} out of range 1..{m}")
                    exps[var - 1] += exp
                else:
                    c = int(fac)
                    if not 0 <= c < field.order:
                        raise ValueError(f"coefficient index {c} out of range")
                    coeff = c if coeff is None else field.mul(coeff, c)
            c = 1 if coeff is None else coeff
            e = tuple(exps)
            s = field.add(out.get(e, 0), c)
            if s:
                out[e] = s
            else:
                out.pop(e, None)
        return cls(field, m, out)

    def __repr__(self):
        return f"MultiPoly(GF({self.field.order}), m={self.m}, {self.to_text()})"


def _eval_terms(field: Field, terms: dict, xs: list) -> int:
    """Horner-style evaluation: peel variables one at a time, running Horner
    on the exponent of the current variable."""
    if not terms:
        return 0
    if not xs:
        return next(iter(terms.values()))

    x = xs[0]
    by_exp: dict[int, dict] = {}
    for e, c in terms.items():
        by_exp.setdefault(e[0], {})[e[1:]] = c
    acc = 0
    for k in range(max(by_exp), -1, -1):
        acc = field.mul(acc, x)
        sub = by_exp.get(k)
        if sub:
            acc = field.add(acc, _eval_terms(field, sub, xs[1:]))
    return acc


def evaluate(a: MultiPoly, point) -> FieldElement:
    return a.evaluate(point)


def apply_permutation(a: MultiPoly, sigma: Permutation) -> MultiPoly:
    return a.apply_permutation(sigma)


def is_invariant(a: MultiPoly, generators) -> bool:
    """True iff a is fixed by every generator (hence by the generated group)."""
    return all(a.apply_permutation(g) == a for g in generators)


def exact_divide(a: MultiPoly, b: MultiPoly) -> MultiPoly:
    """Quotient a / b when b divides a exactly; NotDivisible otherwise.

    Single-divisor multivariate division with graded-lex leading terms.  If
    at any step the leading term of the remainder is not divisible by the
    leading term of b, no exact quotient exists and we abort early.
    """
    a._check_context(b)
    if b.is_zero:
        raise DivisionByZeroPoly("division by the zero polynomial")
    f = a.field
    eb, cb = b.leading_term()
    cb_inv = f.inv(cb)
    rem = dict(a.terms)
    quot: dict = {}
    while rem:
        er = max(rem, key=_grlex_key)
        diff = tuple(x - y for x, y in zip(er, eb))
        if any(d < 0 for d in diff):
            raise NotDivisible(f"{b.to_text()} does not divide {a.to_text()}")
        c = f.mul(rem[er], cb_inv)
        quot[diff] = c
        for e2, c2 in b.terms.items():
            e = tuple(x + y for x, y in zip(diff, e2))
            s = f.sub(rem.get(e, 0), f.mul(c, c2))
            if s:
                rem[e] = s
            else:
                rem.pop(e, None)
    return MultiPoly(f, a.m, quot)
