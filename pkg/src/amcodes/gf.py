"""Exact arithmetic in GF(p^e) with a canonical integer encoding of elements.

Elements are encoded as integers in [0, q): the base-p digits of the index
are the coefficients of the element in the polynomial basis (for e = 1 the
index is just the residue).  The encoding is a bijection, sends 0 to 0 and
1 to 1, and induces a total order on the field that the rest of the library
uses whenever a canonical order is needed (orbit representatives, default
modulus selection, deterministic exports).
"""

from __future__ import annotations

import functools
import math

import numpy as np


class FieldError(Exception):
    """Base class for field construction and arithmetic errors."""


class NonPrimeCharacteristic(FieldError):
    pass


class ReducibleModulus(FieldError):
    pass


class DivisionByZero(FieldError):
    pass


class MixedFields(FieldError):
    pass


# Multiplication goes through log/antilog tables up to this order; above it
# every product is reduced schoolbook-style.
LOG_TABLE_LIMIT = 1 << 12

# q x q numpy operation tables (used by the vectorized enumeration kernels)
# are only built for moderate orders; the scalar path has no such limit.
NUMPY_TABLE_LIMIT = 1 << 9


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n < 4:
        return True
    if n % 2 == 0:
        return False
    f = 3
    while f * f <= n:
        if n % f == 0:
            return False
        f += 2
    return True


def prime_factors(n: int) -> list[int]:
    """Distinct prime factors of n, ascending."""
    out = []
    f = 2
    while f * f <= n:
        if n % f == 0:
            out.append(f)
            while n % f == 0:
                n //= f
        f += 1 if f == 2 else 2
    if n > 1:
        out.append(n)
    return out


# ---------------------------------------------------------------------------
# Dense univariate polynomials over GF(p), little-endian coefficient tuples.
# Only what modulus handling needs: trim, divmod, irreducibility by trial
# division against every monic polynomial of degree <= e/2.
# ---------------------------------------------------------------------------

def _poly_trim(c):
    i = len(c)
    while i > 0 and c[i - 1] == 0:
        i -= 1
    return tuple(c[:i])


def _poly_divmod(a, b, p):
    a = list(a)
    db, lb = len(b) - 1, b[-1]
    lb_inv = pow(lb, -1, p)
    quot = [0] * max(len(a) - db, 0)
    for i in range(len(a) - 1, db - 1, -1):
        c = a[i] % p
        if c == 0:
            continue
        f = (c * lb_inv) % p
        quot[i - db] = f
        for j in range(db + 1):
            a[i - db + j] = (a[i - db + j] - f * b[j]) % p
    return _poly_trim(quot), _poly_trim([x % p for x in a])


def _monic_polys(degree, p):
    for idx in range(p**degree):
        digits = []
        v = idx
        for _ in range(degree):
            digits.append(v % p)
            v //= p
        yield tuple(digits) + (1,)


def _poly_is_irreducible(coeffs, p):
    deg = len(coeffs) - 1
    if deg < 1:
        return False
    if coeffs[0] == 0 and deg > 1:
        return False  # divisible by t
    for d in range(1, deg // 2 + 1):
        for cand in _monic_polys(d, p):
            _, rem = _poly_divmod(coeffs, cand, p)
            if not rem:
                return False
    return True


def _default_modulus(p, e):
    # Smallest monic irreducible of degree e under the digit encoding of the
    # non-leading coefficients; deterministic across runs.
    for cand in _monic_polys(e, p):
        if _poly_is_irreducible(cand, p):
            return cand
    raise AssertionError("no irreducible polynomial found")  # cannot happen


class FieldElement:
    """An element of a :class:`Field`, identified by its integer index."""

    __slots__ = ("field", "index")

    def __init__(self, field: "Field", index: int):
        self.field = field
        self.index = index

    def _coerce(self, other):
        if isinstance(other, FieldElement):
            if other.field is not self.field:
                raise MixedFields(
                    f"elements of GF({self.field.order}) and GF({other.field.order}) "
                    "come from different Field instances"
                )
            return other.index
        if isinstance(other, int):
            # canonical ring map Z -> GF(p^e): n maps to n mod p (index n mod p)
            return other % self.field.char
        return NotImplemented

    def __add__(self, other):
        idx = self._coerce(other)
        if idx is NotImplemented:
            return NotImplemented
        return FieldElement(self.field, self.field.add(self.index, idx))

    __radd__ = __add__

    def __sub__(self, other):
        idx = self._coerce(other)
        if idx is NotImplemented:
            return NotImplemented
        return FieldElement(self.field, self.field.sub(self.index, idx))

    def __rsub__(self, other):
        idx = self._coerce(other)
        if idx is NotImplemented:
            return NotImplemented
        return FieldElement(self.field, self.field.sub(idx, self.index))

    def __mul__(self, other):
        idx = self._coerce(other)
        if idx is NotImplemented:
            return NotImplemented
        return FieldElement(self.field, self.field.mul(self.index, idx))

    __rmul__ = __mul__

    def __truediv__(self, other):
        idx = self._coerce(other)
        if idx is NotImplemented:
            return NotImplemented
        return FieldElement(self.field, self.field.mul(self.index, self.field.inv(idx)))

    def __neg__(self):
        return FieldElement(self.field, self.field.neg(self.index))

    def __pow__(self, n: int):
        return FieldElement(self.field, self.field.pow(self.index, n))

    def inverse(self):
        return FieldElement(self.field, self.field.inv(self.index))

    def __bool__(self):
        return self.index != 0

    def __eq__(self, other):
        if isinstance(other, FieldElement):
            return self.field is other.field and self.index == other.index
        if isinstance(other, int) and self.field.degree == 1:
            return self.index == other % self.field.order
        return NotImplemented

    def __hash__(self):
        return hash((id(self.field), self.index))

    def __repr__(self):
        return f"GF({self.field.order}):{self.index}"


class Field:
    """GF(p^e) for a prime p, with a verified-irreducible modulus.

    Immutable after construction; all arithmetic methods are pure and safe
    to call from concurrent workers.  Scalar arithmetic operates on integer
    indices; :class:`FieldElement` wraps an index with operator sugar.
    """

    def __init__(self, p: int, e: int = 1, modulus=None):
        if not is_prime(p):
            raise NonPrimeCharacteristic(f"characteristic {p} is not prime")
        if e < 1:
            raise ValueError(f"extension degree must be >= 1, got {e}")
        self.char = p
        self.degree = e
        self.order = p**e
        if modulus is None:
            modulus = _default_modulus(p, e) if e > 1 else (0, 1)
        else:
            modulus = tuple(c % p for c in modulus)
            if len(modulus) != e + 1 or modulus[-1] != 1:
                raise ValueError(f"modulus must be monic of degree {e}")
            if e > 1 and not _poly_is_irreducible(modulus, p):
                raise ReducibleModulus(f"modulus {modulus} is reducible over GF({p})")
        self.modulus = modulus
        self._log = None
        self._exp = None
        self.xi_index = self._find_primitive()
        if self.order <= LOG_TABLE_LIMIT:
            self._build_log_tables()
        self._np_tables: dict[str, np.ndarray] = {}

    # -- encoding ------------------------------------------------------

    def _digits(self, index):
        p, e = self.char, self.degree
        out = []
        for _ in range(e):
            out.append(index % p)
            index //= p
        return out

    def _pack(self, digits):
        idx = 0
        for c in reversed(digits):
            idx = idx * self.char + c
        return idx

    # -- scalar arithmetic on indices -----------------------------------

    def add(self, a: int, b: int) -> int:
        p = self.char
        if self.degree == 1:
            return (a + b) % p
        da, db = self._digits(a), self._digits(b)
        return self._pack([(x + y) % p for x, y in zip(da, db)])

    def neg(self, a: int) -> int:
        p = self.char
        if self.degree == 1:
            return (-a) % p
        return self._pack([(-x) % p for x in self._digits(a)])

    def sub(self, a: int, b: int) -> int:
        return self.add(a, self.neg(b))

    def _mul_raw(self, a: int, b: int) -> int:
        # Schoolbook product with modular reduction; the bootstrap path used
        # to build the log tables and the fallback above LOG_TABLE_LIMIT.
        p = self.char
        if self.degree == 1:
            return (a * b) % p
        da, db = self._digits(a), self._digits(b)
        prod = [0] * (2 * self.degree - 1)
        for i, x in enumerate(da):
            if x:
                for j, y in enumerate(db):
                    prod[i + j] = (prod[i + j] + x * y) % p
        _, rem = _poly_divmod(_poly_trim(prod), self.modulus, p)
        digits = list(rem) + [0] * (self.degree - len(rem))
        return self._pack(digits)

    def mul(self, a: int, b: int) -> int:
        if a == 0 or b == 0:
            return 0
        if self._log is not None:
            return self._exp[self._log[a] + self._log[b]]
        return self._mul_raw(a, b)

    def inv(self, a: int) -> int:
        if a == 0:
            raise DivisionByZero(f"cannot invert 0 in GF({self.order})")
        if self._log is not None:
            return self._exp[(self.order - 1 - self._log[a]) % (self.order - 1)]
        return self._pow_raw(a, self.order - 2)

    def _pow_raw(self, a: int, n: int) -> int:
        result = 1
        base = a
        while n:
            if n & 1:
                result = self._mul_raw(result, base)
            base = self._mul_raw(base, base)
            n >>= 1
        return result

    def pow(self, a: int, n: int) -> int:
        if n < 0:
            a, n = self.inv(a), -n
        if a == 0:
            return 1 if n == 0 else 0
        n %= self.order - 1 if self.order > 2 else 1
        if self._log is not None:
            return self._exp[(self._log[a] * n) % (self.order - 1)]
        return self._pow_raw(a, n)

    # -- construction helpers --------------------------------------------

    def _element_order(self, a):
        n = self.order - 1
        for r in prime_factors(n):
            if self._pow_raw(a, n // r) == 1:
                return False  # order is a proper divisor of q-1
        return True

    def _find_primitive(self):
        if self.order == 2:
            return 1
        for idx in range(2, self.order):
            if self._element_order(idx):
                return idx
        raise AssertionError("no primitive element found")  # cannot happen

    def _build_log_tables(self):
        q = self.order
        exp = [1] * (2 * max(q - 1, 1))
        log = [0] * q
        acc = 1
        for i in range(q - 1):
            exp[i] = acc
            log[acc] = i
            acc = self._mul_raw(acc, self.xi_index)
        for i in range(q - 1, len(exp)):
            exp[i] = exp[i - (q - 1)]
        self._exp = exp
        self._log = log

    # -- element-level API -------------------------------------------------

    def element(self, index: int) -> FieldElement:
        if not 0 <= index < self.order:
            raise ValueError(f"index {index} out of range for GF({self.order})")
        return FieldElement(self, index)

    @property
    def zero(self) -> FieldElement:
        return FieldElement(self, 0)

    @property
    def one(self) -> FieldElement:
        return FieldElement(self, 1)

    @property
    def xi(self) -> FieldElement:
        """A primitive element (smallest-index generator of the unit group)."""
        return FieldElement(self, self.xi_index)

    def elements(self) -> list[FieldElement]:
        """All q elements in increasing index order, starting at 0, 1."""
        return [FieldElement(self, i) for i in range(self.order)]

    # -- numpy operation tables for the vectorized kernels ------------------

    @property
    def np_dtype(self):
        if self.order <= 0xFF:
            return np.uint8
        if self.order <= 0xFFFF:
            return np.uint16
        return np.uint32

    def _table(self, name, build):
        t = self._np_tables.get(name)
        if t is None:
            if self.order > NUMPY_TABLE_LIMIT:
                raise FieldError(
                    f"operation tables unavailable for q={self.order} > {NUMPY_TABLE_LIMIT}"
                )
            t = build()
            t.setflags(write=False)
            self._np_tables[name] = t
        return t

    def add_table(self) -> np.ndarray:
        def build():
            q, p, e = self.order, self.char, self.degree
            if e == 1:
                grid = np.arange(q, dtype=np.int64)
                return ((grid[:, None] + grid[None, :]) % p).astype(self.np_dtype)
            digits = np.zeros((q, e), dtype=np.int64)
            idx = np.arange(q)
            for i in range(e):
                digits[:, i] = idx % p
                idx = idx // p
            summed = (digits[:, None, :] + digits[None, :, :]) % p
            packed = np.zeros((q, q), dtype=np.int64)
            for i in reversed(range(e)):
                packed = packed * p + summed[:, :, i]
            return packed.astype(self.np_dtype)

        return self._table("add", build)

    def neg_table(self) -> np.ndarray:
        def build():
            return np.array([self.neg(i) for i in range(self.order)], dtype=self.np_dtype)

        return self._table("neg", build)

    def sub_table(self) -> np.ndarray:
        def build():
            return self.add_table()[:, self.neg_table()]

        return self._table("sub", build)

    def mul_table(self) -> np.ndarray:
        def build():
            q = self.order
            logv = np.array(self._log, dtype=np.int64)
            expv = np.array(self._exp, dtype=np.int64)
            t = expv[logv[:, None] + logv[None, :]]
            t[0, :] = 0
            t[:, 0] = 0
            return t.astype(self.np_dtype)

        return self._table("mul", build)

    def inv_table(self) -> np.ndarray:
        """Index-wise inverses; entry 0 is a 0 sentinel (never a valid inverse)."""

        def build():
            q = self.order
            t = np.zeros(q, dtype=self.np_dtype)
            for a in range(1, q):
                t[a] = self.inv(a)
            return t

        return self._table("inv", build)

    def __repr__(self):
        if self.degree == 1:
            return f"Field(GF({self.order}))"
        return f"Field(GF({self.char}^{self.degree}), modulus={self.modulus})"


def field_new(p: int, e: int = 1, modulus=None) -> Field:
    """Construct GF(p^e); synonym for the Field constructor."""
    return Field(p, e, modulus)


@functools.lru_cache(maxsize=None)
def _factor_prime_power(q: int):
    for p in prime_factors(q):
        e = 0
        n = q
        while n % p == 0:
            n //= p
            e += 1
        if n == 1:
            return p, e
        break
    raise NonPrimeCharacteristic(f"{q} is not a prime power")


def field_from_order(q: int, modulus=None) -> Field:
    """Build GF(q) from its order, factoring q = p^e."""
    p, e = _factor_prime_power(q)
    return Field(p, e, modulus)


def parse_field_spec(spec: str, modulus_digits: str | None = None) -> Field:
    """Build a field from a CLI-style spec: "q" or "p^e", plus an optional
    modulus digit string (base-p digits, highest degree first, monic)."""
    spec = spec.strip()
    if "^" in spec:
        p_s, e_s = spec.split("^", 1)
        p, e = int(p_s), int(e_s)
    else:
        p, e = _factor_prime_power(int(spec))
    modulus = None
    if modulus_digits:
        digits = [int(ch) for ch in modulus_digits.strip()]
        modulus = tuple(reversed(digits))
    return Field(p, e, modulus)
