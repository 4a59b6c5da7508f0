"""Arithmetic in finite fields GF(p^k).

Elements are coefficient vectors modulo a fixed monic irreducible
polynomial (lowest degree first).  Every supported field is small (order
capped at 256), so each spec lazily builds full addition, multiplication
and inverse tables; element operations are then single table lookups.

Specs and elements are immutable and safe to share across threads.
"""

from __future__ import annotations

import functools

MAX_FIELD_ORDER = 256


class NotAUnit(ArithmeticError):
    """Raised when inverting an element that has no multiplicative inverse."""


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    d = 2
    while d * d <= n:
        if n % d == 0:
            return False
        d += 1
    return True


# ---------------------------------------------------------------------------
# Polynomial helpers over GF(p).  Coefficient tuples, lowest degree first.
# Used only for modulus search and table construction.
# ---------------------------------------------------------------------------

def _poly_trim(c: tuple[int, ...]) -> tuple[int, ...]:
    i = len(c)
    while i > 0 and c[i - 1] == 0:
        i -= 1
    return c[:i]


def _poly_mul(p: int, a: tuple[int, ...], b: tuple[int, ...]) -> tuple[int, ...]:
    if not a or not b:
        return ()
    out = [0] * (len(a) + len(b) - 1)
    for i, ai in enumerate(a):
        if ai:
            for j, bj in enumerate(b):
                out[i + j] = (out[i + j] + ai * bj) % p
    return _poly_trim(tuple(out))


def _poly_mod(p: int, a: tuple[int, ...], m: tuple[int, ...]) -> tuple[int, ...]:
    """Remainder of a modulo the monic polynomial m."""
    a = list(_poly_trim(a))
    deg_m = len(m) - 1
    while len(a) - 1 >= deg_m and a:
        lead = a[-1]
        shift = len(a) - 1 - deg_m
        for i, mi in enumerate(m):
            a[shift + i] = (a[shift + i] - lead * mi) % p
        while a and a[-1] == 0:
            a.pop()
    return tuple(a)


def _poly_is_irreducible(p: int, m: tuple[int, ...]) -> bool:
    """Exhaustive trial division; adequate for the small degrees in scope."""
    k = len(m) - 1
    if k < 1:
        return False
    if k == 1:
        return True
    for deg in range(1, k // 2 + 1):
        for enc in range(p ** deg):
            low = []
            e = enc
            for _ in range(deg):
                low.append(e % p)
                e //= p
            divisor = tuple(low) + (1,)
            if not _poly_mod(p, m, divisor):
                return False
    return True


@functools.lru_cache(maxsize=None)
def _default_modulus(p: int, k: int) -> tuple[int, ...]:
    """Smallest monic irreducible of degree k over GF(p).

    "Smallest" orders the lower coefficients by their base-p integer
    encoding (constant coefficient least significant), matching element
    enumeration order, so the choice is reproducible.
    """
    if k == 1:
        return (0, 1)
    for enc in range(p ** k):
        low = []
        e = enc
        for _ in range(k):
            low.append(e % p)
            e //= p
        m = tuple(low) + (1,)
        if _poly_is_irreducible(p, m):
            return m
    raise AssertionError(f"no irreducible polynomial of degree {k} over GF({p})")


class FieldSpec:
    """A finite field GF(p^k) with a fixed monic irreducible modulus.

    Equality and hashing are on (p, k, modulus).  Operation tables are
    built on first arithmetic use and shared by all elements.
    """

    __slots__ = ("p", "k", "modulus", "q", "_add", "_mul", "_neg", "_inv")

    def __init__(self, p: int, k: int = 1, modulus: tuple[int, ...] | None = None):
        if not is_prime(p):
            raise ValueError(f"characteristic {p} is not prime")
        if k < 1:
            raise ValueError("extension degree must be at least 1")
        q = p ** k
        if q > MAX_FIELD_ORDER:
            raise ValueError(f"field order {q} exceeds cap {MAX_FIELD_ORDER}")
        if modulus is None:
            modulus = _default_modulus(p, k)
        else:
            modulus = tuple(int(c) % p for c in modulus)
            if len(modulus) != k + 1 or modulus[-1] != 1:
                raise ValueError("modulus must be monic of degree k")
            if not _poly_is_irreducible(p, modulus):
                raise ValueError("modulus is reducible over GF(p)")
        self.p = p
        self.k = k
        self.q = q
        self.modulus = modulus
        self._add = None
        self._mul = None
        self._neg = None
        self._inv = None

    def __eq__(self, other):
        return (
            isinstance(other, FieldSpec)
            and (self.p, self.k, self.modulus) == (other.p, other.k, other.modulus)
        )

    def __hash__(self):
        return hash((self.p, self.k, self.modulus))

    def __repr__(self):
        return f"GF({self.q})"

    # -- index <-> coefficient encoding ------------------------------------

    def decode(self, val: int) -> tuple[int, ...]:
        """Coefficient vector (length k) of the element with this index."""
        out = []
        for _ in range(self.k):
            out.append(val % self.p)
            val //= self.p
        return tuple(out)

    def encode(self, coeffs) -> int:
        val = 0
        for c in reversed(tuple(coeffs)):
            val = val * self.p + c % self.p
        return val

    # -- tables -------------------------------------------------------------

    def _ensure_tables(self):
        if self._mul is not None:
            return
        p, q = self.p, self.q
        add = [0] * (q * q)
        mul = [0] * (q * q)
        neg = [0] * q
        polys = [self.decode(v) for v in range(q)]
        for a in range(q):
            pa = polys[a]
            neg[a] = self.encode(tuple(-c % p for c in pa))
            for b in range(a, q):
                pb = polys[b]
                s = self.encode(tuple((x + y) % p for x, y in zip(pa, pb)))
                add[a * q + b] = s
                add[b * q + a] = s
                m = self.encode(_poly_mod(p, _poly_mul(p, pa, pb), self.modulus))
                mul[a * q + b] = m
                mul[b * q + a] = m
        inv = [0] * q
        for a in range(1, q):
            row = mul[a * q : a * q + q]
            inv[a] = row.index(1)
        self._add, self._mul, self._neg, self._inv = add, mul, neg, inv

    def index_add(self, i: int, j: int) -> int:
        """Addition on element indices (used by graph builders)."""
        self._ensure_tables()
        return self._add[i * self.q + j]

    # -- element constructors ------------------------------------------------

    def make(self, coeffs) -> FieldElem:
        """Canonical element from an arbitrary coefficient list.

        Input coefficients are reduced mod p; polynomials of degree >= k
        are reduced modulo the field modulus.
        """
        coeffs = tuple(int(c) % self.p for c in coeffs)
        if len(coeffs) > self.k:
            coeffs = _poly_mod(self.p, coeffs, self.modulus)
        return FieldElem(self, self.encode(coeffs))

    def from_int(self, n: int) -> FieldElem:
        """The prime-subfield element n * 1 (n taken mod p)."""
        return FieldElem(self, n % self.p)

    def zero(self) -> FieldElem:
        return FieldElem(self, 0)

    def one(self) -> FieldElem:
        return FieldElem(self, 1)

    def elements(self) -> list[FieldElem]:
        """All q elements; zero first, one second, then by index order."""
        return [FieldElem(self, v) for v in range(self.q)]


class FieldElem:
    """An element of a FieldSpec, stored as its enumeration index."""

    __slots__ = ("spec", "val")

    def __init__(self, spec: FieldSpec, val: int):
        self.spec = spec
        self.val = val

    @property
    def coeffs(self) -> tuple[int, ...]:
        return self.spec.decode(self.val)

    def __bool__(self):
        return self.val != 0

    def __eq__(self, other):
        return (
            isinstance(other, FieldElem)
            and self.val == other.val
            and self.spec == other.spec
        )

    def __hash__(self):
        return hash((self.val, self.spec.q))

    def __repr__(self):
        return f"FieldElem(GF({self.spec.q}), {list(self.coeffs)})"

    def _peer(self, other) -> FieldElem:
        if not isinstance(other, FieldElem):
            raise TypeError(f"expected FieldElem, got {type(other).__name__}")
        if other.spec is not self.spec and other.spec != self.spec:
            raise ValueError("operands belong to different fields")
        return other

    def __add__(self, other):
        other = self._peer(other)
        spec = self.spec
        spec._ensure_tables()
        return FieldElem(spec, spec._add[self.val * spec.q + other.val])

    def __sub__(self, other):
        other = self._peer(other)
        spec = self.spec
        spec._ensure_tables()
        neg = spec._neg[other.val]
        return FieldElem(spec, spec._add[self.val * spec.q + neg])

    def __neg__(self):
        spec = self.spec
        spec._ensure_tables()
        return FieldElem(spec, spec._neg[self.val])

    def __mul__(self, other):
        other = self._peer(other)
        spec = self.spec
        spec._ensure_tables()
        return FieldElem(spec, spec._mul[self.val * spec.q + other.val])

    def __pow__(self, n: int):
        if n < 0:
            return self.inv() ** (-n)
        spec = self.spec
        spec._ensure_tables()
        result = 1
        base = self.val
        mul = spec._mul
        q = spec.q
        while n:
            if n & 1:
                result = mul[result * q + base]
            base = mul[base * q + base]
            n >>= 1
        return FieldElem(spec, result)

    def inv(self) -> FieldElem:
        if self.val == 0:
            raise NotAUnit("zero has no multiplicative inverse")
        spec = self.spec
        spec._ensure_tables()
        return FieldElem(spec, spec._inv[self.val])


@functools.lru_cache(maxsize=None)
def GF(q: int) -> FieldSpec:
    """The field of order q (a prime power) with the default modulus."""
    if q < 2:
        raise ValueError(f"{q} is not a prime power")
    p = 2
    while p * p <= q:
        if q % p == 0:
            break
        p += 1
    else:
        p = q
    k = 0
    m = q
    while m % p == 0 and m > 1:
        m //= p
        k += 1
    if m != 1:
        raise ValueError(f"{q} is not a prime power")
    return FieldSpec(p, k)
