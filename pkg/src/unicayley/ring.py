"""Finite rings as products of field, matrix, and modular-integer factors.

A RingSpec is an ordered tuple of atoms: Field(GF(q)), Matrix(d, GF(q))
with d >= 2, or ModInt(n) with n >= 2.  The empty product is the zero
ring (one element).  Elements carry one component per atom: a FieldElem,
a d x d tuple-of-tuples of FieldElem, or a residue int.

Everything is immutable; enumeration order is mixed-radix over the
component enumerations with the zero element first.
"""

from __future__ import annotations

import itertools
import json
import math
from dataclasses import dataclass

from .finfield import GF, FieldElem, FieldSpec

DEFAULT_RING_CAP = 4096


class SizeCapExceeded(RuntimeError):
    """A ring or graph is larger than the configured size cap."""


def factorize(n: int) -> list[tuple[int, int]]:
    """Prime factorization as (prime, exponent) pairs, ascending."""
    out = []
    d = 2
    while d * d <= n:
        if n % d == 0:
            e = 0
            while n % d == 0:
                n //= d
                e += 1
            out.append((d, e))
        d += 1
    if n > 1:
        out.append((n, 1))
    return out


def euler_phi(n: int) -> int:
    out = 1
    for p, e in factorize(n):
        out *= (p - 1) * p ** (e - 1)
    return out


# ---------------------------------------------------------------------------
# Matrix helpers over a FieldSpec.  Matrices are tuples of row tuples.
# ---------------------------------------------------------------------------

def mat_from_ints(field: FieldSpec, rows) -> tuple:
    return tuple(tuple(field.from_int(x) for x in row) for row in rows)


def mat_zero(field: FieldSpec, d: int) -> tuple:
    z = field.zero()
    return tuple(tuple(z for _ in range(d)) for _ in range(d))


def mat_identity(field: FieldSpec, d: int) -> tuple:
    z, o = field.zero(), field.one()
    return tuple(tuple(o if i == j else z for j in range(d)) for i in range(d))


def mat_add(a: tuple, b: tuple) -> tuple:
    return tuple(tuple(x + y for x, y in zip(ra, rb)) for ra, rb in zip(a, b))


def mat_sub(a: tuple, b: tuple) -> tuple:
    return tuple(tuple(x - y for x, y in zip(ra, rb)) for ra, rb in zip(a, b))


def mat_neg(a: tuple) -> tuple:
    return tuple(tuple(-x for x in row) for row in a)


def mat_mul(a: tuple, b: tuple) -> tuple:
    bt = tuple(zip(*b))
    out = []
    for row in a:
        out_row = []
        for col in bt:
            acc = row[0] * col[0]
            for x, y in zip(row[1:], col[1:]):
                acc = acc + x * y
            out_row.append(acc)
        out.append(tuple(out_row))
    return tuple(out)


def mat_transpose(a: tuple) -> tuple:
    return tuple(zip(*a))


def mat_jordan_block(field: FieldSpec, n: int) -> tuple:
    """Nilpotent Jordan block: ones on the first superdiagonal."""
    z, o = field.zero(), field.one()
    return tuple(
        tuple(o if j == i + 1 else z for j in range(n)) for i in range(n)
    )


def mat_det(m: tuple) -> FieldElem:
    """Determinant by Gaussian elimination with partial pivoting.

    Pivot choice is the first row with a nonzero entry in the column; the
    result is independent of that choice.
    """
    d = len(m)
    field = m[0][0].spec
    rows = [list(r) for r in m]
    det = field.one()
    for col in range(d):
        pivot = None
        for r in range(col, d):
            if rows[r][col]:
                pivot = r
                break
        if pivot is None:
            return field.zero()
        if pivot != col:
            rows[col], rows[pivot] = rows[pivot], rows[col]
            det = -det
        pv = rows[col][col]
        det = det * pv
        pv_inv = pv.inv()
        for r in range(col + 1, d):
            f = rows[r][col] * pv_inv
            if f:
                rows[r] = [x - f * y for x, y in zip(rows[r], rows[col])]
    return det


# ---------------------------------------------------------------------------
# Ring atoms
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class FieldAtom:
    field: FieldSpec

    @property
    def size(self) -> int:
        return self.field.q

    def unit_count(self) -> int:
        return self.field.q - 1

    def zero(self):
        return self.field.zero()

    def one(self):
        return self.field.one()

    def iter_elements(self):
        return iter(self.field.elements())

    def add(self, a, b):
        return a + b

    def sub(self, a, b):
        return a - b

    def neg(self, a):
        return -a

    def mul(self, a, b):
        return a * b

    def is_unit(self, a) -> bool:
        return bool(a)

    def index_add(self, i: int, j: int) -> int:
        return self.field.index_add(i, j)

    def validate(self, a):
        if not isinstance(a, FieldElem) or a.spec != self.field:
            raise ValueError(f"expected an element of {self.field!r}")
        return a

    def to_jsonable(self, a):
        return a.val if self.field.k == 1 else list(a.coeffs)

    def from_jsonable(self, data):
        if self.field.k == 1:
            if not isinstance(data, int):
                raise ValueError(f"expected an integer residue for {self.field!r}")
            return self.field.from_int(data)
        if not (isinstance(data, list) and len(data) == self.field.k
                and all(isinstance(c, int) for c in data)):
            raise ValueError(f"expected {self.field.k} coefficients for {self.field!r}")
        return self.field.make(data)

    def describe(self) -> str:
        return f"GF({self.field.q})"


@dataclass(frozen=True)
class MatrixAtom:
    d: int
    field: FieldSpec

    def __post_init__(self):
        if self.d < 2:
            raise ValueError("matrix dimension must be at least 2")

    @property
    def size(self) -> int:
        return self.field.q ** (self.d * self.d)

    def unit_count(self) -> int:
        # |GL_d(F_q)| = prod_{i<d} (q^d - q^i)
        q, d = self.field.q, self.d
        out = 1
        for i in range(d):
            out *= q ** d - q ** i
        return out

    def zero(self):
        return mat_zero(self.field, self.d)

    def one(self):
        return mat_identity(self.field, self.d)

    def iter_elements(self):
        elems = self.field.elements()
        d = self.d
        for flat in itertools.product(elems, repeat=d * d):
            yield tuple(flat[i * d : (i + 1) * d] for i in range(d))

    def add(self, a, b):
        return mat_add(a, b)

    def sub(self, a, b):
        return mat_sub(a, b)

    def neg(self, a):
        return mat_neg(a)

    def mul(self, a, b):
        return mat_mul(a, b)

    def is_unit(self, a) -> bool:
        return bool(mat_det(a))

    def index_add(self, i: int, j: int) -> int:
        if self.field.p == 2:
            # entry indices are packed bit fields; GF(2^e) addition is xor
            return i ^ j
        q = self.field.q
        out = 0
        mult = 1
        for _ in range(self.d * self.d):
            out += self.field.index_add(i % q, j % q) * mult
            i //= q
            j //= q
            mult *= q
        return out

    def validate(self, a):
        ok = (
            isinstance(a, tuple)
            and len(a) == self.d
            and all(
                isinstance(row, tuple)
                and len(row) == self.d
                and all(isinstance(x, FieldElem) and x.spec == self.field for x in row)
                for row in a
            )
        )
        if not ok:
            raise ValueError(f"expected a {self.d}x{self.d} matrix over {self.field!r}")
        return a

    def to_jsonable(self, a):
        entry = FieldAtom(self.field)
        return [[entry.to_jsonable(x) for x in row] for row in a]

    def from_jsonable(self, data):
        if not (isinstance(data, list) and len(data) == self.d
                and all(isinstance(row, list) and len(row) == self.d for row in data)):
            raise ValueError(f"expected {self.d} rows of {self.d} entries")
        entry = FieldAtom(self.field)
        return tuple(tuple(entry.from_jsonable(x) for x in row) for row in data)

    def describe(self) -> str:
        return f"M({self.d},GF({self.field.q}))"


@dataclass(frozen=True)
class ModIntAtom:
    n: int

    def __post_init__(self):
        if self.n < 2:
            raise ValueError("modulus must be at least 2")

    @property
    def size(self) -> int:
        return self.n

    def unit_count(self) -> int:
        return euler_phi(self.n)

    def zero(self):
        return 0

    def one(self):
        return 1 % self.n

    def iter_elements(self):
        return iter(range(self.n))

    def add(self, a, b):
        return (a + b) % self.n

    def sub(self, a, b):
        return (a - b) % self.n

    def neg(self, a):
        return -a % self.n

    def mul(self, a, b):
        return (a * b) % self.n

    def is_unit(self, a) -> bool:
        return math.gcd(a, self.n) == 1

    def index_add(self, i: int, j: int) -> int:
        return (i + j) % self.n

    def validate(self, a):
        if not isinstance(a, int) or not 0 <= a < self.n:
            raise ValueError(f"expected a residue in [0, {self.n})")
        return a

    def to_jsonable(self, a):
        return a

    def from_jsonable(self, data):
        if not isinstance(data, int):
            raise ValueError(f"expected an integer residue mod {self.n}")
        return data % self.n

    def describe(self) -> str:
        return f"Z({self.n})"


Atom = FieldAtom | MatrixAtom | ModIntAtom


# ---------------------------------------------------------------------------
# Ring specs and elements
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class RingSpec:
    """An ordered product of atoms; the empty product is the zero ring."""

    factors: tuple = ()

    @property
    def size(self) -> int:
        out = 1
        for a in self.factors:
            out *= a.size
        return out

    def zero(self) -> RingElem:
        return RingElem(self, tuple(a.zero() for a in self.factors))

    def one(self) -> RingElem:
        return RingElem(self, tuple(a.one() for a in self.factors))

    def element(self, components) -> RingElem:
        components = tuple(components)
        if len(components) != len(self.factors):
            raise ValueError(
                f"expected {len(self.factors)} components, got {len(components)}"
            )
        for atom, comp in zip(self.factors, components):
            atom.validate(comp)
        return RingElem(self, components)

    def iter_elements(self):
        """Lazy enumeration, mixed-radix with the last factor fastest."""
        if not self.factors:
            yield RingElem(self, ())
            return
        for comps in itertools.product(*(a.iter_elements() for a in self.factors)):
            yield RingElem(self, comps)

    def elements(self, max_size: int | None = DEFAULT_RING_CAP) -> list[RingElem]:
        """All elements in enumeration order; zero element first."""
        if max_size is not None and self.size > max_size:
            raise SizeCapExceeded(
                f"ring has {self.size} elements, above the cap of {max_size}"
            )
        return list(self.iter_elements())

    def unit_count(self) -> int:
        out = 1
        for a in self.factors:
            out *= a.unit_count()
        return out

    def index_adder(self):
        """Pure-integer addition on enumeration indices.

        Matches iter_elements order; lets graph builders avoid element
        objects in the hot loop.
        """
        factors = self.factors
        if not factors:
            return lambda i, j: 0
        if len(factors) == 1:
            return factors[0].index_add
        sizes = [a.size for a in factors]
        adders = [a.index_add for a in factors]

        def add(i: int, j: int) -> int:
            out = 0
            mult = 1
            for s, f in zip(reversed(sizes), reversed(adders)):
                out += f(i % s, j % s) * mult
                i //= s
                j //= s
                mult *= s
            return out

        return add

    def describe(self) -> str:
        if not self.factors:
            return "0"
        return " x ".join(a.describe() for a in self.factors)


@dataclass(frozen=True)
class RingElem:
    spec: RingSpec
    components: tuple

    def _peer(self, other) -> RingElem:
        if not isinstance(other, RingElem):
            raise TypeError(f"expected RingElem, got {type(other).__name__}")
        if other.spec != self.spec:
            raise ValueError("operands belong to different rings")
        return other

    def __add__(self, other):
        other = self._peer(other)
        return RingElem(
            self.spec,
            tuple(
                a.add(x, y)
                for a, x, y in zip(self.spec.factors, self.components, other.components)
            ),
        )

    def __sub__(self, other):
        other = self._peer(other)
        return RingElem(
            self.spec,
            tuple(
                a.sub(x, y)
                for a, x, y in zip(self.spec.factors, self.components, other.components)
            ),
        )

    def __neg__(self):
        return RingElem(
            self.spec,
            tuple(a.neg(x) for a, x in zip(self.spec.factors, self.components)),
        )

    def __mul__(self, other):
        other = self._peer(other)
        return RingElem(
            self.spec,
            tuple(
                a.mul(x, y)
                for a, x, y in zip(self.spec.factors, self.components, other.components)
            ),
        )

    def is_unit(self) -> bool:
        """True iff every component is a unit in its factor.

        The zero ring's sole element is a unit by the 1 = 0 convention.
        """
        return all(
            a.is_unit(x) for a, x in zip(self.spec.factors, self.components)
        )

    def __repr__(self):
        return f"RingElem({self.spec.describe()}, {render_element(self)})"


# ---------------------------------------------------------------------------
# Semisimplification
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class SemisimpleForm:
    """Semisimple quotient shape: field orders, matrix factors, radical size.

    field_orders is ascending; matrix_factors is sorted (dimension, order)
    pairs with dimension >= 2; radical_size divides the original ring size.
    """

    field_orders: tuple[int, ...]
    matrix_factors: tuple[tuple[int, int], ...]
    radical_size: int

    @property
    def s(self) -> int:
        return len(self.field_orders)

    @property
    def r(self) -> int:
        return len(self.matrix_factors)

    @property
    def is_zero_ring(self) -> bool:
        return self.s == 0 and self.r == 0

    @property
    def semisimple_size(self) -> int:
        out = 1
        for q in self.field_orders:
            out *= q
        for d, q in self.matrix_factors:
            out *= q ** (d * d)
        return out

    def to_ring_spec(self) -> RingSpec:
        """Canonical semisimple ring: field atoms ascending, then matrix atoms."""
        atoms = [FieldAtom(GF(q)) for q in self.field_orders]
        atoms += [MatrixAtom(d, GF(q)) for d, q in self.matrix_factors]
        return RingSpec(tuple(atoms))

    def describe(self) -> str:
        return self.to_ring_spec().describe() if not self.is_zero_ring else "0"


def semisimplify(spec: RingSpec) -> SemisimpleForm:
    """Shape of the ring modulo its radical.

    Fields and matrix rings are already semisimple.  Z(n) with
    n = prod p_i^e_i contributes the prime fields p_i and a radical factor
    of prod p_i^(e_i - 1).
    """
    fields: list[int] = []
    matrices: list[tuple[int, int]] = []
    radical = 1
    for atom in spec.factors:
        if isinstance(atom, FieldAtom):
            fields.append(atom.field.q)
        elif isinstance(atom, MatrixAtom):
            matrices.append((atom.d, atom.field.q))
        else:
            for p, e in factorize(atom.n):
                fields.append(p)
                radical *= p ** (e - 1)
    return SemisimpleForm(tuple(sorted(fields)), tuple(sorted(matrices)), radical)


def sum_of_two_units_witness(m: RingElem) -> tuple[RingElem, RingElem]:
    """Split a matrix-ring element into a sum of two invertible matrices.

    Scans units in enumeration order and returns the first (U, m - U) pair
    with both parts invertible; every element of M_d(F) with d >= 2 has one.
    """
    if len(m.spec.factors) != 1 or not isinstance(m.spec.factors[0], MatrixAtom):
        raise ValueError("element must belong to a single matrix-ring factor")
    for u in m.spec.iter_elements():
        if u.is_unit() and (m - u).is_unit():
            return u, m - u
    raise RuntimeError(
        "internal consistency failure: no sum-of-two-units decomposition found"
    )


# ---------------------------------------------------------------------------
# Stable element rendering (JSON values, one element per line in files)
# ---------------------------------------------------------------------------

def element_to_jsonable(elem: RingElem) -> list:
    return [
        a.to_jsonable(x) for a, x in zip(elem.spec.factors, elem.components)
    ]


def element_from_jsonable(spec: RingSpec, data) -> RingElem:
    if not isinstance(data, list) or len(data) != len(spec.factors):
        raise ValueError(
            f"expected a list of {len(spec.factors)} components for {spec.describe()}"
        )
    return RingElem(
        spec, tuple(a.from_jsonable(x) for a, x in zip(spec.factors, data))
    )


def render_element(elem: RingElem) -> str:
    return json.dumps(element_to_jsonable(elem))


def parse_element(spec: RingSpec, text: str) -> RingElem:
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ValueError(f"bad element syntax: {exc}") from None
    return element_from_jsonable(spec, data)
