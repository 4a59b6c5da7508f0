"""Perfectness classification with constructive 5-cycle witnesses.

The decision runs on the semisimple shape only (the radical never changes
perfectness): the graph is perfect iff some field factor has order 2, or
there are at most two field factors and no matrix factor, or the whole
semisimple ring is M_2(GF(2)) (or it is the zero ring).  Every negative
verdict comes with five ring elements whose cyclic consecutive
differences are units and whose other differences are not - a certified
induced 5-cycle, checkable without building the graph.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

from .finfield import GF, FieldSpec
from .ring import (
    FieldAtom,
    MatrixAtom,
    RingElem,
    RingSpec,
    SemisimpleForm,
    mat_add,
    mat_from_ints,
    mat_identity,
    mat_jordan_block,
    mat_transpose,
    mat_zero,
    semisimplify,
    sum_of_two_units_witness,
)

REASON_ZERO_RING = "zero-ring"
REASON_BIPARTITE_F2 = "bipartite-f2-factor"
REASON_M2F2_ALONE = "matrix-m2f2-alone"
REASON_FEW_FIELDS = "few-field-factors-no-matrix"
REASON_WITNESS = "witness-found"

FAMILY_MATRIX_CHAR_ODD = "matrix-char-odd"
FAMILY_MATRIX_CHAR2 = "matrix-char2"
FAMILY_MATRIX_F2_LARGE = "matrix-f2-large"
FAMILY_MATRIX_DIAGONAL = "matrix-diagonal"
FAMILY_THREE_FIELDS = "three-fields"
FAMILY_M2F2_TIMES_FIELD = "m2f2-times-field"
FAMILY_M2F2_SQUARED = "m2f2-squared"


@dataclass(frozen=True)
class Witness:
    """Five elements of the semisimple ring forming an induced 5-cycle."""

    spec: RingSpec
    elements: tuple
    family: str
    lifted: bool = False


@dataclass(frozen=True)
class Verdict:
    perfect: bool
    reason: str
    form: SemisimpleForm
    witness: Witness | None = None


def _nonbinary(field: FieldSpec):
    """First enumerated element outside {0, 1}; needs order >= 3."""
    if field.q < 3:
        raise ValueError(f"{field!r} has no element outside {{0, 1}}")
    return field.elements()[2]


# ---------------------------------------------------------------------------
# Witness templates
# ---------------------------------------------------------------------------

def witness_matrix_char_odd(field: FieldSpec) -> list[RingElem]:
    """Induced 5-cycle in M_2(F) for odd characteristic.

    Integer entries are read in F through the prime subfield; the same
    template works for every field with 2 invertible.
    """
    if field.p == 2:
        raise ValueError("template requires odd characteristic")
    spec = RingSpec((MatrixAtom(2, field),))
    templates = [
        [[0, 0], [0, 0]],
        [[2, 1], [1, 0]],
        [[-2, -2], [-1, -1]],
        [[-1, -2], [-1, -2]],
        [[-2, -1], [-1, -1]],
    ]
    return [spec.element((mat_from_ints(field, t),)) for t in templates]


def witness_matrix_char2(field: FieldSpec) -> list[RingElem]:
    """Induced 5-cycle in M_2(F) for characteristic 2, order > 2."""
    if field.p != 2 or field.q == 2:
        raise ValueError("template requires characteristic 2 and order above 2")
    spec = RingSpec((MatrixAtom(2, field),))
    z = _nonbinary(field)
    o = field.one()
    zero = field.zero()
    z1 = z + o
    mats = [
        ((zero, zero), (zero, zero)),
        ((o, zero), (o, o)),
        ((z1, zero), (o, zero)),
        ((o, z1), (o, z1)),
        ((z1, o), (o, o)),
    ]
    return [spec.element((m,)) for m in mats]


def witness_matrix_f2_large(d: int) -> list[RingElem]:
    """Induced 5-cycle in M_d(GF(2)) for d >= 3.

    Built from the all-ones upper-left 2x2 block A and the Jordan block B:
    0, I+A, A, I+A+B^T, I+B in that cyclic order.
    """
    if d < 3:
        raise ValueError("construction requires dimension at least 3")
    field = GF(2)
    spec = RingSpec((MatrixAtom(d, field),))
    a = mat_from_ints(
        field, [[1 if i < 2 and j < 2 else 0 for j in range(d)] for i in range(d)]
    )
    b = mat_jordan_block(field, d)
    ident = mat_identity(field, d)
    mats = [
        mat_zero(field, d),
        mat_add(ident, a),
        a,
        mat_add(mat_add(ident, a), mat_transpose(b)),
        mat_add(ident, b),
    ]
    return [spec.element((m,)) for m in mats]


def witness_three_fields(f1: FieldSpec, f2: FieldSpec, f3: FieldSpec) -> list[RingElem]:
    """Induced 5-cycle in F1 x F2 x F3, all orders >= 3."""
    for f in (f1, f2, f3):
        if f.q < 3:
            raise ValueError("all three field orders must be at least 3")
    spec = RingSpec((FieldAtom(f1), FieldAtom(f2), FieldAtom(f3)))
    a = _nonbinary(f2)
    b = _nonbinary(f3)
    c = _nonbinary(f1)
    z1, o1 = f1.zero(), f1.one()
    z2, o2 = f2.zero(), f2.one()
    z3, o3 = f3.zero(), f3.one()
    rows = [
        (z1, z2, z3),
        (o1, o2, o3),
        (z1, a, b),
        (o1, o2, z3),
        (c, a, o3),
    ]
    return [spec.element(r) for r in rows]


def witness_m2f2_times_field(field: FieldSpec) -> list[RingElem]:
    """Induced 5-cycle in M_2(GF(2)) x F for a field of order > 2."""
    if field.q == 2:
        raise ValueError("field factor must have order above 2")
    f2 = GF(2)
    spec = RingSpec((MatrixAtom(2, f2), FieldAtom(field)))
    alpha = _nonbinary(field)
    zero, one = field.zero(), field.one()
    m = lambda rows: mat_from_ints(f2, rows)
    rows = [
        (m([[0, 0], [0, 0]]), zero),
        (m([[1, 1], [0, 1]]), one),
        (m([[0, 0], [1, 1]]), alpha),
        (m([[1, 0], [0, 0]]), zero),
        (m([[1, 1], [1, 0]]), alpha),
    ]
    return [spec.element(r) for r in rows]


def witness_m2f2_squared() -> list[RingElem]:
    """Induced 5-cycle in M_2(GF(2)) x M_2(GF(2))."""
    f2 = GF(2)
    spec = RingSpec((MatrixAtom(2, f2), MatrixAtom(2, f2)))
    m = lambda rows: mat_from_ints(f2, rows)
    rows = [
        (m([[0, 0], [0, 0]]), m([[0, 1], [1, 1]])),
        (m([[1, 0], [1, 1]]), m([[1, 0], [0, 1]])),
        (m([[1, 1], [0, 1]]), m([[1, 1], [1, 1]])),
        (m([[1, 0], [1, 1]]), m([[1, 0], [0, 0]])),
        (m([[1, 1], [0, 1]]), m([[0, 0], [0, 1]])),
    ]
    return [spec.element(r) for r in rows]


def _witness_matrix_diagonal(d: int, field: FieldSpec) -> list[RingElem]:
    """Induced 5-cycle in M_d(F) for d >= 3 and |F| >= 3.

    The product F^d embeds on the diagonal as an induced subgraph, so a
    three-field 5-cycle lifted over the remaining coordinates transfers.
    """
    base = witness_three_fields(field, field, field)
    walks = [_closed_five_walk(FieldAtom(field)) for _ in range(d - 3)]
    lifted = lift_cycle([base] + walks, 0)
    spec = RingSpec((MatrixAtom(d, field),))
    z = field.zero()
    out = []
    for e in lifted:
        diag = tuple(
            tuple(e.components[i] if i == j else z for j in range(d)) for i in range(d)
        )
        out.append(spec.element((diag,)))
    return out


# ---------------------------------------------------------------------------
# Algebraic cycle checks and lifting
# ---------------------------------------------------------------------------

def _is_induced_cycle_algebraic(seq) -> bool:
    """Distinct elements; differences are units exactly on cyclic neighbors."""
    k = len(seq)
    if k < 3:
        return False
    if any(seq[i] == seq[j] for i in range(k) for j in range(i + 1, k)):
        return False
    for i in range(k):
        for j in range(i + 1, k):
            consecutive = j - i == 1 or (i == 0 and j == k - 1)
            if (seq[j] - seq[i]).is_unit() != consecutive:
                return False
    return True


def _is_closed_walk_algebraic(seq) -> bool:
    k = len(seq)
    if k < 3:
        return False
    return all((seq[(i + 1) % k] - seq[i]).is_unit() for i in range(k))


def lift_cycle(factor_cycles, anchor_index: int) -> list[RingElem]:
    """Combine per-factor sequences into an induced cycle in the product.

    The anchor sequence must be an induced k-cycle in its factor; every
    other sequence a closed k-walk (repeats allowed).  Both preconditions
    are verified, not assumed.  The output tuples form an induced k-cycle
    in the product ring whose factors follow the given order.
    """
    cycles = [list(seq) for seq in factor_cycles]
    if not cycles:
        raise ValueError("need at least one factor sequence")
    if not 0 <= anchor_index < len(cycles):
        raise ValueError("anchor index out of range")
    k = len(cycles[0])
    if k < 3:
        raise ValueError("cycle length must be at least 3")
    for seq in cycles:
        if len(seq) != k:
            raise ValueError("all factor sequences must have equal length")
        if any(e.spec != seq[0].spec for e in seq):
            raise ValueError("mixed ring specs within a factor sequence")
    if not _is_induced_cycle_algebraic(cycles[anchor_index]):
        raise ValueError("anchor sequence is not an induced cycle")
    for f, seq in enumerate(cycles):
        if f != anchor_index and not _is_closed_walk_algebraic(seq):
            raise ValueError(f"factor {f} sequence is not a closed walk")
    atoms = tuple(
        itertools.chain.from_iterable(seq[0].spec.factors for seq in cycles)
    )
    spec = RingSpec(atoms)
    out = []
    for j in range(k):
        comps = tuple(
            itertools.chain.from_iterable(seq[j].components for seq in cycles)
        )
        out.append(RingElem(spec, comps))
    return out


def _closed_five_walk(atom) -> list[RingElem]:
    """A closed 5-walk t0,t1,t0,t1,t2 around a triangle in the atom's graph.

    Fields of order >= 3 use (0, 1, first non-binary element); matrix
    factors use (0, U, W) with W the first enumerated unit and W = U + V a
    sum of two units.
    """
    spec = RingSpec((atom,))
    if isinstance(atom, FieldAtom):
        t0 = spec.zero()
        t1 = spec.one()
        t2 = spec.element((_nonbinary(atom.field),))
    elif isinstance(atom, MatrixAtom):
        w = next(e for e in spec.iter_elements() if e.is_unit())
        u, _ = sum_of_two_units_witness(w)
        t0, t1, t2 = spec.zero(), u, w
    else:
        raise ValueError(f"no closed odd walk available in {atom.describe()}")
    return [t0, t1, t0, t1, t2]


def verify_witness(spec: RingSpec, elems) -> bool:
    """Purely algebraic 5-cycle check; never builds the graph.

    True iff the five elements are pairwise distinct, cyclically
    consecutive differences are units, and the rest are non-units.
    Elements of the wrong ring or shape raise.
    """
    elems = list(elems)
    if len(elems) != 5:
        raise ValueError(f"expected exactly 5 elements, got {len(elems)}")
    for e in elems:
        if not isinstance(e, RingElem) or e.spec != spec:
            raise ValueError("witness element does not belong to the given ring")
        spec.element(e.components)
    return _is_induced_cycle_algebraic(elems)


# ---------------------------------------------------------------------------
# The decision procedure
# ---------------------------------------------------------------------------

def _perfect_reason(form: SemisimpleForm) -> str | None:
    if form.is_zero_ring:
        return REASON_ZERO_RING
    if form.field_orders and form.field_orders[0] == 2:
        return REASON_BIPARTITE_F2
    if form.s == 0 and form.matrix_factors == ((2, 2),):
        return REASON_M2F2_ALONE
    if form.r == 0 and form.s <= 2:
        return REASON_FEW_FIELDS
    return None


def witness_for(form: SemisimpleForm) -> Witness:
    """Constructive induced 5-cycle in the canonical semisimple ring.

    Dispatch prefers the fewest lifted coordinates: a single non-M_2(F_2)
    matrix factor if one exists, then three field factors, then the mixed
    M_2(F_2) families; every remaining factor contributes a closed 5-walk.
    """
    if _perfect_reason(form) is not None:
        raise ValueError("witness requested for a perfect ring")
    canonical = form.to_ring_spec()
    atoms = canonical.factors
    target = next(
        (i for i, dq in enumerate(form.matrix_factors) if dq != (2, 2)), None
    )
    if target is not None:
        d, q = form.matrix_factors[target]
        field = atoms[form.s + target].field
        if d == 2 and field.p != 2:
            anchor = witness_matrix_char_odd(field)
            family = FAMILY_MATRIX_CHAR_ODD
        elif d == 2:
            anchor = witness_matrix_char2(field)
            family = FAMILY_MATRIX_CHAR2
        elif q == 2:
            anchor = witness_matrix_f2_large(d)
            family = FAMILY_MATRIX_F2_LARGE
        else:
            anchor = _witness_matrix_diagonal(d, field)
            family = FAMILY_MATRIX_DIAGONAL
        anchor_positions = (form.s + target,)
    elif form.s >= 3:
        anchor = witness_three_fields(
            atoms[0].field, atoms[1].field, atoms[2].field
        )
        family = FAMILY_THREE_FIELDS
        anchor_positions = (0, 1, 2)
    elif form.s >= 1:
        # only M_2(F_2) matrix factors remain, paired with a field of order >= 3
        anchor = witness_m2f2_times_field(atoms[0].field)
        family = FAMILY_M2F2_TIMES_FIELD
        anchor_positions = (form.s, 0)
    else:
        anchor = witness_m2f2_squared()
        family = FAMILY_M2F2_SQUARED
        anchor_positions = (form.s, form.s + 1)
    rest = [i for i in range(len(atoms)) if i not in anchor_positions]
    lifted = lift_cycle(
        [anchor] + [_closed_five_walk(atoms[i]) for i in rest], 0
    )
    order = list(anchor_positions) + rest
    elems = []
    for le in lifted:
        comps: list = [None] * len(atoms)
        for concat_pos, canon_pos in enumerate(order):
            comps[canon_pos] = le.components[concat_pos]
        elems.append(RingElem(canonical, tuple(comps)))
    if not verify_witness(canonical, elems):
        raise RuntimeError("internal consistency failure: witness did not verify")
    return Witness(canonical, tuple(elems), family, lifted=bool(rest))


def classify(form: SemisimpleForm) -> Verdict:
    """Perfectness of the unitary Cayley graph from the semisimple shape.

    Precedence: zero ring, an order-2 field factor, M_2(GF(2)) alone,
    at most two fields with no matrix factor; anything else is not
    perfect and carries a verified witness.  The radical is ignored.
    """
    reason = _perfect_reason(form)
    if reason is not None:
        return Verdict(True, reason, form)
    return Verdict(False, REASON_WITNESS, form, witness_for(form))


def classify_spec(spec: RingSpec) -> Verdict:
    return classify(semisimplify(spec))
