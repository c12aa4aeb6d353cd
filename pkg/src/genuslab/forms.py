"""Integral quadratic spaces via Gram matrices, group representations, and
brute-force fiber isometry oracles.

The quadratic value is q(v) = (1/2) v^T B v, so that the bilinear form
satisfies B(u, v) = q(u+v) - q(u) - q(v) exactly (2 is invertible in odd
characteristic).  Gram entries live in the coordinate ring; all the paper
examples are constant, and the fiber oracles require constant matrices.

Isometry searches are exhaustive and deterministic: candidate columns are
tried in lexicographic order, so a reported witness is the lexicographically
least one in column-major order.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from typing import Optional, Sequence

import numpy as np

from . import linalg
from .coordring import CoordRing, RingElement
from .fields import FieldElement, FieldSpec, is_square
from .verdicts import BudgetExceeded, Verdict, bounded, no, yes


class GramForm:
    """A symmetric Gram matrix over the coordinate ring."""

    def __init__(self, ring: CoordRing, entries: Sequence[Sequence[RingElement]]):
        n = len(entries)
        if any(len(row) != n for row in entries):
            raise ValueError("Gram matrix must be square")
        for i in range(n):
            for j in range(n):
                if entries[i][j] != entries[j][i]:
                    raise ValueError("Gram matrix must be symmetric")
        self.ring = ring
        self.n = n
        self.entries = tuple(tuple(row) for row in entries)

    @property
    def rank(self) -> int:
        return self.n

    def det(self) -> RingElement:
        return _ring_det(self.ring, self.entries)

    def is_regular(self) -> bool:
        return self.det().is_unit()

    def is_constant(self) -> bool:
        return all(e.is_constant() for row in self.entries for e in row)

    def constant_matrix(self) -> list:
        """Entries as field elements; requires a constant Gram matrix."""
        if not self.is_constant():
            raise ValueError("Gram matrix has non-constant entries")
        spec = self.ring.field
        return [
            [e.a.coeff(0) if not e.a.is_zero() else spec.zero() for e in row]
            for row in self.entries
        ]

    def value(self, v: Sequence[FieldElement]) -> FieldElement:
        """q(v) = (1/2) v^T B v for a constant vector at the fiber."""
        b = self.constant_matrix()
        spec = self.ring.field
        s = spec.zero()
        for i in range(self.n):
            for j in range(self.n):
                s = s + v[i] * b[i][j] * v[j]
        return s * spec.element(2).inv()

    def bilinear(self, u, v) -> FieldElement:
        b = self.constant_matrix()
        spec = self.ring.field
        s = spec.zero()
        for i in range(self.n):
            for j in range(self.n):
                s = s + u[i] * b[i][j] * v[j]
        return s

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, GramForm):
            return NotImplemented
        return self.ring == other.ring and self.entries == other.entries

    def __str__(self) -> str:
        rows = ["[" + ", ".join(str(e) for e in row) + "]" for row in self.entries]
        return "[" + "; ".join(rows) + "]"


def make_form(ring: CoordRing, rows: Sequence[Sequence]) -> GramForm:
    """Build a GramForm from ints, field elements, or ring elements."""
    lifted = []
    for row in rows:
        out = []
        for e in row:
            if isinstance(e, RingElement):
                out.append(e)
            elif isinstance(e, FieldElement):
                out.append(ring.const(e))
            elif isinstance(e, int):
                out.append(ring.const(e))
            else:
                raise ValueError(f"bad Gram entry {e!r}")
        lifted.append(out)
    return GramForm(ring, lifted)


def identity_form(ring: CoordRing, n: int) -> GramForm:
    return make_form(ring, [[1 if i == j else 0 for j in range(n)] for i in range(n)])


def diagonal_form(ring: CoordRing, diag: Sequence) -> GramForm:
    n = len(diag)
    return make_form(
        ring, [[diag[i] if i == j else 0 for j in range(n)] for i in range(n)]
    )


def _ring_det(ring: CoordRing, m) -> RingElement:
    n = len(m)
    if n == 1:
        return m[0][0]
    out = ring.zero()
    for j in range(n):
        minor = [row[:j] + row[j + 1 :] for row in m[1:]]
        term = m[0][j] * _ring_det(ring, minor)
        out = out + term if j % 2 == 0 else out - term
    return out


class GroupRep:
    """A finite group given by generator matrices over the field.

    The generated closure is computed on demand and compared against the
    expected abstract order, certifying that the representation is
    faithful.
    """

    def __init__(
        self,
        label: str,
        field: FieldSpec,
        generators: Sequence,
        expected_order: Optional[int] = None,
        isotypic_multiplicities: Optional[tuple] = None,
    ):
        self.label = label
        self.field = field
        self.generators = tuple(linalg.mat_freeze(g) for g in generators)
        if self.generators:
            self.n = len(self.generators[0])
        else:
            raise ValueError("a representation needs at least one generator")
        for g in self.generators:
            if linalg.det([list(r) for r in g]).is_zero():
                raise ValueError("generator matrix is not invertible")
        self.expected_order = expected_order
        self.isotypic_multiplicities = isotypic_multiplicities
        self._closure: Optional[tuple] = None

    def closure(self, budget: int = 100_000) -> tuple:
        """All elements generated under product, sorted deterministically."""
        if self._closure is None:
            seen = {linalg.mat_freeze(linalg.identity(self.field, self.n))}
            frontier = list(seen)
            while frontier:
                new = []
                for m in frontier:
                    for g in self.generators:
                        prod = linalg.mat_freeze(linalg.mat_mul(m, g))
                        if prod not in seen:
                            seen.add(prod)
                            new.append(prod)
                            if len(seen) > budget:
                                raise BudgetExceeded(len(seen), budget, "group closure")
                frontier = new
            self._closure = tuple(sorted(seen, key=linalg.mat_key))
        return self._closure

    def order(self) -> int:
        return len(self.closure())

    def is_faithful(self) -> Optional[bool]:
        if self.expected_order is None:
            return None
        return self.order() == self.expected_order


def trivial_rep(field: FieldSpec, n: int) -> GroupRep:
    return GroupRep(
        "trivial",
        field,
        [linalg.identity(field, n)],
        expected_order=1,
        isotypic_multiplicities=(n,),
    )


def s3_rank2_rep(field: FieldSpec) -> GroupRep:
    """S_3 on rank 2: the swap together with a rotation of order 3.

    Needs an element of order 3 in the circle group x^2 + y^2 = 1, which for
    p = 11 is the rotation by 5 + 8i.
    """
    if field.p != 11 or field.degree != 1:
        raise ValueError("this preset is defined over GF(11)")
    e = field.element
    tau = [[e(0), e(1)], [e(1), e(0)]]
    sigma = [[e(5), e(-8)], [e(8), e(5)]]
    return GroupRep(
        "S3", field, [tau, sigma], expected_order=6, isotypic_multiplicities=(1,)
    )


def swap_rep(field: FieldSpec) -> GroupRep:
    e = field.element
    return GroupRep(
        "S2-swap",
        field,
        [[[e(0), e(1)], [e(1), e(0)]]],
        expected_order=2,
        isotypic_multiplicities=(1, 1),
    )


def block_permutation_rep(field: FieldSpec, n: int) -> GroupRep:
    """S_{n-2} permuting the last n-2 coordinates, identity on the first 2.

    The permutation group is generated by the transposition (1 2) and, for
    block size above 2, the full cycle; both act by monomial matrices.
    """
    if n < 4:
        raise ValueError("block permutation representation needs n >= 4")
    k = n - 2
    perms = [[1, 0] + list(range(2, k))]
    if k > 2:
        perms.append(list(range(1, k)) + [0])
    gens = []
    for perm in perms:
        m = [[field.zero() for _ in range(n)] for _ in range(n)]
        m[0][0] = field.one()
        m[1][1] = field.one()
        for i, pi in enumerate(perm):
            m[2 + pi][2 + i] = field.one()
        gens.append(m)
    # trivial isotypic: e1, e2 and the all-ones vector of the block
    return GroupRep(
        f"S{k}-block(n={n})",
        field,
        gens,
        expected_order=math.factorial(k),
        isotypic_multiplicities=None,
    )


def is_gamma_form(form: GramForm, rep: GroupRep) -> bool:
    """Whether rho(g)^T B rho(g) = B for every generator."""
    if rep.n != form.n:
        raise ValueError("representation and form have different dimensions")
    if rep.field != form.ring.field:
        raise ValueError("representation and form live over different fields")
    ring = form.ring
    b = form.entries
    for g in rep.generators:
        gr = [[ring.const(e) for e in row] for row in g]
        left = _ring_mat_mul(ring, _ring_transpose(gr), _ring_mat_mul(ring, b, gr))
        if any(
            left[i][j] != b[i][j] for i in range(form.n) for j in range(form.n)
        ):
            return False
    return True


def _ring_mat_mul(ring: CoordRing, a, b):
    n, k, m = len(a), len(b), len(b[0])
    out = []
    for i in range(n):
        row = []
        for j in range(m):
            s = ring.zero()
            for t in range(k):
                s = s + a[i][t] * b[t][j]
            row.append(s)
        out.append(row)
    return out


def _ring_transpose(a):
    return [list(col) for col in zip(*a)]


@dataclass(frozen=True)
class DiscriminantModule:
    """Rank-1 descriptor: det(q) up to unit squares.

    For a free module the descriptor is principal; the class is reduced to a
    canonical representative (1 or the canonical non-residue) whenever the
    determinant is constant.
    """

    det: RingElement
    square_class: str  # "square" | "nonsquare" | "nonconstant"
    representative: RingElement
    principal: bool = True


def discriminant(form: GramForm) -> DiscriminantModule:
    if not form.is_regular():
        raise ValueError("discriminant is defined for regular forms")
    d = form.det()
    ring = form.ring
    if d.is_constant():
        c = d.a.coeff(0)
        sq, _ = is_square(c)
        if sq:
            return DiscriminantModule(d, "square", ring.one())
        return DiscriminantModule(d, "nonsquare", ring.const(ring.field.nonresidue()))
    return DiscriminantModule(d, "nonconstant", d)


def is_isotropic(form: GramForm, budget: int = 2_000_000) -> Verdict:
    """Search for a nonzero v with q(v) = 0.

    For constant forms the fiber search over F_q^n is exhaustive, so No is
    definitive at the fiber, and a constant witness lifts to the ring (the
    form is then reported isotropic over the ring as well).  Non-constant
    forms are probed with constant vectors only, which can never certify a
    negative.
    """
    if not form.is_regular():
        raise ValueError("isotropy is tested for regular forms")
    spec = form.ring.field
    if spec.order**form.n > budget:
        raise BudgetExceeded(spec.order**form.n, budget, "isotropy search")
    constant = form.is_constant()
    if constant:
        b = form.constant_matrix()
        for v in itertools.product(spec.elements(), repeat=form.n):
            if all(e.is_zero() for e in v):
                continue
            s = spec.zero()
            for i in range(form.n):
                for j in range(form.n):
                    s = s + v[i] * b[i][j] * v[j]
            if s.is_zero():
                return yes(v, "constant isotropic vector; lifts to the ring")
        return no("exhaustive fiber search: form is anisotropic over the residue field")
    ring = form.ring
    for v in itertools.product(spec.elements(), repeat=form.n):
        if all(e.is_zero() for e in v):
            continue
        s = ring.zero()
        for i in range(form.n):
            for j in range(form.n):
                s = s + ring.const(v[i]) * form.entries[i][j] * ring.const(v[j])
        if s.is_zero():
            return yes(v, "constant isotropic vector")
    return bounded("no constant isotropic vector; non-constant search not attempted")


def fiber_isometry(
    f1: GramForm, f2: GramForm, budget: int = 5_000_000
) -> Verdict:
    """Exhaustive search for A with A^T B1 A = B2 over the residue field.

    Candidate columns are filtered progressively (quadratic value first,
    then the bilinear compatibilities with the chosen prefix), tried in
    lexicographic order; the first complete solution is the
    lexicographically least witness.  A failed search is a definite No:
    the space of candidate matrices is covered completely.
    """
    if f1.n != f2.n:
        return no("ranks differ")
    if not (f1.is_constant() and f2.is_constant()):
        raise ValueError("fiber isometry needs constant Gram matrices")
    spec = f1.ring.field
    n = f1.n
    if spec.order**n > budget:
        raise BudgetExceeded(spec.order**n, budget, "isometry column space")
    if spec.degree == 1:
        return _fiber_isometry_np(f1, f2)
    return _fiber_isometry_generic(f1, f2)


def _fiber_isometry_np(f1: GramForm, f2: GramForm) -> Verdict:
    spec = f1.ring.field
    p = spec.p
    n = f1.n
    b1 = np.array([[e.a for e in row] for row in f1.constant_matrix()], dtype=np.int64)
    b2 = np.array([[e.a for e in row] for row in f2.constant_matrix()], dtype=np.int64)
    vecs = np.array(list(itertools.product(range(p), repeat=n)), dtype=np.int64)
    gram_all = (vecs @ b1) % p  # row i: v_i^T B1
    qvals = (gram_all * vecs).sum(axis=1) % p
    pools = {c: np.nonzero(qvals == c)[0] for c in set(b2.diagonal() % p)}

    chosen: list = []

    def descend(k: int) -> Optional[list]:
        if k == n:
            return list(chosen)
        pool = pools.get(int(b2[k, k] % p))
        if pool is None or len(pool) == 0:
            return None
        cand = pool
        for i, idx in enumerate(chosen):
            dots = (gram_all[cand] @ vecs[idx]) % p
            cand = cand[dots == int(b2[i, k] % p)]
            if len(cand) == 0:
                return None
        for idx in cand:
            chosen.append(int(idx))
            out = descend(k + 1)
            if out is not None:
                return out
            chosen.pop()
        return None

    found = descend(0)
    if found is None:
        return no("exhaustive column search: no isometry exists at the fiber")
    cols = [vecs[i] for i in found]
    a = [[spec.element(int(cols[j][i])) for j in range(n)] for i in range(n)]
    _assert_isometry(f1, f2, a)
    return yes(linalg.mat_freeze(a), "verified isometry witness")


def _fiber_isometry_generic(f1: GramForm, f2: GramForm) -> Verdict:
    spec = f1.ring.field
    n = f1.n
    b1 = f1.constant_matrix()
    b2 = f2.constant_matrix()
    vecs = list(itertools.product(spec.elements(), repeat=n))

    def bil(u, v):
        s = spec.zero()
        for i in range(n):
            for j in range(n):
                s = s + u[i] * b1[i][j] * v[j]
        return s

    chosen: list = []

    def descend(k: int) -> Optional[list]:
        if k == n:
            return list(chosen)
        for v in vecs:
            if bil(v, v) != b2[k][k]:
                continue
            if any(bil(chosen[i], v) != b2[i][k] for i in range(k)):
                continue
            chosen.append(v)
            out = descend(k + 1)
            if out is not None:
                return out
            chosen.pop()
        return None

    found = descend(0)
    if found is None:
        return no("exhaustive column search: no isometry exists at the fiber")
    a = [[found[j][i] for j in range(n)] for i in range(n)]
    _assert_isometry(f1, f2, a)
    return yes(linalg.mat_freeze(a), "verified isometry witness")


def _assert_isometry(f1: GramForm, f2: GramForm, a) -> None:
    b1 = f1.constant_matrix()
    b2 = f2.constant_matrix()
    at = linalg.transpose(a)
    prod = linalg.mat_mul(at, linalg.mat_mul(b1, a))
    assert linalg.mat_eq(prod, b2), "isometry witness failed verification"


def fiber_gamma_isometry(
    f1: GramForm, f2: GramForm, rep: GroupRep, budget: int = 10_000_000
) -> Verdict:
    """All A with A^T B1 A = B2 commuting with the representation.

    Enumerates the centralizer span, which contains every equivariant map,
    so the search is complete and a No is definite.  The witness list is
    sorted; the first entry is the canonical witness.
    """
    from .fixedgroup import orthogonal_transporter

    if not (is_gamma_form(f1, rep) and is_gamma_form(f2, rep)):
        raise ValueError("both forms must be invariant under the representation")
    witnesses = orthogonal_transporter(f1, f2, rep, budget=budget)
    if not witnesses:
        return no("complete centralizer enumeration: no equivariant isometry")
    return yes(
        witnesses[0],
        "equivariant isometry; full witness list attached",
        witnesses=tuple(witnesses),
    )
