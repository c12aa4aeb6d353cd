"""Fixed subgroups of orthogonal groups at finite-field fibers.

The fixed locus of a finite group acting on GL(V) by conjugation is the
centralizer of the representation, a linear subspace computed by exact
solving.  Orthogonal elements are then enumerated inside the centralizer
span, shrinking the search from q^(n^2) to q^d candidates.  The enumerated
set is certified to be a group (closed under product and inverse,
containing the identity), and determinant-1 suborders are reported.

The same engine enumerates transporters A^T B1 A = B2 inside the
centralizer, which is complete for equivariant isometries: any equivariant
map lies in the span.  Prime fields get a vectorized numpy path; the
general path is pure Python and budget-guarded.
"""

from __future__ import annotations

import itertools
import time
from dataclasses import dataclass
from typing import Optional, Sequence, Union

import numpy as np

from . import linalg
from .fields import FieldElement, FieldSpec
from .forms import GramForm, GroupRep
from .verdicts import BudgetExceeded

DEFAULT_BUDGET = 10_000_000


@dataclass(frozen=True)
class CentralizerBasis:
    """Basis of {M : rho(g) M = M rho(g) for all generators}."""

    field: FieldSpec
    n: int
    basis: tuple  # frozen matrices
    dimension: int


def centralizer_basis(rep: GroupRep, field: Optional[FieldSpec] = None) -> CentralizerBasis:
    """Exact kernel of M -> (rho(g) M - M rho(g))_g over the field."""
    spec = field if field is not None else rep.field
    if spec != rep.field:
        raise ValueError("representation is defined over a different field")
    n = rep.n
    zero, one = spec.zero(), spec.one()
    rows = []
    for g in rep.generators:
        for i in range(n):
            for j in range(n):
                row = [zero] * (n * n)
                for k in range(n):
                    row[k * n + j] = row[k * n + j] + g[i][k]
                for l in range(n):
                    row[i * n + l] = row[i * n + l] - g[l][j]
                rows.append(row)
    kern = linalg.kernel_basis(rows)
    basis = tuple(
        linalg.mat_freeze([[v[i * n + j] for j in range(n)] for i in range(n)])
        for v in kern
    )
    for m in basis:
        for g in rep.generators:
            assert linalg.mat_eq(
                linalg.mat_mul([list(r) for r in g], [list(r) for r in m]),
                linalg.mat_mul([list(r) for r in m], [list(r) for r in g]),
            )
    return CentralizerBasis(spec, n, basis, len(basis))


FormLike = Union[GramForm, Sequence[Sequence]]


def _as_field_matrix(form: FormLike, spec: FieldSpec) -> list:
    if isinstance(form, GramForm):
        if form.ring.field != spec:
            raise ValueError("form and representation fields differ")
        return form.constant_matrix()
    out = []
    for row in form:
        r = []
        for e in row:
            if isinstance(e, FieldElement):
                if e.spec != spec:
                    raise ValueError("matrix entry from a different field")
                r.append(e)
            else:
                r.append(spec.element(int(e)))
        out.append(r)
    return out


def orthogonal_transporter(
    b1: FormLike,
    b2: FormLike,
    rep: GroupRep,
    budget: int = DEFAULT_BUDGET,
) -> tuple:
    """All A in the centralizer span with A^T B1 A = B2, sorted canonically.

    Complete for equivariant maps; with B1 regular every solution is
    automatically invertible.
    """
    spec = rep.field
    m1 = _as_field_matrix(b1, spec)
    m2 = _as_field_matrix(b2, spec)
    cb = centralizer_basis(rep)
    d = cb.dimension
    total = spec.order**d
    if total > budget:
        raise BudgetExceeded(total, budget, "centralizer enumeration")
    if spec.degree == 1:
        sols = _transporter_np(m1, m2, cb, spec)
    else:
        sols = _transporter_generic(m1, m2, cb, spec)
    for a in sols:
        at = linalg.transpose(a)
        prod = linalg.mat_mul(at, linalg.mat_mul(m1, [list(r) for r in a]))
        assert linalg.mat_eq(prod, m2)
    return tuple(sorted((linalg.mat_freeze(a) for a in sols), key=linalg.mat_key))


def _transporter_np(m1, m2, cb: CentralizerBasis, spec: FieldSpec) -> list:
    p = spec.p
    n = cb.n
    d = cb.dimension
    basis = np.array(
        [[[e.a for e in row] for row in mat] for mat in cb.basis], dtype=np.int64
    )
    b1 = np.array([[e.a for e in row] for row in m1], dtype=np.int64)
    b2flat = np.array([[e.a for e in row] for row in m2], dtype=np.int64).reshape(-1)
    # A = sum_i c_i basis_i gives (A^T B1 A)_k = sum_{i,j} c_i c_j T_ij[k]
    # with T_ij = basis_i^T B1 basis_j.  Each Gram entry k is a quadratic
    # form in the coefficients; checking entries one at a time cuts the
    # surviving candidates by roughly a factor of p per entry, so the first
    # filter dominates.  Values stay far below 2^53: float64 is exact and
    # the contractions hit BLAS.
    tq = np.empty((n * n, d, d), dtype=np.float64)
    for i in range(d):
        for j in range(d):
            tq[:, i, j] = ((basis[i].T @ b1 @ basis[j]) % p).reshape(-1)
    total = p**d
    chunk = 400_000
    sols = []
    for start in range(0, total, chunk):
        idx = np.arange(start, min(start + chunk, total))
        combos = np.stack(np.unravel_index(idx, (p,) * d), axis=1)
        alive = combos.astype(np.float64)
        for k in range(n * n):
            vals = ((alive @ tq[k]) * alive).sum(axis=1) % p
            alive = alive[vals == b2flat[k]]
            if alive.shape[0] == 0:
                break
        for row in alive.astype(np.int64):
            mat = np.tensordot(row, basis, axes=(0, 0)) % p
            sols.append(
                [[spec.element(int(mat[i, j])) for j in range(n)] for i in range(n)]
            )
    return sols


def _transporter_generic(m1, m2, cb: CentralizerBasis, spec: FieldSpec) -> list:
    n = cb.n
    sols = []
    for coeffs in itertools.product(spec.elements(), repeat=cb.dimension):
        mat = [[spec.zero() for _ in range(n)] for _ in range(n)]
        for c, bas in zip(coeffs, cb.basis):
            if c.is_zero():
                continue
            for i in range(n):
                for j in range(n):
                    mat[i][j] = mat[i][j] + c * bas[i][j]
        at = linalg.transpose(mat)
        if linalg.mat_eq(linalg.mat_mul(at, linalg.mat_mul(m1, mat)), m2):
            sols.append(mat)
    return sols


@dataclass(frozen=True)
class FixedGroupReport:
    full_order: int
    det1_order: int
    dimension_d: int
    field_label: str
    budget_used: int
    closure_certified: bool
    abelian: bool
    elements: tuple
    sample: tuple
    elapsed_seconds: float

    def to_dict(self) -> dict:
        return {
            "full_order": self.full_order,
            "det1_order": self.det1_order,
            "dimension_d": self.dimension_d,
            "field": self.field_label,
            "budget_used": self.budget_used,
            "closure_certified": self.closure_certified,
            "abelian": self.abelian,
        }


def fixed_orthogonal_order(
    form: FormLike,
    rep: GroupRep,
    budget: int = DEFAULT_BUDGET,
) -> FixedGroupReport:
    """Exact order of the orthogonal elements fixed by the representation.

    Enumerates all field combinations of the centralizer basis, keeps those
    preserving the form, and certifies that the result is a group.  Scheme
    structure over the full ring is out of reach of a fiber computation;
    only orders are reported.
    """
    t0 = time.perf_counter()
    spec = rep.field
    elements = orthogonal_transporter(form, form, rep, budget=budget)
    dets = [linalg.det([list(r) for r in m]) for m in elements]
    one = spec.one()
    for dv in dets:
        assert dv == one or dv == -one, "orthogonal element with det != +-1"
    det1 = sum(1 for dv in dets if dv == one)
    closure_ok = _certify_group(elements, spec)
    abelian = _is_abelian(elements, spec)
    d = centralizer_basis(rep).dimension
    return FixedGroupReport(
        full_order=len(elements),
        det1_order=det1,
        dimension_d=d,
        field_label=spec.label(),
        budget_used=spec.order**d,
        closure_certified=closure_ok,
        abelian=abelian,
        elements=elements,
        sample=elements[: min(8, len(elements))],
        elapsed_seconds=time.perf_counter() - t0,
    )


def _certify_group(elements: tuple, spec: FieldSpec) -> bool:
    """Closed under product and inverse, and contains the identity."""
    if not elements:
        return False
    n = len(elements[0])
    ident = linalg.mat_freeze(linalg.identity(spec, n))
    if ident not in set(elements):
        return False
    if spec.degree == 1:
        p = spec.p
        arr = np.array(
            [[[e.a for e in row] for row in m] for m in elements], dtype=np.int64
        )
        keys = {a.tobytes() for a in arr}
        for i in range(len(arr)):
            prods = (arr[i] @ arr) % p
            for pr in prods:
                if pr.tobytes() not in keys:
                    return False
    else:
        index = set(elements)
        mats = [[list(r) for r in m] for m in elements]
        for a in mats:
            for b in mats:
                if linalg.mat_freeze(linalg.mat_mul(a, b)) not in index:
                    return False
    index = set(elements)
    for m in elements:
        inv = linalg.inverse([list(r) for r in m])
        if inv is None or linalg.mat_freeze(inv) not in index:
            return False
    return True


def _is_abelian(elements: tuple, spec: FieldSpec) -> bool:
    if spec.degree == 1:
        p = spec.p
        arr = np.array(
            [[[e.a for e in row] for row in m] for m in elements], dtype=np.int64
        )
        for i in range(len(arr)):
            ab = (arr[i] @ arr) % p
            ba = (arr @ arr[i]) % p
            if not (ab == ba).all():
                return False
        return True
    mats = [[list(r) for r in m] for m in elements]
    for i in range(len(mats)):
        for j in range(i + 1, len(mats)):
            ab = linalg.mat_mul(mats[i], mats[j])
            ba = linalg.mat_mul(mats[j], mats[i])
            if not linalg.mat_eq(ab, ba):
                return False
    return True


def generated_group_order(rep: GroupRep, budget: int = 100_000) -> dict:
    """Order of the generated matrix group, with the faithfulness check."""
    order = len(rep.closure(budget=budget))
    return {
        "order": order,
        "expected": rep.expected_order,
        "faithful": rep.is_faithful(),
        "label": rep.label,
    }
