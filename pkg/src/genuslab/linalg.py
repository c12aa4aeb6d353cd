"""Exact dense linear algebra over a FieldSpec.

Matrices are lists (or tuples) of rows of FieldElement.  Everything is
plain Gaussian elimination; sizes here stay in the tens, so clarity wins
over speed.  Reduction is deterministic: pivots are the first nonzero
column left to right, free variables are set to zero when solving.
"""

from __future__ import annotations

from typing import Optional, Sequence

from .fields import FieldElement, FieldSpec


def identity(spec: FieldSpec, n: int) -> list:
    return [[spec.one() if i == j else spec.zero() for j in range(n)] for i in range(n)]


def mat_freeze(m: Sequence[Sequence[FieldElement]]) -> tuple:
    return tuple(tuple(row) for row in m)


def mat_key(m) -> tuple:
    return tuple(e.sort_key() for row in m for e in row)


def mat_mul(a, b) -> list:
    n, k, m = len(a), len(b), len(b[0])
    spec = a[0][0].spec
    out = []
    for i in range(n):
        row = []
        for j in range(m):
            s = spec.zero()
            for t in range(k):
                s = s + a[i][t] * b[t][j]
            row.append(s)
        out.append(row)
    return out


def mat_vec(a, v) -> list:
    spec = a[0][0].spec
    out = []
    for row in a:
        s = spec.zero()
        for e, x in zip(row, v):
            s = s + e * x
        out.append(s)
    return out


def transpose(a) -> list:
    return [list(col) for col in zip(*a)]


def mat_eq(a, b) -> bool:
    return all(x == y for ra, rb in zip(a, b) for x, y in zip(ra, rb))


def rref(rows: Sequence[Sequence[FieldElement]]) -> tuple[list, list]:
    """Reduced row echelon form; returns (reduced rows, pivot columns)."""
    if not rows:
        return [], []
    m = [list(r) for r in rows]
    ncols = len(m[0])
    pivots = []
    r = 0
    for c in range(ncols):
        pr = None
        for i in range(r, len(m)):
            if not m[i][c].is_zero():
                pr = i
                break
        if pr is None:
            continue
        m[r], m[pr] = m[pr], m[r]
        inv = m[r][c].inv()
        m[r] = [e * inv for e in m[r]]
        for i in range(len(m)):
            if i != r and not m[i][c].is_zero():
                f = m[i][c]
                m[i] = [a - f * b for a, b in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
        if r == len(m):
            break
    return m[:r], pivots


def rank(rows) -> int:
    return len(rref(rows)[0])


def solve(a, b) -> Optional[list]:
    """One solution of A x = b with free variables zero, or None."""
    if not a:
        return None
    spec = a[0][0].spec
    aug = [list(row) + [bv] for row, bv in zip(a, b)]
    red, pivots = rref(aug)
    ncols = len(a[0])
    for row in red:
        if all(e.is_zero() for e in row[:ncols]) and not row[ncols].is_zero():
            return None
    x = [spec.zero()] * ncols
    for row, pc in zip(red, pivots):
        if pc == ncols:
            return None
        x[pc] = row[ncols]
    return x


def kernel_basis(a) -> list:
    """Basis of the null space of A, one vector per free column."""
    if not a:
        return []
    spec = a[0][0].spec
    red, pivots = rref(a)
    ncols = len(a[0])
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for fc in free:
        v = [spec.zero()] * ncols
        v[fc] = spec.one()
        for row, pc in zip(red, pivots):
            v[pc] = -row[fc]
        basis.append(v)
    return basis


def det(a) -> FieldElement:
    spec = a[0][0].spec
    n = len(a)
    m = [list(r) for r in a]
    result = spec.one()
    for c in range(n):
        pr = None
        for i in range(c, n):
            if not m[i][c].is_zero():
                pr = i
                break
        if pr is None:
            return spec.zero()
        if pr != c:
            m[c], m[pr] = m[pr], m[c]
            result = -result
        result = result * m[c][c]
        inv = m[c][c].inv()
        for i in range(c + 1, n):
            if not m[i][c].is_zero():
                f = m[i][c] * inv
                m[i] = [x - f * y for x, y in zip(m[i], m[c])]
    return result


def inverse(a) -> Optional[list]:
    spec = a[0][0].spec
    n = len(a)
    aug = [list(row) + ident_row for row, ident_row in zip(a, identity(spec, n))]
    red, pivots = rref(aug)
    if pivots[:n] != list(range(n)):
        return None
    return [row[n:] for row in red[:n]]
