"""Dense univariate polynomials over a FieldSpec.

Coefficients are stored ascending with no trailing zeros; the zero
polynomial has an empty coefficient tuple and degree -1.  Also provides the
exact polynomial square root and the truncated power-series helpers used by
the coordinate-ring valuation machinery.
"""

from __future__ import annotations

from typing import Optional, Sequence

from .fields import FieldElement, FieldSpec


class Poly:
    __slots__ = ("spec", "coeffs")

    def __init__(self, spec: FieldSpec, coeffs: Sequence[FieldElement]):
        while coeffs and coeffs[-1].is_zero():
            coeffs = coeffs[:-1]
        self.spec = spec
        self.coeffs = tuple(coeffs)

    @classmethod
    def zero(cls, spec: FieldSpec) -> "Poly":
        return cls(spec, ())

    @classmethod
    def const(cls, spec: FieldSpec, c) -> "Poly":
        if isinstance(c, int):
            c = spec.element(c)
        return cls(spec, (c,))

    @classmethod
    def x(cls, spec: FieldSpec) -> "Poly":
        return cls(spec, (spec.zero(), spec.one()))

    @classmethod
    def from_ints(cls, spec: FieldSpec, ints: Sequence[int]) -> "Poly":
        return cls(spec, tuple(spec.element(c) for c in ints))

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return not self.coeffs

    def leading(self) -> FieldElement:
        if self.is_zero():
            raise ValueError("zero polynomial has no leading coefficient")
        return self.coeffs[-1]

    def coeff(self, k: int) -> FieldElement:
        return self.coeffs[k] if 0 <= k <= self.degree else self.spec.zero()

    def __add__(self, other: "Poly") -> "Poly":
        n = max(len(self.coeffs), len(other.coeffs))
        return Poly(self.spec, [self.coeff(k) + other.coeff(k) for k in range(n)])

    def __sub__(self, other: "Poly") -> "Poly":
        n = max(len(self.coeffs), len(other.coeffs))
        return Poly(self.spec, [self.coeff(k) - other.coeff(k) for k in range(n)])

    def __neg__(self) -> "Poly":
        return Poly(self.spec, [-c for c in self.coeffs])

    def __mul__(self, other: "Poly") -> "Poly":
        if self.is_zero() or other.is_zero():
            return Poly.zero(self.spec)
        out = [self.spec.zero()] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, ci in enumerate(self.coeffs):
            if ci.is_zero():
                continue
            for j, cj in enumerate(other.coeffs):
                out[i + j] = out[i + j] + ci * cj
        return Poly(self.spec, out)

    def scale(self, c: FieldElement) -> "Poly":
        return Poly(self.spec, [c * k for k in self.coeffs])

    def divmod(self, other: "Poly") -> tuple["Poly", "Poly"]:
        if other.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        rem = list(self.coeffs)
        q = [self.spec.zero()] * max(0, len(rem) - len(other.coeffs) + 1)
        linv = other.leading().inv()
        d = other.degree
        for k in range(len(rem) - 1 - d, -1, -1):
            c = rem[k + d] * linv
            if c.is_zero():
                continue
            q[k] = c
            for j, oc in enumerate(other.coeffs):
                rem[k + j] = rem[k + j] - c * oc
        return Poly(self.spec, q), Poly(self.spec, rem)

    def divides(self, other: "Poly") -> bool:
        if self.is_zero():
            return other.is_zero()
        _, r = other.divmod(self)
        return r.is_zero()

    def monic(self) -> "Poly":
        if self.is_zero():
            return self
        return self.scale(self.leading().inv())

    def eval(self, x: FieldElement) -> FieldElement:
        acc = self.spec.zero()
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def derivative(self) -> "Poly":
        spec = self.spec
        return Poly(spec, [spec.element(k) * c for k, c in enumerate(self.coeffs)][1:])

    def sort_key(self) -> tuple:
        return (self.degree, tuple(c.sort_key() for c in self.coeffs))

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Poly):
            return NotImplemented
        return self.spec == other.spec and self.coeffs == other.coeffs

    def __hash__(self) -> int:
        return hash((self.spec, self.coeffs))

    def __str__(self) -> str:
        if self.is_zero():
            return "0"
        parts = []
        for k in range(self.degree, -1, -1):
            c = self.coeff(k)
            if c.is_zero():
                continue
            cs = str(c)
            if k == 0:
                parts.append(cs)
            else:
                xs = "x" if k == 1 else f"x^{k}"
                parts.append(xs if cs == "1" else f"{cs}*{xs}")
        return " + ".join(parts)

    def __repr__(self) -> str:
        return f"Poly({self})"


def poly_sqrt(u: Poly) -> Optional[Poly]:
    """Exact polynomial square root, or None when no root exists."""
    from .fields import is_square

    if u.is_zero():
        return u
    if u.degree % 2 != 0:
        return None
    ok, lead_root = is_square(u.leading())
    if not ok:
        return None
    m = u.degree // 2
    spec = u.spec
    v = [spec.zero()] * (m + 1)
    v[m] = lead_root
    two_lead_inv = (lead_root + lead_root).inv()
    for k in range(m - 1, -1, -1):
        # coefficient of x^(m+k) in v^2 must match u
        s = spec.zero()
        for i in range(k + 1, m + 1):
            j = m + k - i
            if 0 <= j <= m:
                s = s + v[i] * v[j]
        v[k] = (u.coeff(m + k) - s) * two_lead_inv
    root = Poly(spec, v)
    return root if root * root == u else None


# Truncated power series as plain coefficient lists of a fixed length.

def series_trunc(coeffs: Sequence[FieldElement], prec: int, spec: FieldSpec) -> list:
    out = list(coeffs[:prec])
    out.extend(spec.zero() for _ in range(prec - len(out)))
    return out


def series_add(a, b, spec):
    return [x + y for x, y in zip(a, b)]


def series_mul(a, b, prec, spec):
    out = [spec.zero()] * prec
    for i, ci in enumerate(a):
        if ci.is_zero() or i >= prec:
            continue
        for j in range(prec - i):
            if not b[j].is_zero():
                out[i + j] = out[i + j] + ci * b[j]
    return out


def series_inv(a, prec, spec):
    """Multiplicative inverse of a series with invertible constant term."""
    if a[0].is_zero():
        raise ZeroDivisionError("series has no inverse: zero constant term")
    out = [spec.zero()] * prec
    out[0] = a[0].inv()
    for k in range(1, prec):
        s = spec.zero()
        for i in range(1, k + 1):
            if i < len(a):
                s = s + a[i] * out[k - i]
        out[k] = -out[0] * s
    return out


def series_of_poly(p: Poly, s, prec, spec):
    """Compose: evaluate polynomial p at a series s, truncated."""
    acc = [spec.zero()] * prec
    for c in reversed(p.coeffs if p.coeffs else (spec.zero(),)):
        acc = series_mul(acc, s, prec, spec)
        acc[0] = acc[0] + c
    return acc
