"""Exact arithmetic in GF(p) and its quadratic extension GF(p^2).

The extension is realized as GF(p)(w) with w^2 = d for a quadratic
non-residue d.  When p = 3 (mod 4) the non-residue -1 is preferred, so the
adjoined root is a square root of -1 and prints as "i".  Elements are
immutable and every operation returns a fresh reduced value, which keeps
both types safe to share between workers.

Intended scale is q up to roughly 10^4: squareness is decided by the Euler
criterion and root witnesses are found by exhaustion over the field.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Iterator, Optional


def is_prime(n: int) -> bool:
    """Trial-division primality test, adequate for desk-scale moduli."""
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    f = 3
    while f * f <= n:
        if n % f == 0:
            return False
        f += 2
    return True


def smallest_nonresidue(p: int) -> int:
    """Smallest positive quadratic non-residue modulo an odd prime p."""
    for d in range(2, p):
        if pow(d, (p - 1) // 2, p) == p - 1:
            return d
    raise ValueError(f"no quadratic non-residue modulo {p}")


@dataclass(frozen=True)
class FieldSpec:
    """A finite field GF(p) or GF(p^2) = GF(p)(sqrt(d)).

    d is the extension-defining non-residue, stored as a representative in
    [0, p); it is None exactly when degree == 1.
    """

    p: int
    degree: int = 1
    d: Optional[int] = None

    @property
    def order(self) -> int:
        return self.p ** self.degree

    def label(self) -> str:
        return f"GF({self.p})" if self.degree == 1 else f"GF({self.p}^2)"

    def element(self, a: int, b: int = 0) -> "FieldElement":
        if b % self.p != 0 and self.degree == 1:
            raise ValueError("second coordinate requires a degree-2 field")
        return FieldElement(self, a % self.p, b % self.p)

    def zero(self) -> "FieldElement":
        return FieldElement(self, 0, 0)

    def one(self) -> "FieldElement":
        return FieldElement(self, 1, 0)

    def elements(self) -> Iterator["FieldElement"]:
        """All q elements in canonical lexicographic (a, b) order."""
        if self.degree == 1:
            for a in range(self.p):
                yield FieldElement(self, a, 0)
        else:
            for a in range(self.p):
                for b in range(self.p):
                    yield FieldElement(self, a, b)

    def nonresidue(self) -> "FieldElement":
        """Canonical non-square element, used as a square-class witness."""
        return _nonresidue_of(self)

    def root_symbol(self) -> str:
        return "i" if self.d == self.p - 1 else "w"


@lru_cache(maxsize=None)
def _nonresidue_of(spec: FieldSpec) -> "FieldElement":
    for e in spec.elements():
        if not e.is_zero() and not is_square(e)[0]:
            return e
    raise ValueError(f"no non-square in {spec.label()}")


class FieldElement:
    """An element a + b*w of the owning FieldSpec, coordinates in [0, p)."""

    __slots__ = ("spec", "a", "b")

    def __init__(self, spec: FieldSpec, a: int, b: int = 0):
        self.spec = spec
        self.a = a % spec.p
        self.b = b % spec.p

    def _check(self, other: "FieldElement") -> None:
        if self.spec != other.spec:
            raise ValueError("mixed field specs")

    def is_zero(self) -> bool:
        return self.a == 0 and self.b == 0

    def coords(self) -> tuple:
        return (self.a,) if self.spec.degree == 1 else (self.a, self.b)

    def sort_key(self) -> tuple:
        return (self.a, self.b)

    def __add__(self, other: "FieldElement") -> "FieldElement":
        self._check(other)
        return FieldElement(self.spec, self.a + other.a, self.b + other.b)

    def __sub__(self, other: "FieldElement") -> "FieldElement":
        self._check(other)
        return FieldElement(self.spec, self.a - other.a, self.b - other.b)

    def __neg__(self) -> "FieldElement":
        return FieldElement(self.spec, -self.a, -self.b)

    def __mul__(self, other: "FieldElement") -> "FieldElement":
        self._check(other)
        p = self.spec.p
        if self.spec.degree == 1:
            return FieldElement(self.spec, self.a * other.a, 0)
        d = self.spec.d
        a = self.a * other.a + self.b * other.b * d
        b = self.a * other.b + self.b * other.a
        return FieldElement(self.spec, a % p, b % p)

    def inv(self) -> "FieldElement":
        if self.is_zero():
            raise ZeroDivisionError("inverse of zero field element")
        p = self.spec.p
        if self.spec.degree == 1:
            return FieldElement(self.spec, pow(self.a, -1, p), 0)
        # 1/(a + b w) = (a - b w) / (a^2 - d b^2); the norm is nonzero
        # because d is a non-residue.
        n = (self.a * self.a - self.spec.d * self.b * self.b) % p
        ninv = pow(n, -1, p)
        return FieldElement(self.spec, self.a * ninv, -self.b * ninv)

    def __truediv__(self, other: "FieldElement") -> "FieldElement":
        return self * other.inv()

    def __pow__(self, n: int) -> "FieldElement":
        if n < 0:
            return self.inv() ** (-n)
        result = self.spec.one()
        base = self
        while n > 0:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def frobenius(self) -> "FieldElement":
        """The p-power map; conjugation on the degree-2 field."""
        if self.spec.degree == 1:
            return self
        return FieldElement(self.spec, self.a, -self.b)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, FieldElement):
            return NotImplemented
        return self.spec == other.spec and self.a == other.a and self.b == other.b

    def __hash__(self) -> int:
        return hash((self.spec.p, self.spec.degree, self.a, self.b))

    def __str__(self) -> str:
        if self.spec.degree == 1 or self.b == 0:
            return str(self.a)
        sym = self.spec.root_symbol()
        if self.a == 0:
            return f"{self.b}{sym}" if self.b != 1 else sym
        bs = sym if self.b == 1 else f"{self.b}{sym}"
        return f"{self.a}+{bs}"

    def __repr__(self) -> str:
        return f"FieldElement({self.spec.label()}, {self.coords()})"


def make_field(p: int, degree: int = 1) -> FieldSpec:
    """Validated field constructor.

    For degree 2 the defining non-residue is -1 when p = 3 (mod 4),
    otherwise the smallest positive non-residue found by scanning 2, 3, ...
    """
    if p < 3:
        raise ValueError(f"p = {p}: need an odd prime >= 3")
    if p % 2 == 0:
        raise ValueError(f"p = {p} is even: need an odd prime")
    if not is_prime(p):
        raise ValueError(f"p = {p} is not prime")
    if degree not in (1, 2):
        raise ValueError(f"degree {degree}: only 1 and 2 are supported")
    if degree == 1:
        return FieldSpec(p, 1, None)
    d = p - 1 if p % 4 == 3 else smallest_nonresidue(p)
    return FieldSpec(p, 2, d)


def arith(op: str, a: FieldElement, b: Optional[FieldElement] = None) -> FieldElement:
    """Dispatcher surface for the CLI: op in {add, mul, neg, inv}."""
    if op == "add":
        return a + b
    if op == "mul":
        return a * b
    if op == "neg":
        return -a
    if op == "inv":
        return a.inv()
    raise ValueError(f"unknown field operation {op!r}")


def is_square(a: FieldElement) -> tuple[bool, Optional[FieldElement]]:
    """Euler-criterion square test with an exhaustive root witness.

    Returns (True, r) with r*r == a, or (False, None).  Zero is a square
    with witness zero.  The witness is the first root in canonical element
    order, so results are deterministic.
    """
    if a.is_zero():
        return True, a.spec.zero()
    q = a.spec.order
    if a ** ((q - 1) // 2) != a.spec.one():
        return False, None
    for r in a.spec.elements():
        if r * r == a:
            return True, r
    raise AssertionError("Euler criterion passed but no root found")
