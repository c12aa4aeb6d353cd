"""Parsers for the spec-string surface of the CLI.

Grammar summary:
  field   "GF(11)" | "GF(11^2)"
  curve   "y^2 = x^3 + a*x + b over GF(q)"  (terms may be omitted or negative)
  element "poly(x) + poly(x)*y", e.g. "x^2 + 3", "(x+1)*y", "x + y"
  ideal   "<g1, g2, ...>" with generators in the element grammar
  form    "I3" | "diag(1,2,3)" | JSON matrix of integers
  rep     "S3" | "S3-rank2-F11" | "Sn-2-block(4)" | "trivial(2)" | "S2-swap"
"""

from __future__ import annotations

import json
import re

from .coordring import CoordRing, FractionalIdeal, RingElement
from .curves import CurveData
from .fields import FieldSpec, make_field
from .forms import (
    GramForm,
    GroupRep,
    block_permutation_rep,
    diagonal_form,
    identity_form,
    make_form,
    s3_rank2_rep,
    swap_rep,
    trivial_rep,
)
from .poly import Poly


class ParseError(ValueError):
    pass


_FIELD_RE = re.compile(r"^\s*GF\(\s*(\d+)\s*(?:\^\s*(\d+)\s*)?\)\s*$")


def parse_field(spec: str) -> FieldSpec:
    m = _FIELD_RE.match(spec)
    if not m:
        raise ParseError(f"bad field spec {spec!r}; expected GF(p) or GF(p^2)")
    p = int(m.group(1))
    degree = int(m.group(2)) if m.group(2) else 1
    try:
        return make_field(p, degree)
    except ValueError as e:
        raise ParseError(str(e)) from e


def _split_terms(s: str) -> list:
    """Split on top-level + and -, keeping signs; parentheses protected."""
    terms = []
    current = ""
    sign = 1
    depth = 0
    for ch in s:
        if ch == "(":
            depth += 1
            current += ch
        elif ch == ")":
            depth -= 1
            if depth < 0:
                raise ParseError(f"unbalanced parentheses in {s!r}")
            current += ch
        elif ch in "+-" and depth == 0:
            if current.strip():
                terms.append((sign, current.strip()))
                current = ""
                sign = 1
            if ch == "-":
                sign = -sign
        else:
            current += ch
    if depth != 0:
        raise ParseError(f"unbalanced parentheses in {s!r}")
    if current.strip():
        terms.append((sign, current.strip()))
    return terms


_XPOW_RE = re.compile(r"^x(?:\^(\d+))?$")


def _parse_poly_term(term: str, spec: FieldSpec):
    """One polynomial term 'c', 'x^k' or 'c*x^k' -> (coefficient, power)."""
    factors = [f.strip() for f in term.split("*")]
    coeff = 1
    power = 0
    for f in factors:
        if not f:
            raise ParseError(f"empty factor in term {term!r}")
        m = _XPOW_RE.match(f)
        if m:
            power += int(m.group(1)) if m.group(1) else 1
        elif f.isdigit():
            coeff *= int(f)
        else:
            raise ParseError(f"bad polynomial factor {f!r}")
    return coeff, power


def parse_poly(s: str, spec: FieldSpec) -> Poly:
    s = s.strip()
    if s.startswith("(") and s.endswith(")") and _balanced_whole(s):
        s = s[1:-1]
    coeffs: dict = {}
    for sign, term in _split_terms(s):
        c, k = _parse_poly_term(term, spec)
        coeffs[k] = coeffs.get(k, 0) + sign * c
    if not coeffs:
        return Poly.zero(spec)
    top = max(coeffs)
    return Poly(spec, [spec.element(coeffs.get(k, 0)) for k in range(top + 1)])


def _balanced_whole(s: str) -> bool:
    depth = 0
    for i, ch in enumerate(s):
        if ch == "(":
            depth += 1
        elif ch == ")":
            depth -= 1
            if depth == 0 and i != len(s) - 1:
                return False
    return True


def parse_element(s: str, ring: CoordRing) -> RingElement:
    """An element 'poly + poly*y'; each additive term may carry one y."""
    spec = ring.field
    a_terms = []
    b_terms = []
    for sign, term in _split_terms(s):
        if term == "y":
            b_terms.append((sign, "1"))
            continue
        if term.endswith("*y"):
            b_terms.append((sign, term[:-2].strip()))
            continue
        if "y" in term:
            raise ParseError(f"bad y usage in term {term!r}; write poly*y")
        a_terms.append((sign, term))

    def assemble(terms):
        p = Poly.zero(spec)
        for sign, t in terms:
            q = parse_poly(t, spec)
            p = p + q if sign > 0 else p - q
        return p

    return RingElement(ring, assemble(a_terms), assemble(b_terms))


_CURVE_RE = re.compile(
    r"^\s*y\^2\s*=\s*(?P<rhs>.+?)\s+over\s+(?P<field>GF\([^)]*\))\s*$"
)


def parse_curve(spec: str) -> CurveData:
    m = _CURVE_RE.match(spec)
    if not m:
        raise ParseError(
            f"bad curve spec {spec!r}; expected 'y^2 = x^3 + a*x + b over GF(q)'"
        )
    field = parse_field(m.group("field"))
    return curve_from_rhs(m.group("rhs"), field)


def curve_from_rhs(rhs: str, field: FieldSpec) -> CurveData:
    """Monic cubic right-hand side 'x^3 + a*x + b' over a given field."""
    poly = parse_poly(rhs, field)
    if poly.degree != 3 or poly.leading() != field.one():
        raise ParseError(f"right-hand side {rhs!r} is not a monic cubic")
    if not poly.coeff(2).is_zero():
        raise ParseError("the x^2 coefficient must be zero: use x^3 + a*x + b")
    return CurveData(field, poly.coeff(1), poly.coeff(0))


def parse_ideal(s: str, ring: CoordRing) -> FractionalIdeal:
    s = s.strip()
    if not (s.startswith("<") and s.endswith(">")):
        raise ParseError(f"bad ideal spec {s!r}; expected '<g1, g2>'")
    inner = s[1:-1]
    gens = [parse_element(part, ring) for part in inner.split(",") if part.strip()]
    if not gens:
        raise ParseError("ideal spec has no generators")
    return FractionalIdeal(ring, gens)


_IN_RE = re.compile(r"^I(\d+)$")
_DIAG_RE = re.compile(r"^diag\(([^)]*)\)$")


def parse_form(s: str, ring: CoordRing) -> GramForm:
    s = s.strip()
    m = _IN_RE.match(s)
    if m:
        return identity_form(ring, int(m.group(1)))
    m = _DIAG_RE.match(s)
    if m:
        entries = [int(t.strip()) for t in m.group(1).split(",") if t.strip()]
        if not entries:
            raise ParseError("empty diagonal form")
        return diagonal_form(ring, entries)
    if s.startswith("["):
        try:
            rows = json.loads(s)
        except json.JSONDecodeError as e:
            raise ParseError(f"bad JSON matrix: {e}") from e
        return make_form(ring, rows)
    raise ParseError(f"bad form spec {s!r}; expected In, diag(...) or a JSON matrix")


_BLOCK_RE = re.compile(r"^Sn-2-block\((\d+)\)$")
_TRIV_RE = re.compile(r"^trivial\((\d+)\)$")

TRANSFERABLE_REPS = ("Sn-2-block", "trivial", "S2-swap")


def parse_rep(s: str, field: FieldSpec) -> GroupRep:
    s = s.strip()
    if s in ("S3", "S3-rank2-F11"):
        return s3_rank2_rep(field)
    if s == "S2-swap":
        return swap_rep(field)
    m = _BLOCK_RE.match(s)
    if m:
        return block_permutation_rep(field, int(m.group(1)))
    m = _TRIV_RE.match(s)
    if m:
        return trivial_rep(field, int(m.group(1)))
    raise ParseError(
        f"bad rep spec {s!r}; expected S3, S2-swap, Sn-2-block(n) or trivial(n)"
    )


def rep_factory(s: str):
    """A field -> GroupRep builder for specs that transfer across fields."""
    s = s.strip()
    if not any(s.startswith(t) for t in TRANSFERABLE_REPS):
        return None
    return lambda spec: parse_rep(s, spec)
