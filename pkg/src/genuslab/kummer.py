"""Kummer pairs (L, h) and the quadratic torsor algebra R + L.

A degree-m pair is an ideal L together with a generator witness g for the
m-fold ideal product, standing in for the trivialization h: any two
generators differ by a unit, and the unit-square ambiguity is what the
triviality test tracks.  The inverse trivialization h^{-1}(l1 (x) l2) is
exact division by g, with the divisibility check enforced on every
multiplication.
"""

from __future__ import annotations

from dataclasses import dataclass

from .coordring import (
    DEFAULT_DEGREE_BOUND,
    FractionalIdeal,
    RingElement,
    divide_exact,
    ideal_membership,
    ideal_power,
    is_principal,
    is_square_in_ring,
)
from .fields import is_square
from .verdicts import Verdict, bounded, no, yes


class NotPrincipalError(ValueError):
    """The m-fold product of the ideal is not certified principal."""

    def __init__(self, message: str, verdict: Verdict):
        super().__init__(message)
        self.verdict = verdict


@dataclass(frozen=True)
class KummerPair:
    ideal: FractionalIdeal
    degree: int
    generator: RingElement

    def __str__(self) -> str:
        return f"({self.ideal}, m={self.degree}, g={self.generator})"


def make_kummer_pair(
    ideal: FractionalIdeal,
    m: int,
    degree_bound: int = DEFAULT_DEGREE_BOUND,
    generator: RingElement = None,
) -> KummerPair:
    """Validated pair: the m-fold product must equal <g>, both containments
    checked (every generator of L^m divisible by g, and g a member of L^m).
    """
    if m < 1:
        raise ValueError("pair degree m must be >= 1")
    lm = ideal_power(ideal, m)
    if generator is None:
        verdict = is_principal(lm, degree_bound)
        if not verdict:
            raise NotPrincipalError(
                f"L^{m} = {lm} is not certified principal: {verdict.describe()}",
                verdict,
            )
        generator = verdict.witness
    for g in lm.generators:
        if divide_exact(g, generator) is None:
            raise NotPrincipalError(
                f"{generator} does not divide the product generator {g}",
                no("containment L^m in <g> fails"),
            )
    member = ideal_membership(generator, lm, degree_bound)
    if not member:
        raise NotPrincipalError(
            f"{generator} not witnessed inside L^{m}", member
        )
    return KummerPair(ideal, m, generator)


class TorsorAlgebra:
    """The algebra R + L of a degree-2 pair.

    Elements are pairs (r, l); the product of two pure-L elements drops into
    the ring through division by the generator witness:
    (r1, l1) (r2, l2) = (r1 r2 + l1 l2 / g, r1 l2 + r2 l1).
    """

    def __init__(self, pair: KummerPair):
        if pair.degree != 2:
            raise ValueError("torsor algebras are built from degree-2 pairs")
        self.pair = pair
        self.ring = pair.ideal.ring

    def one(self) -> tuple:
        return (self.ring.one(), self.ring.zero())

    def multiply(self, u: tuple, v: tuple) -> tuple:
        r1, l1 = u
        r2, l2 = v
        cross = l1 * l2
        dropped = divide_exact(cross, self.pair.generator)
        if dropped is None:
            raise ValueError(
                f"malformed pair: {cross} is not divisible by {self.pair.generator}"
            )
        return (r1 * r2 + dropped, r1 * l2 + r2 * l1)


def algebra_multiply(algebra: TorsorAlgebra, u: tuple, v: tuple) -> tuple:
    return algebra.multiply(u, v)


def torsor_trivial_over_ring(
    pair: KummerPair, degree_bound: int = DEFAULT_DEGREE_BOUND
) -> Verdict:
    """Is the degree-2 torsor trivial over the ring itself?

    Trivial exactly when L is principal, say L = <g'>, and the unit
    g / g'^2 is a square: the witness is then a square root of g inside the
    ring.  A non-principal L certifies non-triviality; the splitting datum
    (adjoin a square root of g) is reported.
    """
    if pair.degree != 2:
        raise ValueError("triviality test applies to degree-2 pairs")
    ring = pair.ideal.ring
    pr = is_principal(pair.ideal, degree_bound)
    if pr.is_no:
        return no(
            "underlying module is non-principal; the algebra only splits after "
            f"adjoining a square root of {pair.generator}",
            splitting_datum=f"sqrt({pair.generator})",
            class_point=pr.extra.get("class_point"),
        )
    if pr.is_bounded:
        return bounded("principality of L undecided: " + pr.reason)
    gprime = pr.witness
    sq = divide_exact(pair.generator, gprime * gprime)
    if sq is None or not sq.is_unit():
        raise AssertionError("generator does not differ from g'^2 by a unit")
    ok, root_unit = is_square(sq.a.coeff(0))
    if not ok:
        return no(
            f"trivialization unit {sq} is a non-square; splitting requires "
            f"adjoining a square root of {pair.generator}",
            splitting_datum=f"sqrt({pair.generator})",
        )
    root = gprime.scale(root_unit)
    assert root * root == pair.generator
    ring_check = is_square_in_ring(pair.generator, degree_bound)
    assert bool(ring_check), "square test disagrees with the unit-adjusted route"
    return yes(root, "unit-adjusted generator is a square; torsor splits over the ring")
