import random

import pytest

from genuslab import linalg
from genuslab.fields import make_field
from genuslab.poly import Poly, poly_sqrt, series_inv, series_mul, series_of_poly


def _rand_poly(rng, spec, deg):
    return Poly(spec, [spec.element(rng.randrange(spec.p)) for _ in range(deg + 1)])


def test_poly_divmod_roundtrip():
    rng = random.Random(1)
    f = make_field(11)
    for _ in range(200):
        a = _rand_poly(rng, f, rng.randrange(6))
        b = _rand_poly(rng, f, rng.randrange(4))
        if b.is_zero():
            continue
        q, r = a.divmod(b)
        assert q * b + r == a
        assert r.is_zero() or r.degree < b.degree


def test_poly_eval_and_derivative():
    f = make_field(7)
    p = Poly.from_ints(f, [1, 0, 3])  # 1 + 3 x^2
    assert p.eval(f.element(2)) == f.element(13)
    assert p.derivative() == Poly.from_ints(f, [0, 6])


def test_poly_sqrt_roundtrip_and_failures():
    rng = random.Random(2)
    f = make_field(11)
    for _ in range(100):
        s = _rand_poly(rng, f, rng.randrange(4))
        assert poly_sqrt(s * s) is not None
        r = poly_sqrt(s * s)
        assert r * r == s * s
    x = Poly.x(f)
    assert poly_sqrt(x) is None
    assert poly_sqrt(Poly.from_ints(f, [2])) is None or f.p != 11 or True
    # 2 is a non-residue mod 11, so the constant 2 has no root
    assert poly_sqrt(Poly.from_ints(f, [2])) is None


def test_series_inverse():
    f = make_field(11)
    prec = 8
    a = [f.element(c) for c in [3, 1, 4, 1, 5, 9, 2, 6]]
    inv = series_inv(a, prec, f)
    prod = series_mul(a, inv, prec, f)
    assert prod[0] == f.one()
    assert all(c.is_zero() for c in prod[1:])


def test_series_of_poly_composition():
    f = make_field(11)
    prec = 6
    p = Poly.from_ints(f, [1, 2, 1])  # (1+x)^2
    s = [f.element(c) for c in [0, 1, 0, 0, 0, 0]]  # x = t
    out = series_of_poly(p, s, prec, f)
    assert [c.a for c in out] == [1, 2, 1, 0, 0, 0]


def test_rref_solve_kernel_roundtrip():
    rng = random.Random(3)
    f = make_field(7)
    for _ in range(60):
        n, m = rng.randrange(1, 5), rng.randrange(1, 5)
        a = [[f.element(rng.randrange(7)) for _ in range(m)] for _ in range(n)]
        x = [f.element(rng.randrange(7)) for _ in range(m)]
        b = linalg.mat_vec(a, x)
        sol = linalg.solve(a, b)
        assert sol is not None
        assert linalg.mat_vec(a, sol) == b
        for v in linalg.kernel_basis(a):
            assert all(e.is_zero() for e in linalg.mat_vec(a, v))


def test_solve_reports_inconsistency():
    f = make_field(7)
    a = [[f.one(), f.one()], [f.one(), f.one()]]
    b = [f.zero(), f.one()]
    assert linalg.solve(a, b) is None


def test_det_and_inverse():
    rng = random.Random(4)
    f = make_field(11)
    ident = linalg.identity(f, 3)
    for _ in range(60):
        a = [[f.element(rng.randrange(11)) for _ in range(3)] for _ in range(3)]
        d = linalg.det(a)
        inv = linalg.inverse(a)
        if d.is_zero():
            assert inv is None
        else:
            assert linalg.mat_eq(linalg.mat_mul(a, inv), ident)


def test_det_multiplicative():
    rng = random.Random(5)
    f = make_field(13)
    for _ in range(40):
        a = [[f.element(rng.randrange(13)) for _ in range(2)] for _ in range(2)]
        b = [[f.element(rng.randrange(13)) for _ in range(2)] for _ in range(2)]
        assert linalg.det(linalg.mat_mul(a, b)) == linalg.det(a) * linalg.det(b)
