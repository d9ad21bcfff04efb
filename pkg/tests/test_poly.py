import random
from fractions import Fraction

import pytest

from ratsym.fields import QQ, CyclotomicField
from ratsym.poly import (BothZero, Poly, cyclotomic_polynomial, interpolate,
                         poly_eval, poly_gcd, resultant, sturm_roots_in_interval)


def x():
    return Poly.x(QQ)


def test_gcd_examples():
    assert poly_gcd(x() * x() - 1, x() - 1) == x() - 1
    # z*(z^2+2) against z^2+1: remainder chain gives z, then a constant
    f = Poly(QQ, [0, 2, 0, 1])
    g = Poly(QQ, [1, 0, 1])
    assert poly_gcd(f, g).degree == 0
    h = Poly(QQ, [2, 4])
    assert poly_gcd(h, Poly.zero(QQ)) == h.monic()
    with pytest.raises(BothZero):
        poly_gcd(Poly.zero(QQ), Poly.zero(QQ))


def test_gcd_over_cyclotomic():
    F3 = CyclotomicField(3)
    z = F3.zeta()
    common = Poly(F3, [-z, F3.one()])
    p1 = common * Poly(F3, [1, 1])
    p2 = common * Poly(F3, [2, 1])
    assert poly_gcd(p1, p2) == common


def test_resultant_formal_degrees():
    # both formal homogenisations of (x^2, 1) at (2,2) have disjoint roots:
    # the determinant is the permutation-matrix value 1, nonzero because the
    # degree drop is not simultaneous
    assert resultant(x() * x(), Poly(QQ, [1]), 2, 2) == 1
    assert resultant(x() * x(), Poly(QQ, [1]), 2, 0) == 1
    # 2x2 Sylvester determinant computed by hand: [[1,-1],[1,1]] -> 2
    assert resultant(x() - 1, x() + 1, 1, 1) == 2
    # simultaneous degree drop: both actual degrees below the formal ones
    assert resultant(Poly(QQ, [1, 1]), Poly(QQ, [2, 1]), 2, 2) == 0
    assert not resultant(Poly(QQ, [1, 1]), Poly(QQ, [2, 1]), 1, 1).is_zero()
    with pytest.raises(ValueError):
        resultant(x() * x(), x(), 1, 1)


def test_resultant_detects_common_root_and_multiplicativity():
    rng = random.Random(11)

    def rpoly(dmax):
        return Poly(QQ, [Fraction(rng.randint(-5, 5))
                         for _ in range(rng.randint(1, dmax + 1))])

    checked = 0
    for _ in range(80):
        f, g, h = rpoly(6), rpoly(6), rpoly(4)
        if f.is_zero() or g.is_zero() or h.is_zero():
            continue
        rf = resultant(f, g, f.degree, g.degree)
        assert rf.is_zero() == (poly_gcd(f, g).degree > 0)
        rh = resultant(h, g, h.degree, g.degree)
        fh = f * h
        assert resultant(fh, g, fh.degree, g.degree) == rf * rh
        checked += 1
    assert checked > 40


def test_sturm_examples():
    t = x()
    assert sturm_roots_in_interval(t * t - Fraction(1, 4), 0, 1) == 1
    assert sturm_roots_in_interval(t * t + 1, 0, 1) == 0
    assert sturm_roots_in_interval(t * t * t - t, -2, 2) == 3
    # half-open convention (lo, hi]
    assert sturm_roots_in_interval(t, 0, 1) == 0
    assert sturm_roots_in_interval(t - 1, 0, 1) == 1
    # square-free preprocessing
    assert sturm_roots_in_interval((t - 1) * (t - 1) * (t + 2), 0, 1) == 1


def test_sturm_against_bruteforce():
    rng = random.Random(23)
    for _ in range(60):
        roots = sorted({Fraction(rng.randint(-8, 8), rng.randint(1, 4))
                        for _ in range(rng.randint(1, 6))})
        f = Poly(QQ, [1])
        for r in roots:
            f = f * Poly(QQ, [-r, 1])
        lo = Fraction(rng.randint(-10, 0), rng.randint(1, 3))
        hi = lo + Fraction(rng.randint(1, 15), rng.randint(1, 3))
        expect = sum(1 for r in roots if lo < r <= hi)
        assert sturm_roots_in_interval(f, lo, hi) == expect


def test_eval_examples():
    F4 = CyclotomicField(4)
    assert poly_eval(Poly(QQ, [1, 0, 1]), F4.zeta()).is_zero()
    F12 = CyclotomicField(12)
    assert poly_eval(cyclotomic_polynomial(12), F12.zeta()).is_zero()
    assert poly_eval(Poly(QQ, [1, 0, 0, 2]), QQ(Fraction(1, 2))) == Fraction(5, 4)


def test_eval_multiplicative():
    rng = random.Random(5)
    for _ in range(40):
        f = Poly(QQ, [Fraction(rng.randint(-5, 5)) for _ in range(4)])
        g = Poly(QQ, [Fraction(rng.randint(-5, 5)) for _ in range(3)])
        a = QQ(Fraction(rng.randint(-6, 6), rng.randint(1, 4)))
        assert poly_eval(f * g, a) == poly_eval(f, a) * poly_eval(g, a)


def test_cyclotomic_polynomial_poly():
    assert cyclotomic_polynomial(1) == Poly(QQ, [-1, 1])
    assert cyclotomic_polynomial(4) == Poly(QQ, [1, 0, 1])
    assert cyclotomic_polynomial(12) == Poly(QQ, [1, 0, -1, 0, 1])


def test_interpolation():
    target = Poly(QQ, [3, -2, 0, 1])
    pts = [(QQ(i), poly_eval(target, QQ(i))) for i in range(5)]
    assert interpolate(QQ, pts) == target


def test_structure_maps():
    f = Poly(QQ, [1, 2, 3])
    assert f.inflate(3).support() == (0, 3, 6)
    assert f.inflate(3).deflate(3) == f
    with pytest.raises(ValueError):
        Poly(QQ, [1, 1]).deflate(2)
    assert f.shift(2)[2] == 1 and f.shift(2).degree == 4
    assert f.reverse() == Poly(QQ, [3, 2, 1])
    assert Poly(QQ, [0, 0, 5, 1]).valuation() == 2
