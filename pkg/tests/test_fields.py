import math
import random
from fractions import Fraction

import pytest

from ratsym.fields import (QQ, ComplexBox, CyclotomicField, FieldMismatch,
                           QuadraticField, complex_conjugate, cyclotomic_coeffs,
                           field_arith, interval_embed, lift, refine_box,
                           sign_real)


def test_rational_arithmetic():
    assert field_arith(QQ(Fraction(1, 2)), QQ(Fraction(1, 3)), "add") == Fraction(5, 6)
    assert QQ(3) / QQ(7) == Fraction(3, 7)
    with pytest.raises(ZeroDivisionError):
        QQ(1) / QQ(0)


def test_root_of_unity_product():
    F3 = CyclotomicField(3)
    z = F3.zeta()
    assert field_arith(z, z ** 2, "mul") == 1


def test_quadratic_conjugate_product():
    K = QuadraticField(QQ, QQ(2))
    s = K.sqrt_delta()
    assert (K.one() + s) * (-K.one() + s) == 1


def test_field_mismatch_is_explicit():
    a = CyclotomicField(3).zeta()
    b = CyclotomicField(5).zeta()
    with pytest.raises(FieldMismatch):
        a + b
    # declared lift to the compositum works
    F15 = CyclotomicField(15)
    assert lift(a, F15) * lift(b, F15) == F15.zeta(5) * F15.zeta(3)


def test_conjugation_examples():
    F5 = CyclotomicField(5)
    assert complex_conjugate(F5.zeta()) == F5.zeta(4)
    assert complex_conjugate(QQ(Fraction(3, 7))) == Fraction(3, 7)
    F4 = CyclotomicField(4)
    assert complex_conjugate(F4.from_coeffs([1, 2])) == F4.from_coeffs([1, -2])


def test_cyclotomic_polynomial_values():
    assert cyclotomic_coeffs(1) == (Fraction(-1), Fraction(1))
    assert cyclotomic_coeffs(4) == (Fraction(1), Fraction(0), Fraction(1))
    # divide x^12 - 1 by the product of the trivially known lower factors
    lower = {1: [-1, 1], 2: [1, 1], 3: [1, 1, 1], 4: [1, 0, 1], 6: [1, -1, 1]}
    prod = [Fraction(1)]
    for coeffs in lower.values():
        nxt = [Fraction(0)] * (len(prod) + len(coeffs) - 1)
        for i, x in enumerate(prod):
            for j, y in enumerate(coeffs):
                nxt[i + j] += x * y
        prod = nxt
    num = [Fraction(-1)] + [Fraction(0)] * 11 + [Fraction(1)]
    # schoolbook exact division
    quo = [Fraction(0)] * (len(num) - len(prod) + 1)
    rem = list(num)
    while len(rem) >= len(prod):
        c = rem[-1] / prod[-1]
        k = len(rem) - len(prod)
        quo[k] = c
        for j, y in enumerate(prod):
            rem[k + j] -= c * y
        while rem and rem[-1] == 0:
            rem.pop()
    assert not rem
    assert cyclotomic_coeffs(12) == tuple(quo)
    assert tuple(quo) == (Fraction(1), Fraction(0), Fraction(-1), Fraction(0), Fraction(1))


def test_roots_of_unity_orders_up_to_30():
    for n in range(3, 31):
        F = CyclotomicField(n)
        z = F.zeta()
        assert z ** n == 1
        for k in range(1, n):
            assert z ** k != 1
        # defining relation holds exactly
        acc, p = F.zero(), F.one()
        for c in cyclotomic_coeffs(n):
            acc = acc + p * c
            p = p * z
        assert acc.is_zero()


def test_field_axioms_random_triples():
    F5 = CyclotomicField(5)
    F12 = CyclotomicField(12)
    K = QuadraticField(F5, F5(2) - F5.zeta() - F5.zeta(4))
    rng = random.Random(7)

    def sample(field):
        if field is QQ:
            return QQ(Fraction(rng.randint(-9, 9), rng.randint(1, 9)))
        if isinstance(field, QuadraticField):
            base = field.base
            return field.from_parts(
                base.from_coeffs([rng.randint(-5, 5) for _ in range(base.degree)]),
                base.from_coeffs([rng.randint(-5, 5) for _ in range(base.degree)]))
        return field.from_coeffs([rng.randint(-5, 5) for _ in range(field.degree)])

    for field in (QQ, F5, F12, K):
        for _ in range(25):
            a, b, c = sample(field), sample(field), sample(field)
            assert (a + b) + c == a + (b + c)
            assert a * (b + c) == a * b + a * c
            if not a.is_zero():
                assert a * a.inv() == 1
            assert complex_conjugate(complex_conjugate(a)) == a
            assert complex_conjugate(a * b) == complex_conjugate(a) * complex_conjugate(b)
            assert complex_conjugate(a + b) == complex_conjugate(a) + complex_conjugate(b)


def test_interval_embed_examples():
    box = interval_embed(QQ(Fraction(1, 2)), 32)
    assert box.re_lo <= Fraction(1, 2) <= box.re_hi
    assert box.im_lo == box.im_hi == 0

    box_i = interval_embed(CyclotomicField(4).zeta(), 30)
    assert box_i.re_lo <= 0 <= box_i.re_hi
    assert box_i.im_lo <= 1 <= box_i.im_hi

    K = QuadraticField(QQ, QQ(2))
    box_s = interval_embed(K.sqrt_delta(), 53)
    assert box_s.re_lo > 0 and box_s.re_lo ** 2 <= 2 <= box_s.re_hi ** 2
    assert box_s.width() <= Fraction(1, 2 ** 50)


def test_interval_width_contract():
    F7 = CyclotomicField(7)
    a = F7.from_coeffs([3, -2, 5, 1, 0, -4])
    for prec in (16, 64, 200):
        box = interval_embed(a, prec)
        # |a| <= 15 crude; the promised width bound is generous
        assert box.width() <= Fraction(1, 2 ** (prec - 1)) * 16


def test_interval_product_and_refinement():
    F5 = CyclotomicField(5)
    u = F5.zeta()
    v = F5.from_coeffs([1, 2, 3, 4])
    bu, bv = interval_embed(u, 80), interval_embed(v, 80)
    assert interval_embed(u * v, 80).overlaps(bu * bv)
    a = F5(2) - F5.zeta() - F5.zeta(4)
    b1 = interval_embed(a, 16)
    b2 = refine_box(a, b1, 32)
    b3 = refine_box(a, b2, 64)
    assert b1.contains_box(b2) and b2.contains_box(b3)
    assert b3.width() < b1.width()


def test_sign_real():
    F5 = CyclotomicField(5)
    delta = F5(2) - F5.zeta() - F5.zeta(4)
    assert sign_real(delta) == 1
    assert sign_real(-delta) == -1
    assert sign_real(QQ(0)) == 0
    with pytest.raises(ValueError):
        sign_real(F5.zeta())


def test_quadratic_over_cyclotomic():
    F5 = CyclotomicField(5)
    delta = F5(2) - F5.zeta() - F5.zeta(4)
    K = QuadraticField(F5, delta)
    s = K.sqrt_delta()
    assert s * s == lift(delta, K)
    assert complex_conjugate(s) == s  # real positive branch
    box = interval_embed(s, 64)
    true = math.sqrt(2 - 2 * math.cos(2 * math.pi / 5))
    assert abs(float(box.re_lo) - true) < 1e-12
    with pytest.raises(ValueError):
        QuadraticField(K, s)  # no nested towers


def test_negative_radicand_branch():
    K = QuadraticField(QQ, QQ(-1))
    s = K.sqrt_delta()
    assert s * s == K(-1)
    assert complex_conjugate(s) == -s
    box = interval_embed(s, 40)
    assert box.re_lo == box.re_hi == 0
    assert box.im_lo <= 1 <= box.im_hi


def test_box_arithmetic():
    b1 = ComplexBox(1, 2, 0, 1)
    b2 = ComplexBox(-1, 1, 2, 3)
    prod = b1 * b2
    # contains the product of the corner 1.5+0.5i and 0+2.5i
    z = complex(1.5, 0.5) * complex(0, 2.5)
    assert float(prod.re_lo) <= z.real <= float(prod.re_hi)
    assert float(prod.im_lo) <= z.imag <= float(prod.im_hi)
    assert (b1 - b1).contains_zero()


def test_serialization_roundtrip():
    from ratsym.jsonio import elem_to_json, elem_from_json, field_to_json, field_from_json
    F5 = CyclotomicField(5)
    K = QuadraticField(F5, F5(2) - F5.zeta() - F5.zeta(4))
    vals = [QQ(Fraction(-3, 7)), F5.from_coeffs([1, 0, -2, 5]),
            K.from_parts(F5.zeta(), F5.from_coeffs([1, 1, 0, 0]))]
    for v in vals:
        blob = elem_to_json(v)
        back = elem_from_json(blob, field_from_json(field_to_json(v.field)))
        assert back == v
    assert elem_to_json(QQ(Fraction(-3, 7))) == "-3/7"
    blob = elem_to_json(F5.zeta())
    assert blob["conductor"] == 5 and blob["coeffs"] == ["0", "1", "0", "0"]
