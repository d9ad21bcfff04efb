"""Rational self-maps of the projective line over an exact field.

A :class:`RationalMap` is a reduced pair (P, Q) with a certified degree:
gcd(P, Q) is constant and max(deg P, deg Q) = d >= 1, which together are
equivalent to the nonvanishing of the Sylvester resultant at formal degrees
(d, d).  Construction always goes through :func:`make_map`, so every later
operation may assume nondegeneracy.  Derivatives may drop degree and are
returned as unchecked :class:`FormalRatFunc` values instead.
"""

from __future__ import annotations

from fractions import Fraction

from .fields import Field, FieldElement, FieldMismatch, common_field, lift
from .poly import Poly, poly_gcd

__all__ = [
    "ProjPoint",
    "RationalMap",
    "FormalRatFunc",
    "DegenerateMap",
    "make_map",
    "eval_proj",
    "compose",
    "conjugate",
    "derivative",
    "is_automorphism",
    "maps_equal",
]


class DegenerateMap(ValueError):
    """The reduced pair is constant (degree 0) or identically undefined."""


class ProjPoint:
    """Point of P^1: pair (x, y) up to scale, normalised to y=1 or (1,0)."""

    __slots__ = ("x", "y")

    def __init__(self, x: FieldElement, y: FieldElement):
        if x.is_zero() and y.is_zero():
            raise ValueError("(0 : 0) is not a projective point")
        if not y.is_zero():
            x = x / y
            y = y.field.one()
        else:
            x = x.field.one()
        self.x = x
        self.y = y

    @classmethod
    def finite(cls, value: FieldElement) -> "ProjPoint":
        return cls(value, value.field.one())

    @classmethod
    def infinity(cls, field: Field) -> "ProjPoint":
        return cls(field.one(), field.zero())

    def is_infinity(self) -> bool:
        return self.y.is_zero()

    def value(self) -> FieldElement:
        if self.is_infinity():
            raise ValueError("point at infinity has no affine value")
        return self.x

    def lift(self, target: Field) -> "ProjPoint":
        return ProjPoint(lift(self.x, target), lift(self.y, target))

    def __eq__(self, other):
        if not isinstance(other, ProjPoint):
            return NotImplemented
        return self.x * other.y == other.x * self.y and \
            (self.y.is_zero() == other.y.is_zero())

    def __hash__(self):
        return hash((self.x, self.y))

    def __repr__(self):
        return "inf" if self.is_infinity() else f"{self.x!r}"


class RationalMap:
    __slots__ = ("field", "num", "den", "degree")

    def __init__(self, field: Field, num: Poly, den: Poly, degree: int):
        # internal: use make_map
        self.field = field
        self.num = num
        self.den = den
        self.degree = degree

    def __repr__(self):
        return f"RationalMap(({self.num!r}) / ({self.den!r}), degree={self.degree})"

    def __eq__(self, other):
        if not isinstance(other, RationalMap):
            return NotImplemented
        return maps_equal(self, other)

    def lift(self, target: Field) -> "RationalMap":
        if target == self.field:
            return self
        return make_map(self.num.lift(target), self.den.lift(target))

    def __call__(self, point):
        if isinstance(point, ProjPoint):
            return eval_proj(self, point)
        if isinstance(point, (int, Fraction)):
            point = self.field(point)
        return eval_proj(self, ProjPoint.finite(point))


def make_map(P: Poly, Q: Poly) -> RationalMap:
    """Reduce, certify and canonicalise a rational map P/Q.

    Divides out the gcd, certifies d = max(deg P, deg Q) >= 1 (so the
    resultant at formal degrees (d, d) is nonzero) and scales so the
    degree-d coefficient of the numerator -- or of the denominator when the
    numerator drops degree -- equals one.
    """
    if P.field != Q.field:
        raise FieldMismatch("numerator and denominator over different fields")
    if P.is_zero() and Q.is_zero():
        raise DegenerateMap("0/0 is not a map")
    if P.is_zero() or Q.is_zero():
        # monomial-free side: still a valid map (0 or infinity) only if the
        # other side is nonconstant; covered by the degree check below
        pass
    g = None
    if not P.is_zero() and not Q.is_zero():
        g = poly_gcd(P, Q)
        if g.degree > 0:
            P = P // g
            Q = Q // g
    d = max(P.degree, Q.degree)
    if d < 1:
        raise DegenerateMap("reduced map is constant")
    scale = P[d] if not P[d].is_zero() else Q[d]
    inv = scale.inv()
    return RationalMap(P.field, P * inv, Q * inv, d)


def maps_equal(phi: RationalMap, psi: RationalMap) -> bool:
    """Projective equality of reduced maps via cross multiplication."""
    if phi.field != psi.field:
        k = common_field(phi.field, psi.field)
        phi, psi = phi.lift(k), psi.lift(k)
    if phi.degree != psi.degree:
        return False
    return phi.num * psi.den == psi.num * phi.den


def eval_proj(phi: RationalMap, p: ProjPoint) -> ProjPoint:
    """Homogeneous evaluation at the map's formal degree."""
    if p.x.field != phi.field:
        k = common_field(phi.field, p.x.field)
        phi = phi.lift(k)
        p = p.lift(k)
    d = phi.degree
    x, y = p.x, p.y
    xs = [phi.field.one()]
    ys = [phi.field.one()]
    for _ in range(d):
        xs.append(xs[-1] * x)
        ys.append(ys[-1] * y)
    num = phi.field.zero()
    den = phi.field.zero()
    for k in range(d + 1):
        mono = xs[k] * ys[d - k]
        num = num + phi.num[k] * mono
        den = den + phi.den[k] * mono
    return ProjPoint(num, den)


def _subst_homogeneous(f: Poly, d: int, U: Poly, V: Poly) -> Poly:
    """sum_k f_k U^k V^(d-k) for f of formal degree d."""
    field = f.field
    upow = [Poly(field, (field.one(),))]
    vpow = [Poly(field, (field.one(),))]
    for _ in range(d):
        upow.append(upow[-1] * U)
        vpow.append(vpow[-1] * V)
    out = Poly.zero(field)
    for k in range(d + 1):
        c = f[k]
        if not c.is_zero():
            out = out + (upow[k] * vpow[d - k]) * c
    return out


def compose(phi: RationalMap, psi: RationalMap) -> RationalMap:
    """phi o psi, reduced; degree is the product of degrees."""
    if phi.field != psi.field:
        k = common_field(phi.field, psi.field)
        phi, psi = phi.lift(k), psi.lift(k)
    N = _subst_homogeneous(phi.num, phi.degree, psi.num, psi.den)
    D = _subst_homogeneous(phi.den, phi.degree, psi.num, psi.den)
    result = make_map(N, D)
    assert result.degree == phi.degree * psi.degree, "composition degree drop"
    return result


def _twisted_reversal(f: Poly, d: int, mu: FieldElement) -> Poly:
    """z^d * f(mu / z): coefficient k becomes f[d-k] * mu^(d-k)."""
    field = f.field
    pows = [field.one()]
    for _ in range(d):
        pows.append(pows[-1] * mu)
    return Poly(field, tuple(f[d - k] * pows[d - k] for k in range(d + 1)))


def conjugate(phi: RationalMap, T) -> RationalMap:
    """T o phi o T^{-1} for a Moebius map T; degree is preserved.

    Diagonal and antidiagonal conjugators (the members of the standard
    rotation normaliser) take closed-form fast paths.
    """
    from .mobius import MobiusMap  # local import to avoid a cycle
    if not isinstance(T, MobiusMap):
        raise TypeError("conjugator must be a MobiusMap")
    if T.field != phi.field:
        k = common_field(phi.field, T.field)
        phi = phi.lift(k)
        T = T.lift(k)
    field = phi.field
    d = phi.degree
    if T.b.is_zero() and T.c.is_zero():
        # T(z) = gamma z with gamma = a/d: coefficients pick up gamma powers
        gamma = T.a / T.d
        pows = [field.one()]
        for _ in range(d + 1):
            pows.append(pows[-1] * gamma)
        N = Poly(field, tuple(phi.num[k] * pows[d + 1 - k] for k in range(d + 1)))
        D = Poly(field, tuple(phi.den[k] * pows[d - k] for k in range(d + 1)))
        result = make_map(N, D)
    elif T.a.is_zero() and T.d.is_zero():
        # T(z) = mu / z, an involution: new map is mu * D~ / N~
        mu = T.b / T.c
        Nt = _twisted_reversal(phi.num, d, mu)
        Dt = _twisted_reversal(phi.den, d, mu)
        result = make_map(Dt * mu, Nt)
    else:
        result = compose(compose(T.as_map(), phi), T.inverse().as_map())
    assert result.degree == d
    return result


class FormalRatFunc:
    """Reduced quotient of polynomials without the degree certificate."""

    __slots__ = ("field", "num", "den")

    def __init__(self, num: Poly, den: Poly):
        if den.is_zero():
            raise ZeroDivisionError("zero denominator")
        if not num.is_zero():
            g = poly_gcd(num, den)
            if g.degree > 0:
                num, den = num // g, den // g
        s = den.lc().inv()
        self.field = num.field
        self.num = num * s
        self.den = den * s

    def __call__(self, a: FieldElement) -> FieldElement:
        from .poly import poly_eval
        return poly_eval(self.num, a) / poly_eval(self.den, a)

    def is_zero(self) -> bool:
        return self.num.is_zero()

    def __repr__(self):
        return f"FormalRatFunc(({self.num!r}) / ({self.den!r}))"


def derivative(phi: RationalMap) -> FormalRatFunc:
    """(P'Q - PQ')/Q^2 as a reduced formal rational function."""
    P, Q = phi.num, phi.den
    num = P.derivative() * Q - P * Q.derivative()
    return FormalRatFunc(num, Q * Q)


def is_automorphism(phi: RationalMap, T) -> bool:
    """True when T o phi o T^{-1} equals phi projectively."""
    return maps_equal(conjugate(phi, T), phi)
