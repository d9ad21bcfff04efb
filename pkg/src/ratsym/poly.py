"""Univariate polynomials over the exact fields, with the certification kit:
Euclidean gcd, Sylvester resultants at *formal* degrees, and Sturm counting
of real roots over Q.

Coefficients are stored ascending; the zero polynomial has an empty tuple and
degree -1.  The resultant takes formal degrees as explicit parameters because
degree drop must be detectable, not silently normalised away.
"""

from __future__ import annotations

import math
from fractions import Fraction
from typing import Iterable, Sequence

from .fields import (QQ, Field, FieldElement, FieldMismatch, cyclotomic_coeffs,
                     lift)

__all__ = [
    "Poly",
    "poly_gcd",
    "resultant",
    "sturm_roots_in_interval",
    "poly_eval",
    "cyclotomic_polynomial",
    "interpolate",
    "det",
    "BothZero",
]


class BothZero(ValueError):
    """gcd of two zero polynomials is undefined."""


class Poly:
    __slots__ = ("field", "coeffs")

    def __init__(self, field: Field, coeffs: Iterable = ()):
        elems = []
        for c in coeffs:
            if isinstance(c, FieldElement):
                if not (c.field is field or c.field == field):
                    raise FieldMismatch("coefficient from a different field")
                elems.append(c)
            else:
                elems.append(field(c))
        while elems and elems[-1].is_zero():
            elems.pop()
        self.field = field
        self.coeffs = tuple(elems)

    # --- constructors -------------------------------------------------
    @classmethod
    def zero(cls, field: Field) -> "Poly":
        return cls(field, ())

    @classmethod
    def x(cls, field: Field) -> "Poly":
        return cls(field, (0, 1))

    @classmethod
    def constant(cls, value: FieldElement) -> "Poly":
        return cls(value.field, (value,))

    # --- basic queries -------------------------------------------------
    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return not self.coeffs

    def __bool__(self):
        return bool(self.coeffs)

    def __getitem__(self, k: int) -> FieldElement:
        if 0 <= k < len(self.coeffs):
            return self.coeffs[k]
        return self.field.zero()

    def lc(self) -> FieldElement:
        if not self.coeffs:
            return self.field.zero()
        return self.coeffs[-1]

    def __eq__(self, other):
        if not isinstance(other, Poly):
            return NotImplemented
        return self.field == other.field and self.coeffs == other.coeffs

    def __hash__(self):
        return hash((self.field.key(), self.coeffs))

    def __repr__(self):
        if not self.coeffs:
            return "Poly(0)"
        terms = [f"({c!r})*x^{k}" if k else f"({c!r})"
                 for k, c in enumerate(self.coeffs) if not c.is_zero()]
        return "Poly(" + " + ".join(terms) + ")"

    # --- arithmetic ----------------------------------------------------
    def _as_poly(self, other):
        if isinstance(other, Poly):
            return other
        if isinstance(other, (int, Fraction, FieldElement)):
            return Poly(self.field, (other,))
        return None

    def __add__(self, other) -> "Poly":
        other = self._as_poly(other)
        if other is None:
            return NotImplemented
        n = max(len(self.coeffs), len(other.coeffs))
        return Poly(self.field, (self[k] + other[k] for k in range(n)))

    __radd__ = __add__

    def __sub__(self, other) -> "Poly":
        other = self._as_poly(other)
        if other is None:
            return NotImplemented
        n = max(len(self.coeffs), len(other.coeffs))
        return Poly(self.field, (self[k] - other[k] for k in range(n)))

    def __rsub__(self, other) -> "Poly":
        other = self._as_poly(other)
        if other is None:
            return NotImplemented
        return other - self

    def __neg__(self) -> "Poly":
        return Poly(self.field, (-c for c in self.coeffs))

    def __mul__(self, other):
        if isinstance(other, (int, Fraction, FieldElement)):
            s = other if isinstance(other, FieldElement) else self.field(other)
            return Poly(self.field, (c * s for c in self.coeffs))
        if not isinstance(other, Poly):
            return NotImplemented
        if self.is_zero() or other.is_zero():
            return Poly.zero(self.field)
        out = [self.field.zero()] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a.is_zero():
                continue
            for j, b in enumerate(other.coeffs):
                if not b.is_zero():
                    out[i + j] = out[i + j] + a * b
        return Poly(self.field, out)

    __rmul__ = __mul__

    def scale(self, s) -> "Poly":
        return self * s

    def divmod(self, other: "Poly") -> tuple["Poly", "Poly"]:
        if other.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        rem = list(self.coeffs)
        dq = len(rem) - len(other.coeffs)
        if dq < 0:
            return Poly.zero(self.field), self
        inv_lead = other.lc().inv()
        quo = [self.field.zero()] * (dq + 1)
        ocs = other.coeffs
        while len(rem) >= len(ocs):
            c = rem[-1] * inv_lead
            k = len(rem) - len(ocs)
            quo[k] = c
            for j, b in enumerate(ocs):
                rem[k + j] = rem[k + j] - c * b
            while rem and rem[-1].is_zero():
                rem.pop()
        return Poly(self.field, quo), Poly(self.field, rem)

    def __floordiv__(self, other: "Poly") -> "Poly":
        return self.divmod(other)[0]

    def __mod__(self, other: "Poly") -> "Poly":
        return self.divmod(other)[1]

    def monic(self) -> "Poly":
        if self.is_zero():
            return self
        return self * self.lc().inv()

    def derivative(self) -> "Poly":
        return Poly(self.field, (self.coeffs[k] * k for k in range(1, len(self.coeffs))))

    # --- structure maps -------------------------------------------------
    def lift(self, target: Field) -> "Poly":
        if target == self.field:
            return self
        return Poly(target, (lift(c, target) for c in self.coeffs))

    def conj(self) -> "Poly":
        return Poly(self.field, (c.conj() for c in self.coeffs))

    def inflate(self, n: int) -> "Poly":
        """Substitute x -> x^n."""
        if n == 1 or self.is_zero():
            return self
        out = [self.field.zero()] * (self.degree * n + 1)
        for k, c in enumerate(self.coeffs):
            out[k * n] = c
        return Poly(self.field, out)

    def deflate(self, n: int) -> "Poly":
        """Inverse of inflate; every exponent must be divisible by n."""
        if n == 1:
            return self
        out = []
        for k, c in enumerate(self.coeffs):
            if k % n == 0:
                out.append(c)
            elif not c.is_zero():
                raise ValueError("polynomial is not supported on multiples of n")
        return Poly(self.field, out)

    def shift(self, k: int) -> "Poly":
        """Multiply by x^k."""
        if self.is_zero() or k == 0:
            return self
        return Poly(self.field, (self.field.zero(),) * k + self.coeffs)

    def reverse(self, formal_degree: int | None = None) -> "Poly":
        d = self.degree if formal_degree is None else formal_degree
        if d < self.degree:
            raise ValueError("formal degree below actual degree")
        return Poly(self.field, (self[d - k] for k in range(d + 1)))

    def valuation(self) -> int:
        if self.is_zero():
            raise ValueError("zero polynomial has no valuation")
        for k, c in enumerate(self.coeffs):
            if not c.is_zero():
                return k
        raise AssertionError

    def support(self) -> tuple[int, ...]:
        return tuple(k for k, c in enumerate(self.coeffs) if not c.is_zero())


def poly_eval(f: Poly, a: FieldElement) -> FieldElement:
    """Horner evaluation; lifts the argument or coefficients as needed."""
    if not isinstance(a, FieldElement):
        a = f.field(a)
    if a.field != f.field:
        from .fields import common_field
        k = common_field(f.field, a.field)
        f = f.lift(k)
        a = lift(a, k)
    acc = f.field.zero()
    for c in reversed(f.coeffs):
        acc = acc * a + c
    return acc


# ---------------------------------------------------------------------------
# gcd
# ---------------------------------------------------------------------------

def _int_content(v: list[int]) -> int:
    g = 0
    for x in v:
        g = math.gcd(g, x)
    return g or 1


def _primitive_prs_gcd(f: list[int], g: list[int]) -> list[int]:
    # primitive pseudo-remainder sequence over Z; inputs nonzero, ascending
    def trim(v):
        while v and v[-1] == 0:
            v.pop()
        return v

    a, b = trim(list(f)), trim(list(g))
    if len(a) < len(b):
        a, b = b, a
    while b:
        # pseudo-remainder: lc(b)^(deg a - deg b + 1) * a mod b
        k = len(a) - len(b) + 1
        lb = b[-1]
        r = [x * lb ** k for x in a]
        while len(r) >= len(b) and trim(r):
            if len(r) < len(b):
                break
            c, idx = r[-1], len(r) - len(b)
            if c % lb:
                raise AssertionError("pseudo-division not exact")
            q = c // lb
            for j, y in enumerate(b):
                r[idx + j] -= q * y
            trim(r)
        cont = _int_content(r)
        a, b = b, [x // cont for x in r]
    return a


def _qq_gcd(f: Poly, g: Poly) -> Poly:
    fz = [c.payload for c in f.coeffs]
    gz = [c.payload for c in g.coeffs]
    den_f = math.lcm(*(c.denominator for c in fz)) if fz else 1
    den_g = math.lcm(*(c.denominator for c in gz)) if gz else 1
    fi = [int(c * den_f) for c in fz]
    gi = [int(c * den_g) for c in gz]
    h = _primitive_prs_gcd(fi, gi)
    return Poly(QQ, [Fraction(x) for x in h]).monic()


def poly_gcd(f: Poly, g: Poly) -> Poly:
    """Monic gcd; over Q a primitive pseudo-remainder sequence keeps
    coefficient growth polynomial, elsewhere plain monic Euclid."""
    if f.field != g.field:
        raise FieldMismatch("gcd operands in different fields")
    if f.is_zero() and g.is_zero():
        raise BothZero("gcd(0, 0) is undefined")
    if f.is_zero():
        return g.monic()
    if g.is_zero():
        return f.monic()
    if f.field == QQ:
        return _qq_gcd(f, g)
    a, b = f, g
    while not b.is_zero():
        a, b = b, (a % b)
        if not b.is_zero():
            b = b.monic()
    return a.monic()


# ---------------------------------------------------------------------------
# determinants and resultants
# ---------------------------------------------------------------------------

def det(rows: Sequence[Sequence[FieldElement]], field: Field) -> FieldElement:
    """Exact determinant by Gaussian elimination with nonzero pivoting."""
    n = len(rows)
    m = [list(r) for r in rows]
    sign = 1
    res = field.one()
    for col in range(n):
        pivot = None
        for r in range(col, n):
            if not m[r][col].is_zero():
                pivot = r
                break
        if pivot is None:
            return field.zero()
        if pivot != col:
            m[col], m[pivot] = m[pivot], m[col]
            sign = -sign
        pv = m[col][col]
        res = res * pv
        inv = pv.inv()
        for r in range(col + 1, n):
            factor = m[r][col]
            if factor.is_zero():
                continue
            factor = factor * inv
            for c in range(col, n):
                m[r][c] = m[r][c] - factor * m[col][c]
    return res if sign > 0 else -res


def sylvester_matrix(f: Poly, g: Poly, formal_deg_f: int, formal_deg_g: int):
    m, n = formal_deg_f, formal_deg_g
    field = f.field
    size = m + n
    rows = []
    fc = [f[m - j] for j in range(m + 1)]   # descending, padded to formal degree
    gc = [g[n - j] for j in range(n + 1)]
    for i in range(n):
        row = [field.zero()] * size
        for j, c in enumerate(fc):
            row[i + j] = c
        rows.append(row)
    for i in range(m):
        row = [field.zero()] * size
        for j, c in enumerate(gc):
            row[i + j] = c
        rows.append(row)
    return rows


def resultant(f: Poly, g: Poly, formal_deg_f: int, formal_deg_g: int) -> FieldElement:
    """Determinant of the Sylvester matrix at the stated formal degrees.

    Vanishes exactly when the formal-degree homogenisations share a
    projective root: a common affine root, or a simultaneous degree drop
    (a shared root at infinity).
    """
    if f.field != g.field:
        raise FieldMismatch("resultant operands in different fields")
    if f.degree > formal_deg_f or g.degree > formal_deg_g:
        raise ValueError("formal degree below actual degree")
    if formal_deg_f == 0 and formal_deg_g == 0:
        return f.field.one()
    return det(sylvester_matrix(f, g, formal_deg_f, formal_deg_g), f.field)


# ---------------------------------------------------------------------------
# Sturm counting over Q
# ---------------------------------------------------------------------------

def _sign_changes(values: list[Fraction]) -> int:
    signs = [v > 0 for v in values if v != 0]
    return sum(1 for a, b in zip(signs, signs[1:]) if a != b)


def sturm_roots_in_interval(f: Poly, lo: Fraction, hi: Fraction) -> int:
    """Number of distinct real roots of f in (lo, hi], by Sturm's theorem.

    Restricted to rational coefficients; the input is made square-free
    before the chain is built.
    """
    if f.field != QQ:
        raise FieldMismatch("Sturm counting is implemented over Q only")
    if f.is_zero():
        raise ValueError("zero polynomial")
    lo, hi = Fraction(lo), Fraction(hi)
    if not lo < hi:
        raise ValueError("need lo < hi")
    if f.degree == 0:
        return 0
    sf = f // poly_gcd(f, f.derivative())
    chain = [sf, sf.derivative()]
    while not chain[-1].is_zero():
        nxt = -(chain[-2] % chain[-1])
        chain.append(nxt)
    chain.pop()

    def variations(x: Fraction) -> int:
        return _sign_changes([poly_eval(p, QQ(x)).payload for p in chain])

    return variations(lo) - variations(hi)


# ---------------------------------------------------------------------------
# assorted exact tools
# ---------------------------------------------------------------------------

def cyclotomic_polynomial(n: int) -> Poly:
    """The n-th cyclotomic polynomial as a monic Poly over Q."""
    return Poly(QQ, cyclotomic_coeffs(n))


def interpolate(field: Field, points: Sequence[tuple[FieldElement, FieldElement]]) -> Poly:
    """Lagrange interpolation through distinct nodes."""
    result = Poly.zero(field)
    xs = [field(x) for x, _ in points]
    for i, (_, yi) in enumerate(points):
        yi = field(yi) if not isinstance(yi, FieldElement) else yi
        num = Poly(field, (field.one(),))
        den = field.one()
        for j, xj in enumerate(xs):
            if j == i:
                continue
            num = num * Poly(field, (-xj, field.one()))
            den = den * (xs[i] - xj)
        result = result + num * (yi / den)
    return result
