"""Normal forms for rational maps with prescribed rotation and involution
symmetries.

A degree-d map with an order-n rotation symmetry z -> w_n z is, after the
rotation is put in standard position, of the shape phi(z) = z * psi(z^n)
with psi = P/Q of degree r and exactly one of

* case A: a_r * b_0 != 0         and d = n*r + 1,
* case B: a_r != 0, b_0 = 0      and d = n*r,
* case C: a_r = b_0 = 0, b_r != 0 and d = n*r - 1,

where a_k, b_k are the coefficients of P and Q.  This module builds and
validates such families, decides admissibility of each finite symmetry type
for a given degree, produces explicit witness maps realising a rotation of
odd prime order together with an extra involution, and searches for
automorphisms inside the rotation normaliser {lam*z, mu/z}.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

from .fields import (QQ, CyclotomicField, Field, FieldElement, QuadraticField,
                     common_field, lift, root_of_unity, root_of_unity_field)
from .mobius import GroupSpec, MobiusMap, inversion, mobius_order, rotation, scaling
from .poly import Poly, poly_gcd
from .ratmap import (RationalMap, conjugate, eval_proj, is_automorphism,
                     make_map, maps_equal, ProjPoint)

__all__ = [
    "CyclicFamily",
    "DihedralFamily",
    "WitnessReport",
    "FixedPointBehavior",
    "NotAdmissible",
    "CoefficientConditionViolated",
    "UnexpectedDegree",
    "BehaviorMismatch",
    "WitnessUnavailable",
    "AutSearchIncomplete",
    "cyclic_admissible",
    "dihedral_admissible",
    "platonic_admissible",
    "build_cyclic",
    "build_dihedral",
    "check_fixed_point_behavior",
    "lemma_witness",
    "classify_lemma_case",
    "aut_in_normalizer",
    "cyclic_family_from_map",
    "random_cyclic_family",
    "random_dihedral_family",
    "simple_cyclic_family",
    "simple_dihedral_family",
]


class NotAdmissible(ValueError):
    """The requested symmetry type does not occur in this degree."""


class CoefficientConditionViolated(ValueError):
    """Family coefficients break the case conditions or coprimality."""


class UnexpectedDegree(RuntimeError):
    """Built map degree disagrees with the family case (defensive check)."""


class BehaviorMismatch(RuntimeError):
    """Observed fixed-point behaviour differs from the predicted table."""


class WitnessUnavailable(RuntimeError):
    """No witness with the requested symmetries is constructible here.

    Carries ``analysis``: 'provably_empty' when no degree-d map with the two
    requested symmetry orders exists at all (shown by exhausting the finite
    symmetry types admissible in that degree), or 'exists_via_exceptional'
    when only an exceptional-group witness would do (not constructed here).
    """

    def __init__(self, message: str, analysis: str):
        super().__init__(message)
        self.analysis = analysis


class AutSearchIncomplete(RuntimeError):
    """An inversion-type automorphism exists but its coefficient needs a
    radical extension outside the supported field tower."""


# ---------------------------------------------------------------------------
# admissibility predicates
# ---------------------------------------------------------------------------

def cyclic_admissible(d: int, n: int) -> list[tuple[str, int]]:
    """All (case, r) pairs realising an order-n rotation in degree d.

    Empty when d is not congruent to -1, 0 or 1 modulo n.  For n = 2 and odd
    d both case A (r = (d-1)/2) and case C (r = (d+1)/2) apply.
    """
    if d < 2 or n < 2:
        return []
    out = []
    if d % n == 1:
        out.append(("A", (d - 1) // n))
    if d % n == 0:
        out.append(("B", d // n))
    if d % n == n - 1:
        out.append(("C", (d + 1) // n))
    return out


def dihedral_admissible(d: int, n: int) -> list[tuple[str, int]]:
    """All (case, r) pairs realising a full dihedral symmetry of order 2n."""
    if d < 2 or n < 2:
        return []
    out = []
    if d % n == 1:
        out.append(("I", (d - 1) // n))
    if d % n == n - 1:
        out.append(("II", (d + 1) // n))
    return out


def platonic_admissible(d: int, spec: GroupSpec) -> bool:
    if d < 2:
        raise ValueError("degree must be at least 2")
    if spec.kind == "A4":
        return d % 2 == 1
    if spec.kind == "A5":
        return d % 30 in (1, 11, 19, 21)
    if spec.kind == "S4":
        return math.gcd(d, 6) == 1
    raise ValueError("platonic admissibility is for A4, S4, A5")


# ---------------------------------------------------------------------------
# cyclic families
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class CyclicFamily:
    """Coefficient data (a, b) of psi = P/Q for phi(z) = z * psi(z^n)."""

    n: int
    r: int
    case: str                      # "A" | "B" | "C"
    a: tuple[FieldElement, ...]    # a_0 .. a_r
    b: tuple[FieldElement, ...]    # b_0 .. b_r

    def __post_init__(self):
        if self.n < 2 or self.r < 1:
            raise CoefficientConditionViolated("need n >= 2 and r >= 1")
        if self.case not in ("A", "B", "C"):
            raise CoefficientConditionViolated(f"unknown case {self.case!r}")
        if len(self.a) != self.r + 1 or len(self.b) != self.r + 1:
            raise CoefficientConditionViolated("coefficient vectors must have length r+1")
        fields = {c.field for c in self.a + self.b}
        if len(fields) != 1:
            raise CoefficientConditionViolated("coefficients must share one field")
        self.validate()

    @property
    def field(self) -> Field:
        return self.a[0].field

    @property
    def degree(self) -> int:
        return {"A": self.n * self.r + 1,
                "B": self.n * self.r,
                "C": self.n * self.r - 1}[self.case]

    def psi_num(self) -> Poly:
        return Poly(self.field, self.a)

    def psi_den(self) -> Poly:
        return Poly(self.field, self.b)

    def validate(self) -> None:
        ar, b0, br = self.a[self.r], self.b[0], self.b[self.r]
        if self.case == "A":
            if ar.is_zero() or b0.is_zero():
                raise CoefficientConditionViolated("case A needs a_r != 0 and b_0 != 0")
        elif self.case == "B":
            if ar.is_zero() or not b0.is_zero():
                raise CoefficientConditionViolated("case B needs a_r != 0 and b_0 = 0")
        else:
            if not ar.is_zero() or not b0.is_zero() or br.is_zero():
                raise CoefficientConditionViolated(
                    "case C needs a_r = b_0 = 0 and b_r != 0")
        P, Q = self.psi_num(), self.psi_den()
        if P.is_zero() or Q.is_zero():
            raise CoefficientConditionViolated("psi must be a nonzero quotient")
        if poly_gcd(P, Q).degree > 0:
            raise CoefficientConditionViolated(
                "numerator and denominator of psi must be coprime")

    def with_coeffs(self, a, b) -> "CyclicFamily":
        return CyclicFamily(self.n, self.r, self.case, tuple(a), tuple(b))

    def lift(self, target: Field) -> "CyclicFamily":
        return CyclicFamily(self.n, self.r, self.case,
                            tuple(lift(c, target) for c in self.a),
                            tuple(lift(c, target) for c in self.b))

    def rotation(self) -> MobiusMap:
        return rotation(self.n)


def build_cyclic(fam: CyclicFamily) -> RationalMap:
    """phi(z) = z * psi(z^n), reduced, with the case-certified degree.

    Families whose coefficients violate the case conditions or whose psi is
    reducible are rejected at validation; the degree check here is a
    defensive backstop only.
    """
    num = fam.psi_num().inflate(fam.n).shift(1)
    den = fam.psi_den().inflate(fam.n)
    phi = make_map(num, den)
    if phi.degree != fam.degree:
        raise UnexpectedDegree(
            f"built degree {phi.degree}, case {fam.case} demands {fam.degree}")
    return phi


def _rotation_in(field: Field, n: int) -> MobiusMap:
    """The order-n rotation with entries lifted into ``field``."""
    w = root_of_unity(n)
    target = common_field(field, w.field)
    return scaling(lift(w, target))


# ---------------------------------------------------------------------------
# dihedral families
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class DihedralFamily:
    """Self-reciprocal family: b_k = sign * a_{r-k}, sign in {+1, -1}.

    Case I is the cyclic case A shape (d = n*r + 1, needs a_r != 0); case II
    is the cyclic case C shape (d = n*r - 1, needs a_r = 0 and a_0 != 0).
    The built map then satisfies phi(1/z) = 1/phi(z) in addition to the
    rotation symmetry.
    """

    n: int
    r: int
    case: str                      # "I" | "II"
    sign: int                      # +1 | -1
    a: tuple[FieldElement, ...]

    def __post_init__(self):
        if self.case not in ("I", "II"):
            raise CoefficientConditionViolated(f"unknown dihedral case {self.case!r}")
        if self.sign not in (1, -1):
            raise CoefficientConditionViolated("sign must be +1 or -1")
        if len(self.a) != self.r + 1:
            raise CoefficientConditionViolated("coefficient vector must have length r+1")
        self.to_cyclic()  # validates

    @property
    def field(self) -> Field:
        return self.a[0].field

    @property
    def degree(self) -> int:
        return self.n * self.r + (1 if self.case == "I" else -1)

    def to_cyclic(self) -> CyclicFamily:
        s = self.field(self.sign)
        b = tuple(self.a[self.r - k] * s for k in range(self.r + 1))
        case = "A" if self.case == "I" else "C"
        try:
            return CyclicFamily(self.n, self.r, case, tuple(self.a), b)
        except CoefficientConditionViolated as exc:
            raise CoefficientConditionViolated(f"dihedral family invalid: {exc}") from exc


def build_dihedral(fam: DihedralFamily) -> RationalMap:
    return build_cyclic(fam.to_cyclic())


@dataclass(frozen=True)
class FixedPointBehavior:
    """How the built map moves the rotation's fixed points {0, inf} and the
    inversion's fixed points {1, -1}."""
    rotation_fixed_points: str     # "fixes" | "permutes"
    involution_fixed_points: str   # "fixes" | "permutes" | "collapses"
    images: tuple                  # (phi(0), phi(inf), phi(1), phi(-1))


def _classify_pair(img_p, img_m, p, m) -> str:
    if img_p == p and img_m == m:
        return "fixes"
    if img_p == m and img_m == p:
        return "permutes"
    return "collapses"


def check_fixed_point_behavior(fam: DihedralFamily) -> FixedPointBehavior:
    """Evaluate the family map on both fixed-point pairs and check the
    predicted (case, sign) table: case I fixes {0, inf} pointwise and case II
    swaps them; sign +1 fixes {1, -1} pointwise and sign -1 swaps them.

    The prediction for {1, -1} provably holds whenever n is even or r is
    even; for n and r both odd the two points collapse onto a single image
    and :class:`BehaviorMismatch` is raised with the observed record.
    """
    phi = build_dihedral(fam)
    field = phi.field
    zero = ProjPoint.finite(field.zero())
    inf = ProjPoint.infinity(field)
    one = ProjPoint.finite(field.one())
    mone = ProjPoint.finite(-field.one())
    imgs = tuple(eval_proj(phi, p) for p in (zero, inf, one, mone))
    rot = _classify_pair(imgs[0], imgs[1], zero, inf)
    inv = _classify_pair(imgs[2], imgs[3], one, mone)
    behavior = FixedPointBehavior(rot, inv, imgs)
    expected_rot = "fixes" if fam.case == "I" else "permutes"
    expected_inv = "fixes" if fam.sign == 1 else "permutes"
    if rot != expected_rot or inv != expected_inv:
        raise BehaviorMismatch(
            f"case {fam.case}, sign {fam.sign:+d}: expected "
            f"({expected_rot}, {expected_inv}), observed ({rot}, {inv}); "
            f"images {imgs}")
    return behavior


# ---------------------------------------------------------------------------
# witness construction
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class WitnessReport:
    """A concrete map together with exactly verified automorphisms."""

    map: RationalMap
    autos: tuple[tuple[MobiusMap, int], ...]
    group: GroupSpec
    family: CyclicFamily

    def verify(self) -> bool:
        for T, order in self.autos:
            if mobius_order(T) != order:
                return False
            if not is_automorphism(self.map, T):
                return False
        return True


def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    p = 2
    while p * p <= n:
        if n % p == 0:
            return False
        p += 1
    return True


def simple_cyclic_family(d: int, n: int, case: str, field: Field = QQ) -> CyclicFamily:
    """Deterministic sparse representative of each admissible family."""
    pairs = dict(cyclic_admissible(d, n))
    if case not in pairs:
        raise NotAdmissible(f"no cyclic case {case} for degree {d}, order {n}")
    r = pairs[case]
    zero, one, two = field.zero(), field.one(), field(2)
    if case == "A":
        a = [two] + [zero] * (r - 1) + [one]
        b = [one] + [zero] * r
    elif case == "B":
        a = [one] + [zero] * (r - 1) + [one]
        b = [zero, one] + [zero] * (r - 1)
    else:
        a = [one] + [zero] * r
        b = [zero] * r + [one]
    return CyclicFamily(n, r, case, tuple(a), tuple(b))


def simple_dihedral_family(d: int, n: int, case: str, sign: int = 1,
                           field: Field = QQ) -> DihedralFamily:
    pairs = dict(dihedral_admissible(d, n))
    if case not in pairs:
        raise NotAdmissible(f"no dihedral case {case} for degree {d}, order {n}")
    r = pairs[case]
    zero, one, two = field.zero(), field.one(), field(2)
    if case == "I":
        a = [two] + [zero] * (r - 1) + [one]
    else:
        a = [one] + [zero] * r
    return DihedralFamily(n, r, case, sign, tuple(a))


def classify_lemma_case(p: int, d: int) -> str:
    """Feasibility of a degree-d witness with symmetries of orders p and 2.

    Returns 'constructible' when the self-reciprocal or even-coefficient
    construction applies; otherwise decides whether ANY degree-d map can
    carry both symmetry orders by exhausting the finite symmetry types that
    contain elements of orders p and 2 (cyclic of order a multiple of 2p,
    dihedral of order swallowing p, and the exceptional groups), giving
    'exists_via_exceptional' or 'provably_empty'.
    """
    if not _is_prime(p) or p < 3:
        raise ValueError("p must be an odd prime")
    cases = cyclic_admissible(d, p)
    if not cases:
        raise NotAdmissible(f"order {p} does not occur in degree {d}")
    case, r = cases[0]
    if case in ("A", "C"):
        return "constructible"
    if r % 2 == 0:
        return "constructible"
    # case B with odd r: the even-support construction degenerates.  Check
    # every other finite symmetry type containing orders p and 2.
    for m in range(2 * p, d + 2, 2 * p):          # cyclic C_m with 2p | m
        if cyclic_admissible(d, m):
            return "exists_via_exceptional"
    for m in range(p, d + 2, p):                  # dihedral D_m with p | m
        if dihedral_admissible(d, m):
            return "exists_via_exceptional"
    for spec in (GroupSpec("A4"), GroupSpec("S4"), GroupSpec("A5")):
        if p in _element_orders(spec) and platonic_admissible(d, spec):
            return "exists_via_exceptional"
    return "provably_empty"


def _element_orders(spec: GroupSpec) -> set[int]:
    return {"A4": {1, 2, 3}, "S4": {1, 2, 3, 4}, "A5": {1, 2, 3, 5}}[spec.kind]


def lemma_witness(p: int, d: int) -> WitnessReport:
    """Witness map of degree d with verified automorphisms of orders p and 2.

    For d = p*r + 1 or p*r - 1 the self-reciprocal choice b_k = a_{r-k}
    makes 1/z an automorphism and the group is dihedral of order 2p.  For
    d = p*r with r even, supporting the coefficients on even indices makes
    -z an automorphism and the group is cyclic of order 2p.  For d = p*r
    with r odd no such map exists within the supported constructions; see
    :class:`WitnessUnavailable`.
    """
    if not _is_prime(p) or p < 3:
        raise NotAdmissible("p must be an odd prime")
    cases = cyclic_admissible(d, p)
    if not cases:
        raise NotAdmissible(f"order {p} does not occur in degree {d}")
    case, r = cases[0]
    field = CyclotomicField(p)
    Tp = rotation(p)

    if case in ("A", "C"):
        dcase = "I" if case == "A" else "II"
        dfam = simple_dihedral_family(d, p, dcase, sign=1, field=QQ)
        fam = dfam.to_cyclic()
        phi = build_cyclic(fam)
        inv = inversion(QQ)
        report = WitnessReport(
            map=phi,
            autos=((Tp, p), (inv, 2)),
            group=GroupSpec("dihedral", p),
            family=fam)
    else:
        analysis = classify_lemma_case(p, d)
        if analysis != "constructible":
            detail = ("no degree-%d map admits symmetries of orders %d and 2 "
                      "at all" % (d, p)) if analysis == "provably_empty" else (
                      "only an exceptional symmetry group could provide one, "
                      "and those normal forms are not constructed here")
            raise WitnessUnavailable(
                f"witness for orders ({p}, 2) in degree {d}: the inner degree "
                f"r = {r} is odd, so an even-support quotient would force a "
                f"common factor and a degree drop; {detail}", analysis)
        one, zero = QQ.one(), QQ.zero()
        a = [one] + [zero] * (r - 1) + [one]
        b = [zero] * 2 + [one] + [zero] * (r - 2)
        fam = CyclicFamily(p, r, "B", tuple(a), tuple(b))
        phi = build_cyclic(fam)
        neg = scaling(QQ(-1))
        report = WitnessReport(
            map=phi,
            autos=((Tp, p), (neg, 2)),
            group=GroupSpec("cyclic", 2 * p),
            family=fam)
    assert report.verify(), "witness failed verification"
    return report


# ---------------------------------------------------------------------------
# seeded family sampling (small integer heights, rejection on invalidity)
# ---------------------------------------------------------------------------

def _coeff_samplers(rng, field: Field):
    """Small-height samplers; Gaussian integers when the field contains i."""
    i_unit = None
    if isinstance(field, CyclotomicField) and field.n % 4 == 0:
        i_unit = lift(root_of_unity(4), field)

    def any_coeff() -> FieldElement:
        x = field(rng.randint(-9, 9))
        if i_unit is not None:
            x = x + i_unit * rng.randint(-9, 9)
        return x

    def nonzero() -> FieldElement:
        while True:
            x = any_coeff()
            if not x.is_zero():
                return x

    return any_coeff, nonzero


def random_cyclic_family(rng, n: int, r: int, case: str,
                         field: Field = QQ,
                         max_tries: int = 400) -> CyclicFamily:
    """Seeded rejection sampler for valid families with small integer
    coefficients (Gaussian integers over fields containing i);
    deterministic for a fixed rng state."""
    any_coeff, nonzero = _coeff_samplers(rng, field)
    zero = field.zero()
    for _ in range(max_tries):
        a = [any_coeff() for _ in range(r + 1)]
        b = [any_coeff() for _ in range(r + 1)]
        if case == "A":
            a[r] = nonzero()
            b[0] = nonzero()
        elif case == "B":
            a[r] = nonzero()
            b[0] = zero
            if all(c.is_zero() for c in b):
                b[1] = nonzero()
        elif case == "C":
            a[r] = zero
            b[0] = zero
            b[r] = nonzero()
            if all(c.is_zero() for c in a):
                a[0] = nonzero()
        else:
            raise ValueError(f"unknown case {case!r}")
        try:
            return CyclicFamily(n, r, case, tuple(a), tuple(b))
        except CoefficientConditionViolated:
            continue
    raise RuntimeError(f"no valid family found in {max_tries} draws")


def random_dihedral_family(rng, n: int, r: int, case: str, sign: int,
                           field: Field = QQ,
                           max_tries: int = 400) -> DihedralFamily:
    any_coeff, nonzero = _coeff_samplers(rng, field)
    for _ in range(max_tries):
        a = [any_coeff() for _ in range(r + 1)]
        if case == "I":
            a[r] = nonzero()
        else:
            a[r] = field.zero()
            a[0] = nonzero()
        try:
            return DihedralFamily(n, r, case, sign, tuple(a))
        except CoefficientConditionViolated:
            continue
    raise RuntimeError(f"no valid dihedral family found in {max_tries} draws")


# ---------------------------------------------------------------------------
# recovering a family from a map
# ---------------------------------------------------------------------------

def cyclic_family_from_map(phi: RationalMap, n: int) -> tuple[CyclicFamily, MobiusMap]:
    """Recognise phi as z*psi(z^n) up to the standard renormalisation.

    Returns (family, U) where U is the recorded conjugator with
    build_cyclic(family) == U o phi o U^{-1}; U is the identity except for
    maps that swallow both 0 and infinity into 0, which are first turned
    around by the inversion.
    """
    field = phi.field
    U = MobiusMap(field, 1, 0, 0, 1)
    zero = ProjPoint.finite(field.zero())
    inf = ProjPoint.infinity(field)
    img0, imginf = eval_proj(phi, zero), eval_proj(phi, inf)
    if img0 == zero and imginf == zero:
        # transitional shape: invert once to land in the standard case
        U = inversion(field)
        phi = conjugate(phi, U)
        img0, imginf = imginf, eval_proj(phi, inf)
        img0 = eval_proj(phi, zero)
    d = phi.degree
    N, D = phi.num, phi.den
    if img0 == zero and imginf == inf:
        r, case = (d - 1) // n, "A"
        if d != n * r + 1:
            raise CoefficientConditionViolated("degree incompatible with fixing 0 and inf")
        a = tuple(N[n * k + 1] for k in range(r + 1))
        b = tuple(D[n * k] for k in range(r + 1))
    else:
        # psi has a pole at 0: phi = P(z^n) / (z^(l*n-1) * Qhat(z^n))
        v = D.valuation()
        if (v + 1) % n != 0:
            raise CoefficientConditionViolated("map is not in rotation normal form")
        ell = (v + 1) // n
        qhat = Poly(field, D.coeffs[v:]).deflate(n)
        P = N.deflate(n)
        if img0 == inf and imginf == inf:
            r, case = d // n, "B"
        elif img0 == inf and imginf == zero:
            r, case = (d + 1) // n, "C"
        else:
            raise CoefficientConditionViolated("map does not stabilise {0, inf}")
        Q = qhat.shift(ell)
        a = tuple(P[k] for k in range(r + 1))
        b = tuple(Q[k] for k in range(r + 1))
    fam = CyclicFamily(n, r, case, a, b)
    rebuilt = build_cyclic(fam)
    if not maps_equal(rebuilt, phi):
        raise CoefficientConditionViolated("family reconstruction mismatch")
    return fam, U


# ---------------------------------------------------------------------------
# automorphisms inside the rotation normaliser
# ---------------------------------------------------------------------------

def _scaling_order_bound(phi: RationalMap) -> int:
    """Largest M such that z -> lam z is an automorphism exactly for the
    M-th roots of unity lam; 0 means every scaling works (degree-1 maps)."""
    suppN = phi.num.support()
    suppD = phi.den.support()
    g = 0
    for s in (suppN, suppD):
        for i in s:
            for j in s:
                g = math.gcd(g, abs(i - j))
    for i in suppN:
        for j in suppD:
            g = math.gcd(g, abs(i - 1 - j))
    return g


def _unit_coset(mu0: FieldElement, M: int):
    """mu0 times all M-th roots of unity, lifted to one field."""
    K = common_field(mu0.field, root_of_unity_field(M))
    wM = lift(root_of_unity(M), K) if M > 1 else K.one()
    out, cur = [], lift(mu0, K)
    for _ in range(M):
        out.append(cur)
        cur = cur * wM
    return out


def _rational_perfect_root(fr: Fraction, M: int) -> Optional[Fraction]:
    num, den, sign = fr.numerator, fr.denominator, 1
    if num < 0:
        if M % 2 == 0:
            return None
        sign, num = -1, -num
    if num == 0:
        return None
    rn = round(num ** (1.0 / M))
    rd = round(den ** (1.0 / M))
    for cn in (rn - 1, rn, rn + 1):
        for cd in (rd - 1, rd, rd + 1):
            if cn > 0 and cd > 0 and cn ** M == num and cd ** M == den:
                return Fraction(sign * cn, cd)
    return None


def _solve_power_equation(M: int, gamma: FieldElement):
    """All complex solutions of mu^M = gamma, exactly, within the supported
    field tower (cyclotomic lifts and a single square-root layer).
    Returns a list of field elements or None when out of reach."""
    field = gamma.field
    if M == 1:
        return [gamma]
    # gamma a root of unity: the solutions are a cyclotomic coset
    bound = 24 * M
    acc = field.one()
    for s in range(1, bound + 1):
        acc = acc * gamma
        if acc == field.one():
            Ms = M * s
            K = common_field(field, root_of_unity_field(Ms))
            wMs = lift(root_of_unity(Ms), K)
            glift = lift(gamma, K)
            cur = K.one()
            for _ in range(Ms):
                if cur ** M == glift:
                    return _unit_coset(cur, M)
                cur = cur * wMs
            return None
    if field == QQ:
        root = _rational_perfect_root(gamma.payload, M)
        if root is not None:
            return _unit_coset(QQ(root), M)
        if M % 2 == 0:
            # split mu^M = gamma into mu^(M/2) = +-eta when gamma = eta^2
            eta = _rational_perfect_root(gamma.payload, 2)
            if eta is not None:
                lower_p = _solve_power_equation(M // 2, QQ(eta))
                lower_m = _solve_power_equation(M // 2, QQ(-eta))
                if lower_p is not None and lower_m is not None:
                    return lower_p + lower_m
    if M == 2 and not isinstance(field, QuadraticField):
        K = QuadraticField(field, gamma)
        s = K.sqrt_delta()
        return [s, -s]
    return None


def aut_in_normalizer(phi: RationalMap, n: int) -> list[MobiusMap]:
    """All nontrivial automorphisms of phi of the forms lam*z and mu/z.

    The scaling part is complete: the valid lam form exactly the M-th roots
    of unity for M the gcd of the exponent constraints.  The inversion part
    solves the exact functional equation z^d N(mu/z) N(z) = mu z^d D(mu/z) D(z);
    its solutions are a single coset mu0 * (M-th roots of unity) and are
    returned whenever mu0 lives in a cyclotomic extension, is a rational
    perfect power, or needs only one square root; otherwise
    :class:`AutSearchIncomplete` is raised.
    """
    field = phi.field
    d = phi.degree
    M = _scaling_order_bound(phi)
    if M == 0:
        raise ValueError("degree-one scaling stabiliser is infinite")
    autos: list[MobiusMap] = []
    FM = root_of_unity_field(M)
    K = common_field(field, FM)
    wM = lift(root_of_unity(M), K) if M > 1 else K.one()
    cur = wM
    for _ in range(M - 1):
        autos.append(scaling(cur))
        cur = cur * wM

    # inversion part: collect the coefficient equations of
    # N~(z) N(z) - mu D~(z) D(z) = 0 as polynomials in mu
    N, D = phi.num, phi.den
    mu_polys: dict[int, dict[int, FieldElement]] = {}

    def add(zdeg: int, mudeg: int, val: FieldElement):
        if val.is_zero():
            return
        row = mu_polys.setdefault(zdeg, {})
        row[mudeg] = row.get(mudeg, field.zero()) + val

    for k in range(d + 1):          # z^k coefficient of N~ is N[d-k] mu^{d-k}
        nk = N[d - k]
        if not nk.is_zero():
            for j in range(d + 1):
                if not N[j].is_zero():
                    add(k + j, d - k, nk * N[j])
        dk = D[d - k]
        if not dk.is_zero():
            for j in range(d + 1):
                if not D[j].is_zero():
                    add(k + j, d - k + 1, -(dk * D[j]))
    eqs = []
    for zdeg in sorted(mu_polys):
        row = mu_polys[zdeg]
        top = max(row)
        eqs.append(Poly(field, [row.get(i, field.zero()) for i in range(top + 1)]))
    G: Optional[Poly] = None
    for eq in eqs:
        if eq.is_zero():
            continue
        G = eq if G is None else poly_gcd(G, eq)
        if G.degree == 0:
            break
    if G is not None and G.degree > 0:
        # strip the mu = 0 root and the multiplicity
        v = G.valuation()
        if v:
            G = Poly(field, G.coeffs[v:])
        if G.degree > 0:
            Gp = G.derivative()
            if not Gp.is_zero():
                g2 = poly_gcd(G, Gp)
                if g2.degree > 0:
                    G = G // g2
            G = G.monic()
            B = G.degree
            middle = [G[k] for k in range(1, B)]
            if any(not c.is_zero() for c in middle):
                raise AutSearchIncomplete(
                    "inversion-equation gcd is not a binomial; no exact root "
                    "extraction available")
            gamma = -G[0]
            coset = _solve_power_equation(B, gamma)
            if coset is None:
                raise AutSearchIncomplete(
                    f"inversion coefficient satisfies mu^{B} = {gamma!r}, which "
                    f"needs a radical tower outside the supported fields")
            for mu in coset:
                autos.append(inversion(mu.field, mu))
    return autos
