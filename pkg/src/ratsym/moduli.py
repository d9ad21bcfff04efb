"""Moduli-level computations for symmetric rational maps.

* closed-form complex dimensions of the symmetric loci,
* the normaliser action on family coefficients (scaling and inversion),
* certified straight-line paths inside a normal-form family, with exact
  Sturm certificates over Q / Q(i) and certified interval subdivision
  elsewhere,
* chained connectivity certificates through explicit witness maps,
* multiplier coordinates of degree-2 maps and the cubic relation cut out by
  the symmetric classes.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Union

from .fields import (QQ, ComplexBox, CyclotomicField, Field, FieldElement,
                     QuadraticField, common_field, interval_embed, lift)
from .mobius import MobiusMap, identity, mobius_order, scaling, translation
from .poly import Poly, interpolate, poly_eval, poly_gcd, resultant, det, sturm_roots_in_interval
from .ratmap import (ProjPoint, RationalMap, conjugate, derivative, eval_proj,
                     maps_equal)
from .symmetry import (CyclicFamily, CoefficientConditionViolated, NotAdmissible,
                       WitnessReport, build_cyclic, cyclic_admissible,
                       cyclic_family_from_map, dihedral_admissible, lemma_witness,
                       random_cyclic_family)

__all__ = [
    "DimensionReport",
    "dim_cyclic",
    "dim_dihedral",
    "act_scale",
    "act_invert",
    "SturmProof",
    "IntervalProof",
    "PathSegment",
    "PathCertificate",
    "build_path",
    "validate_path_certificate",
    "PathLeg",
    "ConjugationLeg",
    "GapMarker",
    "ConnectivityCertificate",
    "connectivity_certificate",
    "validate_connectivity_certificate",
    "involution_to_standard",
    "MilnorPoint",
    "milnor_coordinates",
    "fujimura_cubic",
    "FamilyMismatch",
    "CertificationFailed",
    "CertificateInvalid",
    "NotDegreeTwo",
    "NormalizationFailed",
]


class FamilyMismatch(ValueError):
    """Path endpoints live in different (n, r, case) families."""


class CertificationFailed(RuntimeError):
    """No certified nondegenerate path was found (after retries)."""


class CertificateInvalid(RuntimeError):
    """A stored certificate failed independent revalidation."""


class NotDegreeTwo(ValueError):
    pass


class NormalizationFailed(RuntimeError):
    pass


# ---------------------------------------------------------------------------
# dimensions
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class DimensionReport:
    d: int
    n: int
    kind: str          # "cyclic" | "dihedral"
    case: str
    dimension: int


def dim_cyclic(d: int, n: int, case: Optional[str] = None) -> DimensionReport:
    """Complex dimension of the degree-d locus with an order-n rotation:
    2(d-1)/n, (2d-n)/n or 2(d+1-n)/n for d congruent to 1, 0, -1 mod n."""
    cases = dict(cyclic_admissible(d, n))
    if not cases:
        raise NotAdmissible(f"order {n} does not occur in degree {d}")
    if case is None:
        if len(cases) > 1:
            raise ValueError(f"ambiguous cases {sorted(cases)}; select one")
        case = next(iter(cases))
    if case not in cases:
        raise NotAdmissible(f"case {case} does not occur for (d, n) = ({d}, {n})")
    if case == "A":
        num = 2 * (d - 1)
    elif case == "B":
        num = 2 * d - n
    else:
        num = 2 * (d + 1 - n)
    assert num % n == 0
    return DimensionReport(d, n, "cyclic", case, num // n)


def dim_dihedral(d: int, n: int, case: Optional[str] = None) -> DimensionReport:
    """Dimension of the dihedral locus: (d-1)/n or (d+1-n)/n."""
    cases = dict(dihedral_admissible(d, n))
    if not cases:
        raise NotAdmissible(f"dihedral symmetry of order 2*{n} does not occur "
                            f"in degree {d}")
    if case is None:
        if len(cases) > 1:
            raise ValueError(f"ambiguous cases {sorted(cases)}; select one")
        case = next(iter(cases))
    if case not in cases:
        raise NotAdmissible(f"case {case} does not occur for (d, n) = ({d}, {n})")
    num = (d - 1) if case == "I" else (d + 1 - n)
    assert num % n == 0
    return DimensionReport(d, n, "dihedral", case, num // n)


# ---------------------------------------------------------------------------
# normaliser action on families
# ---------------------------------------------------------------------------

def act_scale(fam: CyclicFamily, lam: FieldElement) -> CyclicFamily:
    """Family of the scaling conjugate: psi(u) -> psi(u / lam^n), i.e.
    coefficients pick up lam^(-n*k)."""
    if isinstance(lam, (int, Fraction)):
        lam = QQ(lam)
    if lam.is_zero():
        raise ValueError("scaling parameter must be nonzero")
    K = common_field(fam.field, lam.field)
    fam = fam.lift(K) if K != fam.field else fam
    factor = lift(lam, K) ** (-fam.n)
    pows = [K.one()]
    for _ in range(fam.r):
        pows.append(pows[-1] * factor)
    a = tuple(fam.a[k] * pows[k] for k in range(fam.r + 1))
    b = tuple(fam.b[k] * pows[k] for k in range(fam.r + 1))
    return fam.with_coeffs(a, b)


def act_invert(fam: CyclicFamily) -> CyclicFamily:
    """Family of the inversion conjugate psi(u) -> 1/psi(1/u).

    Cases A and C close under the reverse-and-swap of the coefficient
    vectors.  A case-B family is returned unchanged: the raw inversion lands
    in the transitional shape (numerator degree drop with a finite value at
    zero), and its standard renormalisation -- conjugating once more by the
    same inversion -- restores the original family.
    """
    if fam.case == "B":
        return fam
    a = tuple(reversed(fam.b))
    b = tuple(reversed(fam.a))
    return fam.with_coeffs(a, b)


# ---------------------------------------------------------------------------
# path certification
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class SturmProof:
    """Exact nonvanishing proof over [0, 1]: the stored rational polynomial
    (the square-free norm of the obstruction polynomial) has zero roots in
    (0, 1], and the obstruction is nonzero at t = 0 and t = 1."""
    norm_poly: Poly                # over Q, square-free, monic
    roots_in_01: int
    value_at_0: FieldElement
    value_at_1: FieldElement

    @property
    def kind(self) -> str:
        return "sturm"


@dataclass(frozen=True)
class IntervalProof:
    """Certified subdivision: boxes enclosing the obstruction polynomial on
    consecutive t-subintervals, each excluding zero."""
    precision: int
    boxes: tuple[tuple[Fraction, Fraction, ComplexBox], ...]

    @property
    def kind(self) -> str:
        return "interval"


@dataclass(frozen=True)
class PathSegment:
    start_a: tuple
    start_b: tuple
    end_a: tuple
    end_b: tuple
    proof: Union[SturmProof, IntervalProof]


@dataclass(frozen=True)
class PathCertificate:
    """Certified piecewise-linear path in one (n, r, case) coefficient family.

    Every segment's obstruction polynomial -- the pencil resultant times the
    case conditions -- is certified nonvanishing on the whole closed
    parameter interval, so every intermediate map is a valid member of the
    family with the declared degree and rotation symmetry.
    """
    n: int
    r: int
    case: str
    field: Field
    strategy: str
    segments: tuple[PathSegment, ...]
    conjugators: tuple[MobiusMap, ...] = ()

    def start_family(self) -> CyclicFamily:
        if not self.segments:
            raise ValueError("empty certificate has no stored endpoints")
        s = self.segments[0]
        return CyclicFamily(self.n, self.r, self.case, s.start_a, s.start_b)

    def end_family(self) -> CyclicFamily:
        s = self.segments[-1]
        return CyclicFamily(self.n, self.r, self.case, s.end_a, s.end_b)


def _formal_degrees(case: str, r: int) -> tuple[int, int]:
    # case C has a_r identically zero, so the honest numerator slot is r-1;
    # at (r, r) the determinant would vanish for structural reasons alone
    return (r - 1, r) if case == "C" else (r, r)


def _pencil_polys(fam0: CyclicFamily, fam1: CyclicFamily):
    """Per-coefficient linear interpolations (1-t)*c0 + t*c1 as Polys in t."""
    K = fam0.field
    a_pencil = [Poly(K, (fam0.a[k], fam1.a[k] - fam0.a[k])) for k in range(fam0.r + 1)]
    b_pencil = [Poly(K, (fam0.b[k], fam1.b[k] - fam0.b[k])) for k in range(fam0.r + 1)]
    return a_pencil, b_pencil


def _segment_obstruction(fam0: CyclicFamily, fam1: CyclicFamily) -> Poly:
    """Polynomial in t whose nonvanishing on [0,1] certifies the segment:
    pencil resultant at the case formal degrees, times the case conditions."""
    K = fam0.field
    r, case = fam0.r, fam0.case
    a_pencil, b_pencil = _pencil_polys(fam0, fam1)
    fdeg = _formal_degrees(case, r)
    m = fdeg[0] + fdeg[1]
    nodes = [K(j) for j in range(m + 1)]
    values = []
    for t in nodes:
        P = Poly(K, [poly_eval(p, t) for p in a_pencil])
        Q = Poly(K, [poly_eval(p, t) for p in b_pencil])
        values.append(resultant(P, Q, *fdeg))
    R = interpolate(K, list(zip(nodes, values)))
    G = R
    if case == "A":
        G = G * a_pencil[r] * b_pencil[0]
    elif case == "B":
        G = G * a_pencil[r]
    else:
        G = G * b_pencil[r]
    return G


def _rational_part(p: Poly) -> Poly:
    """Convert a conj-fixed polynomial over Q or Q(i) to a Q-polynomial."""
    if p.field == QQ:
        return p
    if isinstance(p.field, CyclotomicField) and p.field.n == 4:
        coeffs = []
        for c in p.coeffs:
            re, im = c.payload
            if im != 0:
                raise ValueError("polynomial is not conj-fixed")
            coeffs.append(QQ(re))
        return Poly(QQ, coeffs)
    raise ValueError("no rational part extraction for this field")


def _sturm_segment_proof(G: Poly) -> Optional[SturmProof]:
    K = G.field
    supported = K == QQ or (isinstance(K, CyclotomicField) and K.n == 4)
    if not supported:
        return None
    g0 = poly_eval(G, K.zero())
    g1 = poly_eval(G, K.one())
    if g0.is_zero() or g1.is_zero():
        return None
    N = G if K == QQ else G * G.conj()
    NQ = _rational_part(N)
    sf = (NQ // poly_gcd(NQ, NQ.derivative())).monic()
    count = sturm_roots_in_interval(sf, Fraction(0), Fraction(1))
    if count != 0:
        return None
    return SturmProof(norm_poly=sf, roots_in_01=0, value_at_0=g0, value_at_1=g1)


def _interval_boxes(G: Poly, precision: int):
    coeff_boxes = [interval_embed(c, precision) for c in G.coeffs]
    deriv_boxes = [interval_embed(c, precision) for c in G.derivative().coeffs]
    return coeff_boxes, deriv_boxes


def _interval_eval(coeff_boxes, deriv_boxes, t_lo: Fraction, t_hi: Fraction,
                   precision: int) -> ComplexBox:
    """Mean-value-form enclosure of G over [t_lo, t_hi]:
    G(center) + G'([t_lo, t_hi]) * [-h, h].  Intermediate results are
    rounded outward to bounded dyadics, so containment is preserved and
    the arithmetic stays cheap."""
    work = precision + 16

    def horner(boxes, tbox):
        acc = ComplexBox.exact(Fraction(0))
        for cb in reversed(boxes):
            acc = (acc * tbox + cb).round_out(work)
        return acc

    center = (t_lo + t_hi) / 2
    point = horner(coeff_boxes, ComplexBox.exact(center))
    if t_lo == t_hi:
        return point
    half = (t_hi - t_lo) / 2
    slope = horner(deriv_boxes, ComplexBox(t_lo, t_hi, Fraction(0), Fraction(0)))
    err = slope * ComplexBox(-half, half, Fraction(0), Fraction(0))
    return (point + err).round_out(work)


def _interval_segment_proof(G: Poly, precision: int,
                            depth_cap: int = 40) -> Optional[IntervalProof]:
    coeff_boxes, deriv_boxes = _interval_boxes(G, precision)
    boxes = []

    def cover(lo: Fraction, hi: Fraction, depth: int) -> bool:
        val = _interval_eval(coeff_boxes, deriv_boxes, lo, hi, precision)
        if not val.contains_zero():
            boxes.append((lo, hi, val))
            return True
        if depth >= depth_cap:
            return False
        mid = (lo + hi) / 2
        return cover(lo, mid, depth + 1) and cover(mid, hi, depth + 1)

    if not cover(Fraction(0), Fraction(1), 0):
        return None
    return IntervalProof(precision=precision, boxes=tuple(boxes))


def _certify_segment(fam0: CyclicFamily, fam1: CyclicFamily, strategy: str,
                     precision: int) -> Optional[PathSegment]:
    G = _segment_obstruction(fam0, fam1)
    if G.is_zero():
        return None
    proof: Optional[Union[SturmProof, IntervalProof]] = None
    if strategy == "sturm":
        proof = _sturm_segment_proof(G)
        if proof is None and not (fam0.field == QQ or
                                  (isinstance(fam0.field, CyclotomicField)
                                   and fam0.field.n == 4)):
            proof = _interval_segment_proof(G, precision)
    elif strategy == "interval":
        proof = _interval_segment_proof(G, precision)
    else:
        raise ValueError(f"unknown strategy {strategy!r}")
    if proof is None:
        return None
    return PathSegment(start_a=fam0.a, start_b=fam0.b,
                       end_a=fam1.a, end_b=fam1.b, proof=proof)


def build_path(fam0: CyclicFamily, fam1: CyclicFamily, strategy: str = "sturm",
               rng: Optional[random.Random] = None, precision: int = 128,
               max_retries: int = 8) -> PathCertificate:
    """Certified path from fam0 to fam1 inside their common family.

    Straight segment first; if its obstruction polynomial vanishes somewhere
    on [0, 1], retry through seeded random intermediate families (two
    segments), up to ``max_retries`` times.  Certification is exact and
    never assumed: failure raises :class:`CertificationFailed`.
    """
    if (fam0.n, fam0.r, fam0.case) != (fam1.n, fam1.r, fam1.case):
        raise FamilyMismatch(
            f"({fam0.n}, {fam0.r}, {fam0.case}) vs ({fam1.n}, {fam1.r}, {fam1.case})")
    if fam0.field != fam1.field:
        K = common_field(fam0.field, fam1.field)
        fam0, fam1 = fam0.lift(K), fam1.lift(K)
    if rng is None:
        rng = random.Random(0)
    if fam0.a == fam1.a and fam0.b == fam1.b:
        return PathCertificate(fam0.n, fam0.r, fam0.case, fam0.field,
                               strategy, segments=())
    seg = _certify_segment(fam0, fam1, strategy, precision)
    if seg is not None:
        return PathCertificate(fam0.n, fam0.r, fam0.case, fam0.field,
                               strategy, segments=(seg,))
    # a straight segment between real families can be forced through the
    # degenerate locus (sign changes of real case conditions); detour points
    # get Gaussian-integer coefficients, where degeneracy has real
    # codimension two and seeded retries succeed quickly
    from .fields import FieldMismatch
    try:
        Kd = common_field(fam0.field, CyclotomicField(4))
    except FieldMismatch:
        Kd = fam0.field
    fam0d, fam1d = fam0.lift(Kd), fam1.lift(Kd)
    for _ in range(max_retries):
        mid = random_cyclic_family(rng, fam0.n, fam0.r, fam0.case, field=Kd)
        seg1 = _certify_segment(fam0d, mid, strategy, precision)
        if seg1 is None:
            continue
        seg2 = _certify_segment(mid, fam1d, strategy, precision)
        if seg2 is None:
            continue
        return PathCertificate(fam0.n, fam0.r, fam0.case, Kd,
                               strategy, segments=(seg1, seg2))
    raise CertificationFailed(
        f"no certified path between the given members of "
        f"(n={fam0.n}, r={fam0.r}, case {fam0.case}) after {max_retries} detours")


def validate_path_certificate(cert: PathCertificate) -> None:
    """Independent revalidation: rebuild every family, recompute every
    obstruction polynomial and proof artifact from the stored endpoint
    vectors, and fail on any mismatch.  Raises :class:`CertificateInvalid`.
    """
    prev_end = None
    for idx, seg in enumerate(cert.segments):
        try:
            f0 = CyclicFamily(cert.n, cert.r, cert.case, seg.start_a, seg.start_b)
            f1 = CyclicFamily(cert.n, cert.r, cert.case, seg.end_a, seg.end_b)
        except CoefficientConditionViolated as exc:
            raise CertificateInvalid(f"segment {idx}: invalid endpoint family: {exc}")
        if prev_end is not None and (f0.a, f0.b) != prev_end:
            raise CertificateInvalid(f"segment {idx}: endpoints do not chain")
        prev_end = (f1.a, f1.b)
        G = _segment_obstruction(f0, f1)
        proof = seg.proof
        if isinstance(proof, SturmProof):
            recomputed = _sturm_segment_proof(G)
            if recomputed is None:
                raise CertificateInvalid(f"segment {idx}: obstruction not certifiable")
            if recomputed.norm_poly != proof.norm_poly:
                raise CertificateInvalid(f"segment {idx}: stored norm polynomial "
                                         f"differs from recomputation")
            if proof.roots_in_01 != 0:
                raise CertificateInvalid(f"segment {idx}: stored root count nonzero")
            if (recomputed.value_at_0 != proof.value_at_0
                    or recomputed.value_at_1 != proof.value_at_1):
                raise CertificateInvalid(f"segment {idx}: endpoint values differ")
        elif isinstance(proof, IntervalProof):
            coeff_boxes, deriv_boxes = _interval_boxes(G, proof.precision)
            expected_lo = Fraction(0)
            for (lo, hi, box) in proof.boxes:
                if lo != expected_lo:
                    raise CertificateInvalid(f"segment {idx}: subintervals do not tile")
                if not lo < hi:
                    raise CertificateInvalid(f"segment {idx}: empty subinterval")
                val = _interval_eval(coeff_boxes, deriv_boxes, lo, hi,
                                     proof.precision)
                if (val.re_lo, val.re_hi, val.im_lo, val.im_hi) != \
                        (box.re_lo, box.re_hi, box.im_lo, box.im_hi):
                    raise CertificateInvalid(f"segment {idx}: stored box differs "
                                             f"from recomputation")
                if val.contains_zero():
                    raise CertificateInvalid(f"segment {idx}: box contains zero")
                expected_lo = hi
            if expected_lo != 1:
                raise CertificateInvalid(f"segment {idx}: subdivision stops early")
        else:
            raise CertificateInvalid(f"segment {idx}: unknown proof type")


# ---------------------------------------------------------------------------
# connectivity chains
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class PathLeg:
    prime: int
    cert: PathCertificate


@dataclass(frozen=True)
class ConjugationLeg:
    conjugator: MobiusMap
    source: RationalMap
    target: RationalMap


@dataclass(frozen=True)
class GapMarker:
    reason: str
    from_family: CyclicFamily
    to_family: CyclicFamily


@dataclass(frozen=True)
class ConnectivityCertificate:
    degree: int
    legs: tuple

    def is_gap_free(self) -> bool:
        return all(not isinstance(leg, GapMarker) for leg in self.legs)


def _exact_sqrt(x: FieldElement) -> FieldElement:
    if x.field == QQ:
        fr = x.payload
        if fr >= 0:
            rn, rd = math.isqrt(fr.numerator), math.isqrt(fr.denominator)
            if rn * rn == fr.numerator and rd * rd == fr.denominator:
                return QQ(Fraction(rn, rd))
    K = QuadraticField(x.field, x)
    return K.sqrt_delta()


def involution_to_standard(S: MobiusMap) -> MobiusMap:
    """A conjugator U with U o S o U^{-1} = -z, for any order-2 map S.

    U sends the two fixed points of S to 0 and infinity; the fixed points
    may require one square root, in which case the result lives in a
    quadratic extension.
    """
    if mobius_order(S) != 2:
        raise ValueError("input is not an involution")
    field = S.field
    if S.b.is_zero() and S.c.is_zero():
        return identity(field)
    if S.c.is_zero():
        zstar = S.b / (S.d - S.a)
        return translation(-zstar)
    disc = (S.d - S.a) * (S.d - S.a) + 4 * (S.b * S.c)
    s = _exact_sqrt(disc)
    K = s.field
    a = lift(S.a, K) if K != field else S.a
    d = lift(S.d, K) if K != field else S.d
    c = lift(S.c, K) if K != field else S.c
    two_c = c * 2
    xi1 = ((a - d) + s) / two_c
    xi2 = ((a - d) - s) / two_c
    U = MobiusMap(K, K.one(), -xi1, K.one(), -xi2)
    check = U.compose(S.lift(K)).compose(U.inverse())
    assert check == scaling(K(-1)), "involution normalisation failed"
    return U


def _locus_input(w) -> CyclicFamily:
    if isinstance(w, CyclicFamily):
        return w
    if isinstance(w, WitnessReport):
        return w.family
    raise TypeError("expected a CyclicFamily or WitnessReport")


def _reduce_to_order2(fam: CyclicFamily, strategy: str, rng, precision: int):
    """Legs from a prime-order family to a map in -z standard form, plus the
    resulting order-2 family."""
    p, d = fam.n, fam.degree
    w = lemma_witness(p, d)
    wfam = w.family.lift(fam.field) if w.family.field != fam.field else w.family
    leg = PathLeg(p, build_path(fam, wfam, strategy, rng, precision))
    source = build_cyclic(wfam)
    S = next(T for T, order in w.autos if order == 2)
    U = involution_to_standard(S)
    phi2 = conjugate(source, U)
    c2fam, J = cyclic_family_from_map(phi2, 2)
    V = J.compose(U) if not J.is_identity() else U
    target = build_cyclic(c2fam)
    conj_leg = ConjugationLeg(conjugator=V, source=source, target=target)
    return [leg, conj_leg], c2fam


def connectivity_certificate(w0, w1, strategy: str = "sturm",
                             rng: Optional[random.Random] = None,
                             precision: int = 128) -> ConnectivityCertificate:
    """Chain of certified legs connecting two symmetric classes of one degree.

    Each endpoint is a rotation normal-form family for a prime order (2 or an
    odd prime).  Odd-prime sides are routed through an explicit witness map
    carrying an extra involution, which is then conjugated into -z standard
    position (conjugator recorded); the middle leg runs inside the order-2
    locus.  When two legs land in different (case, r) families of the same
    rotation order, a :class:`GapMarker` records the unbridged step instead
    of fabricating one.
    """
    if rng is None:
        rng = random.Random(0)
    fam0, fam1 = _locus_input(w0), _locus_input(w1)
    if fam0.degree != fam1.degree:
        raise ValueError("endpoints have different degrees")
    d = fam0.degree
    legs: list = []
    if fam0.n == fam1.n:
        if (fam0.case, fam0.r) == (fam1.case, fam1.r):
            legs.append(PathLeg(fam0.n, build_path(fam0, fam1, strategy, rng, precision)))
        else:
            legs.append(GapMarker(
                reason=(f"families ({fam0.case}, r={fam0.r}) and "
                        f"({fam1.case}, r={fam1.r}) of the order-{fam0.n} locus "
                        f"have no constructed bridge"),
                from_family=fam0, to_family=fam1))
        return ConnectivityCertificate(d, tuple(legs))

    pre0, c2fam0 = ([], fam0) if fam0.n == 2 else _reduce_to_order2(
        fam0, strategy, rng, precision)
    pre1, c2fam1 = ([], fam1) if fam1.n == 2 else _reduce_to_order2(
        fam1, strategy, rng, precision)

    legs.extend(pre0)
    if (c2fam0.case, c2fam0.r) == (c2fam1.case, c2fam1.r):
        legs.append(PathLeg(2, build_path(c2fam0, c2fam1, strategy, rng, precision)))
    else:
        legs.append(GapMarker(
            reason=(f"order-2 families ({c2fam0.case}, r={c2fam0.r}) and "
                    f"({c2fam1.case}, r={c2fam1.r}) have no constructed bridge"),
            from_family=c2fam0, to_family=c2fam1))
    for leg in reversed(pre1):
        if isinstance(leg, ConjugationLeg):
            legs.append(ConjugationLeg(conjugator=leg.conjugator.inverse(),
                                       source=leg.target, target=leg.source))
        else:
            legs.append(PathLeg(leg.prime,
                                _reverse_path_certificate(leg.cert)))
    return ConnectivityCertificate(d, tuple(legs))


def _reverse_path_certificate(cert: PathCertificate) -> PathCertificate:
    segs = tuple(PathSegment(start_a=s.end_a, start_b=s.end_b,
                             end_a=s.start_a, end_b=s.start_b, proof=s.proof)
                 for s in reversed(cert.segments))
    rebuilt = []
    for s in segs:
        f0 = CyclicFamily(cert.n, cert.r, cert.case, s.start_a, s.start_b)
        f1 = CyclicFamily(cert.n, cert.r, cert.case, s.end_a, s.end_b)
        seg = _certify_segment(f0, f1, cert.strategy, 128)
        if seg is None:
            raise CertificationFailed("reversed segment failed certification")
        rebuilt.append(seg)
    return PathCertificate(cert.n, cert.r, cert.case, cert.field,
                           cert.strategy, tuple(rebuilt), cert.conjugators)


def validate_connectivity_certificate(cert: ConnectivityCertificate) -> None:
    """Revalidate every leg and the hand-offs between consecutive legs."""
    prev_map: Optional[RationalMap] = None
    for idx, leg in enumerate(cert.legs):
        if isinstance(leg, PathLeg):
            validate_path_certificate(leg.cert)
            if leg.cert.segments:
                start = build_cyclic(leg.cert.start_family())
                end = build_cyclic(leg.cert.end_family())
                if start.degree != cert.degree:
                    raise CertificateInvalid(f"leg {idx}: degree mismatch")
                if prev_map is not None and not maps_equal(prev_map, start):
                    raise CertificateInvalid(f"leg {idx}: hand-off mismatch")
                prev_map = end
        elif isinstance(leg, ConjugationLeg):
            expected = conjugate(leg.source, leg.conjugator)
            if not maps_equal(expected, leg.target):
                raise CertificateInvalid(f"leg {idx}: conjugation record false")
            if prev_map is not None and not maps_equal(prev_map, leg.source):
                raise CertificateInvalid(f"leg {idx}: hand-off mismatch")
            prev_map = leg.target
        elif isinstance(leg, GapMarker):
            prev_map = None
        else:
            raise CertificateInvalid(f"leg {idx}: unknown leg type")


# ---------------------------------------------------------------------------
# degree-2 multiplier coordinates
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class MilnorPoint:
    """First two elementary symmetric functions of the three fixed-point
    multipliers of a degree-2 map (conjugation invariants)."""
    sigma1: FieldElement
    sigma2: FieldElement
    sigma3: FieldElement


def _mat_mul(A, B, field):
    n = len(A)
    return [[sum((A[i][k] * B[k][j] for k in range(n)), start=field.zero())
             for j in range(n)] for i in range(n)]


def _mat_eye(n, field):
    return [[field.one() if i == j else field.zero() for j in range(n)]
            for i in range(n)]


def _mat_poly(p: Poly, M, field):
    n = len(M)
    acc = [[field.zero()] * n for _ in range(n)]
    for c in reversed(p.coeffs):
        acc = _mat_mul(acc, M, field)
        for i in range(n):
            acc[i][i] = acc[i][i] + c
    return acc


def _mat_inv(A, field):
    n = len(A)
    aug = [list(A[i]) + list(_mat_eye(n, field)[i]) for i in range(n)]
    for col in range(n):
        piv = None
        for r in range(col, n):
            if not aug[r][col].is_zero():
                piv = r
                break
        if piv is None:
            return None
        aug[col], aug[piv] = aug[piv], aug[col]
        inv = aug[col][col].inv()
        aug[col] = [x * inv for x in aug[col]]
        for r in range(n):
            if r != col and not aug[r][col].is_zero():
                f = aug[r][col]
                aug[r] = [x - f * y for x, y in zip(aug[r], aug[col])]
    return [row[n:] for row in aug]


def _trace(A, field):
    t = field.zero()
    for i in range(len(A)):
        t = t + A[i][i]
    return t


def milnor_coordinates(phi: RationalMap) -> MilnorPoint:
    """Exact multiplier coordinates of a degree-2 map.

    The map is conjugated so that infinity is not fixed (translations can
    never unfix infinity, so the deterministic search applies 1/(z+c) for
    c = 0, 1, 2, ... until -c is not a fixed point; at most two finite fixed
    points exist, so this terminates by c = 2).  Then F(z) = z*Q(z) - P(z)
    is a genuine cubic whose roots are the fixed points; the multipliers are
    the derivative evaluated on the companion matrix of F, and the symmetric
    functions are traces and determinants -- no root extraction needed.
    """
    if phi.degree != 2:
        raise NotDegreeTwo(f"degree {phi.degree}")
    field = phi.field
    inf = ProjPoint.infinity(field)
    if eval_proj(phi, inf).is_infinity():
        for c in range(0, 8):
            pt = ProjPoint.finite(field(-c))
            if eval_proj(phi, pt) != pt:
                W = MobiusMap(field, 0, 1, 1, field(c))   # z -> 1/(z+c)
                phi = conjugate(phi, W)
                break
        else:
            raise NormalizationFailed("no admissible conjugator 1/(z+c) found")
    P, Q = phi.num, phi.den
    F = Poly.x(field) * Q - P
    if F.degree != 3:
        raise NormalizationFailed("fixed-point polynomial is not cubic")
    F = F.monic()
    # companion matrix of F = x^3 + f2 x^2 + f1 x + f0
    f0, f1, f2 = F[0], F[1], F[2]
    zero, one = field.zero(), field.one()
    M = [[zero, zero, -f0],
         [one, zero, -f1],
         [zero, one, -f2]]
    dphi = derivative(phi)
    VM = _mat_poly(dphi.den, M, field)
    VMi = _mat_inv(VM, field)
    if VMi is None:
        raise NormalizationFailed("derivative denominator singular on fixed points")
    UM = _mat_poly(dphi.num, M, field)
    L = _mat_mul(UM, VMi, field)
    s1 = _trace(L, field)
    t2 = _trace(_mat_mul(L, L, field), field)
    s2 = (s1 * s1 - t2) / field(2)
    s3 = det(L, field)
    return MilnorPoint(sigma1=s1, sigma2=s2, sigma3=s3)


def fujimura_cubic(pt: Union[MilnorPoint, tuple]) -> FieldElement:
    """Value of 2x^3 + x^2 y - x^2 - 4y^2 - 8xy + 12x + 12y - 36 at the
    multiplier coordinates (x, y) = (sigma1, sigma2); zero exactly on the
    degree-2 classes with a nontrivial symmetry."""
    if isinstance(pt, MilnorPoint):
        x, y = pt.sigma1, pt.sigma2
    else:
        x, y = pt
        if not isinstance(x, FieldElement):
            x = QQ(x)
        if not isinstance(y, FieldElement):
            y = QQ(y)
    if x.field != y.field:
        K = common_field(x.field, y.field)
        x, y = lift(x, K), lift(y, K)
    two, four, eight, twelve, thirty_six = (x.field(v) for v in (2, 4, 8, 12, 36))
    return (two * x ** 3 + x * x * y - x * x - four * y * y
            - eight * x * y + twelve * x + twelve * y - thirty_six)
