import random
from fractions import Fraction

import pytest

from ratsym.fields import QQ, CyclotomicField
from ratsym.mobius import MobiusMap, inversion, rotation, scaling
from ratsym.poly import Poly, poly_eval
from ratsym.ratmap import conjugate, is_automorphism, make_map, maps_equal
from ratsym.symmetry import (CyclicFamily, build_cyclic, cyclic_admissible,
                             dihedral_admissible, random_cyclic_family)
from ratsym.moduli import (CertificateInvalid, FamilyMismatch,
                           GapMarker, NotDegreeTwo, act_invert, act_scale,
                           build_path, connectivity_certificate, dim_cyclic,
                           dim_dihedral, fujimura_cubic, involution_to_standard,
                           milnor_coordinates, validate_connectivity_certificate,
                           validate_path_certificate, _certify_segment,
                           _segment_obstruction)
from ratsym.symmetry import NotAdmissible


def test_dimension_examples():
    assert dim_cyclic(3, 2, "A").dimension == 2
    assert dim_cyclic(6, 3).dimension == 3
    assert dim_cyclic(5, 3).dimension == 2
    assert dim_dihedral(7, 3).dimension == 2
    assert dim_dihedral(5, 3).dimension == 1
    assert dim_dihedral(2, 3).dimension == 0
    with pytest.raises(NotAdmissible):
        dim_cyclic(7, 5)
    with pytest.raises(ValueError):
        dim_cyclic(5, 2)        # ambiguous without a case


def test_dimension_identity_freeparams():
    # free parameters of the family minus projective scale and the
    # one-parameter scaling orbit
    for d in range(2, 31):
        for n in range(2, d + 2):
            for case, r in cyclic_admissible(d, n):
                dim = dim_cyclic(d, n, case).dimension
                params = {"A": 2 * (r + 1), "B": 2 * r + 1, "C": 2 * r}[case]
                assert dim == params - 2, (d, n, case)
            for case, r in dihedral_admissible(d, n):
                dim = dim_dihedral(d, n, case).dimension
                params = {"I": r + 1, "II": r}[case]
                assert dim == params - 1, (d, n, case)


def test_act_scale():
    fam_z3 = CyclicFamily(2, 1, "A", (QQ(0), QQ(1)), (QQ(1), QQ(0)))
    f2 = act_scale(fam_z3, QQ(2))
    assert f2.a == (QQ(0), QQ(Fraction(1, 4))) and f2.b == (QQ(1), QQ(0))
    assert maps_equal(build_cyclic(f2),
                      conjugate(build_cyclic(fam_z3), scaling(QQ(2))))
    rng = random.Random(2)
    fam = random_cyclic_family(rng, 3, 2, "A")
    lam, mu = QQ(Fraction(2, 3)), QQ(Fraction(-5, 7))
    once = act_scale(act_scale(fam, lam), mu)
    both = act_scale(fam, lam * mu)
    assert once.a == both.a and once.b == both.b
    assert act_scale(fam, QQ(1)).a == fam.a
    for case in ("A", "B", "C"):
        f = random_cyclic_family(rng, 3, 2, case)
        g = act_scale(f, QQ(Fraction(3, 2)))
        assert maps_equal(build_cyclic(g),
                          conjugate(build_cyclic(f), scaling(QQ(Fraction(3, 2)))))


def test_act_invert():
    inv2 = CyclicFamily(3, 1, "C", (QQ(1), QQ(0)), (QQ(0), QQ(1)))
    out = act_invert(inv2)
    assert out.a == inv2.a and out.b == inv2.b
    fam_z3 = CyclicFamily(2, 1, "A", (QQ(0), QQ(1)), (QQ(1), QQ(0)))
    out = act_invert(fam_z3)
    assert out.a == fam_z3.a and out.b == fam_z3.b
    rng = random.Random(3)
    for case in ("A", "C"):
        fam = random_cyclic_family(rng, 3, 2, case)
        other = act_invert(fam)
        assert other.case == case
        back = act_invert(other)
        assert back.a == fam.a and back.b == fam.b
        assert maps_equal(build_cyclic(other),
                          conjugate(build_cyclic(fam), inversion(QQ)))
    # case B: inversion leads to the transitional shape whose standard
    # renormalisation is the original family
    famB = random_cyclic_family(rng, 3, 2, "B")
    assert act_invert(famB).a == famB.a


def test_build_path_simple_and_strategies_agree():
    fam_a = CyclicFamily(2, 1, "A", (QQ(2), QQ(1)), (QQ(1), QQ(0)))
    fam_b = CyclicFamily(2, 1, "A", (QQ(3), QQ(1)), (QQ(1), QQ(0)))
    cert_s = build_path(fam_a, fam_b, "sturm")
    assert len(cert_s.segments) == 1
    assert cert_s.segments[0].proof.kind == "sturm"
    validate_path_certificate(cert_s)
    cert_i = build_path(fam_a, fam_b, "interval")
    assert cert_i.segments[0].proof.kind == "interval"
    validate_path_certificate(cert_i)


def test_build_path_empty():
    fam = CyclicFamily(2, 1, "A", (QQ(2), QQ(1)), (QQ(1), QQ(0)))
    cert = build_path(fam, fam)
    assert cert.segments == ()
    validate_path_certificate(cert)


def test_build_path_family_mismatch():
    fam_a = CyclicFamily(2, 1, "A", (QQ(2), QQ(1)), (QQ(1), QQ(0)))
    fam_c = CyclicFamily(2, 2, "C", (QQ(1), QQ(0), QQ(0)), (QQ(0), QQ(1), QQ(1)))
    with pytest.raises(FamilyMismatch):
        build_path(fam_a, fam_c)


def test_engineered_degenerate_segment_rerouted():
    # the straight pencil hits a common root at t = 1/2, and the real case
    # condition b_0 changes sign, so every real segment fails; the detour
    # through Gaussian-integer coefficients succeeds
    f0 = CyclicFamily(2, 1, "A", (QQ(1), QQ(1)), (QQ(1), QQ(2)))
    f1 = CyclicFamily(2, 1, "A", (QQ(-3), QQ(1)), (QQ(-4), QQ(1)))
    G = _segment_obstruction(f0, f1)
    assert poly_eval(G, QQ(Fraction(1, 2))).is_zero()
    assert _certify_segment(f0, f1, "sturm", 128) is None
    assert _certify_segment(f0, f1, "interval", 128) is None
    for strategy in ("sturm", "interval"):
        cert = build_path(f0, f1, strategy, rng=random.Random(1))
        assert len(cert.segments) == 2
        assert cert.field == CyclotomicField(4)
        validate_path_certificate(cert)


def test_path_certificate_samples_stay_valid():
    rng = random.Random(12)
    fam0 = random_cyclic_family(rng, 3, 2, "A")
    fam1 = random_cyclic_family(rng, 3, 2, "A")
    cert = build_path(fam0, fam1, "sturm", rng=rng)
    validate_path_certificate(cert)
    for seg in cert.segments:
        sa, sb = seg.start_a, seg.start_b
        ea, eb = seg.end_a, seg.end_b
        for k in range(21):
            t = Fraction(k, 20)
            field = cert.field
            tt = field(t)
            a = tuple(sa[i] + (ea[i] - sa[i]) * tt for i in range(len(sa)))
            b = tuple(sb[i] + (eb[i] - sb[i]) * tt for i in range(len(sb)))
            fam_t = CyclicFamily(cert.n, cert.r, cert.case, a, b)
            phi_t = build_cyclic(fam_t)
            assert phi_t.degree == fam_t.degree
            assert is_automorphism(phi_t, rotation(cert.n))


def test_path_certificate_tamper_detected():
    from ratsym.moduli import PathCertificate, PathSegment, SturmProof
    # denominators chosen so the pencil resultant genuinely depends on the
    # endpoint coefficients: the stored proof polynomial then acts as a
    # checksum under recomputation
    fam_a = CyclicFamily(2, 1, "A", (QQ(2), QQ(1)), (QQ(1), QQ(3)))
    fam_b = CyclicFamily(2, 1, "A", (QQ(3), QQ(1)), (QQ(1), QQ(5)))
    cert = build_path(fam_a, fam_b, "sturm")
    seg = cert.segments[0]
    assert seg.proof.norm_poly.degree >= 1

    bad_seg = PathSegment(start_a=(QQ(7), QQ(1)), start_b=seg.start_b,
                          end_a=seg.end_a, end_b=seg.end_b, proof=seg.proof)
    bad = PathCertificate(cert.n, cert.r, cert.case, cert.field, cert.strategy,
                          (bad_seg,))
    with pytest.raises(CertificateInvalid):
        validate_path_certificate(bad)

    # tampering with the stored proof artifact is caught as well
    forged_proof = SturmProof(norm_poly=seg.proof.norm_poly + Poly(QQ, [1]),
                              roots_in_01=0,
                              value_at_0=seg.proof.value_at_0,
                              value_at_1=seg.proof.value_at_1)
    bad2 = PathCertificate(cert.n, cert.r, cert.case, cert.field, cert.strategy,
                           (PathSegment(seg.start_a, seg.start_b, seg.end_a,
                                        seg.end_b, forged_proof),))
    with pytest.raises(CertificateInvalid):
        validate_path_certificate(bad2)

    # breaking the chain between consecutive segments is caught
    two = build_path(CyclicFamily(2, 1, "A", (QQ(1), QQ(1)), (QQ(1), QQ(2))),
                     CyclicFamily(2, 1, "A", (QQ(-3), QQ(1)), (QQ(-4), QQ(1))),
                     "sturm", rng=random.Random(1))
    assert len(two.segments) == 2
    s0, s1 = two.segments
    K = two.field
    broken = PathCertificate(two.n, two.r, two.case, K, two.strategy,
                             (s0, PathSegment((K(9), K(1)), s1.start_b,
                                              s1.end_a, s1.end_b, s1.proof)))
    with pytest.raises(CertificateInvalid):
        validate_path_certificate(broken)


def test_involution_to_standard():
    for S in (inversion(QQ), scaling(QQ(-1)),
              MobiusMap(QQ, 1, 1, 0, -1),          # z + 1 reflected: order 2
              MobiusMap(QQ, 3, 4, 2, -3)):
        assert _order2(S)
        U = involution_to_standard(S)
        K = U.field
        assert U.compose(S.lift(K)).compose(U.inverse()) == scaling(K(-1))


def _order2(S):
    from ratsym.mobius import mobius_order
    return mobius_order(S) == 2


def test_connectivity_chain_d4():
    w0 = random_cyclic_family(random.Random(10), 3, 1, "A")
    w1 = random_cyclic_family(random.Random(11), 2, 2, "B")
    cert = connectivity_certificate(w0, w1, "sturm", random.Random(0))
    names = [type(leg).__name__ for leg in cert.legs]
    assert names == ["PathLeg", "ConjugationLeg", "PathLeg"]
    assert cert.is_gap_free()
    validate_connectivity_certificate(cert)


def test_connectivity_same_family_and_gap():
    fam = random_cyclic_family(random.Random(13), 2, 3, "B")
    cert = connectivity_certificate(fam, fam)
    assert cert.is_gap_free() and len(cert.legs) == 1
    validate_connectivity_certificate(cert)
    g0 = random_cyclic_family(random.Random(16), 2, 1, "A")
    g1 = random_cyclic_family(random.Random(17), 2, 2, "C")
    gap = connectivity_certificate(g0, g1)
    assert not gap.is_gap_free()
    assert any(isinstance(leg, GapMarker) for leg in gap.legs)
    validate_connectivity_certificate(gap)


def test_milnor_cusp_and_square():
    inv2 = make_map(Poly(QQ, [1]), Poly(QQ, [0, 0, 1]))
    pt = milnor_coordinates(inv2)
    assert pt.sigma1 == -6 and pt.sigma2 == 12
    assert fujimura_cubic(pt).is_zero()
    z2 = make_map(Poly(QQ, [0, 0, 1]), Poly(QQ, [1]))
    pt2 = milnor_coordinates(z2)
    assert pt2.sigma1 == 2 and pt2.sigma2 == 0
    assert fujimura_cubic(pt2).is_zero()
    assert fujimura_cubic((QQ(0), QQ(0))) == -36
    with pytest.raises(NotDegreeTwo):
        milnor_coordinates(make_map(Poly(QQ, [0, 0, 0, 1]), Poly(QQ, [1])))


def test_milnor_fixed_point_relation():
    # sigma3 = sigma1 - 2 for every degree-2 map (rational fixed point
    # theorem used as an internal oracle)
    rng = random.Random(19)
    done = 0
    while done < 25:
        try:
            phi = make_map(Poly(QQ, [Fraction(rng.randint(-6, 6)) for _ in range(3)]),
                           Poly(QQ, [Fraction(rng.randint(-6, 6)) for _ in range(3)]))
        except Exception:
            continue
        if phi.degree != 2:
            continue
        pt = milnor_coordinates(phi)
        assert pt.sigma3 == pt.sigma1 - 2
        done += 1


def test_milnor_conjugation_invariance():
    rng = random.Random(4)
    done = 0
    while done < 20:
        try:
            phi = make_map(Poly(QQ, [Fraction(rng.randint(-5, 5)) for _ in range(3)]),
                           Poly(QQ, [Fraction(rng.randint(-5, 5)) for _ in range(3)]))
            T = MobiusMap(QQ, *[rng.randint(-3, 3) for _ in range(4)])
        except Exception:
            continue
        if phi.degree != 2:
            continue
        p0 = milnor_coordinates(phi)
        p1 = milnor_coordinates(conjugate(phi, T))
        assert (p0.sigma1, p0.sigma2) == (p1.sigma1, p1.sigma2)
        done += 1


def test_symmetric_quadratics_lie_on_cubic():
    rng = random.Random(21)
    for _ in range(25):
        fam = random_cyclic_family(rng, 2, 1, "B")
        pt = milnor_coordinates(build_cyclic(fam))
        assert fujimura_cubic(pt).is_zero()
    for _ in range(25):
        fam = random_cyclic_family(rng, 3, 1, "C")
        pt = milnor_coordinates(build_cyclic(fam))
        assert fujimura_cubic(pt).is_zero()


def test_certificate_serialization_roundtrip():
    from ratsym.jsonio import (canon_dumps, connectivity_from_json,
                               connectivity_to_json, path_cert_from_json,
                               path_cert_to_json)
    fam_a = CyclicFamily(2, 1, "A", (QQ(2), QQ(1)), (QQ(1), QQ(0)))
    fam_b = CyclicFamily(2, 1, "A", (QQ(3), QQ(1)), (QQ(1), QQ(0)))
    for strategy in ("sturm", "interval"):
        cert = build_path(fam_a, fam_b, strategy)
        blob = path_cert_to_json(cert)
        back = path_cert_from_json(blob)
        assert path_cert_to_json(back) == blob
        validate_path_certificate(back)
        assert canon_dumps(blob) == canon_dumps(path_cert_to_json(back))
    w0 = random_cyclic_family(random.Random(10), 3, 1, "A")
    w1 = random_cyclic_family(random.Random(11), 2, 2, "B")
    cert = connectivity_certificate(w0, w1, "sturm", random.Random(0))
    blob = connectivity_to_json(cert)
    back = connectivity_from_json(blob)
    assert connectivity_to_json(back) == blob
    validate_connectivity_certificate(back)
