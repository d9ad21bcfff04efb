import pytest

from ratsym.fields import QQ, CyclotomicField
from ratsym.mobius import (CapExceeded, GroupSpec, MobiusMap, group_closure,
                           identity, inversion, mobius_order, normalizer_elements,
                           rotation, scaling, standard_generators)


def test_orders():
    assert mobius_order(inversion(QQ)) == 2
    assert mobius_order(rotation(5)) == 5
    assert mobius_order(MobiusMap(QQ, 1, 1, 0, 1)) is None        # parabolic
    assert mobius_order(scaling(QQ(2)).compose(inversion(QQ))) == 2  # z -> 2/z
    assert mobius_order(identity(QQ)) == 1


def test_projective_equality_and_keys():
    T1 = MobiusMap(QQ, 2, 0, 0, 2)
    assert T1.is_identity()
    T2 = MobiusMap(QQ, 0, 3, 3, 0)
    assert T2 == inversion(QQ)
    assert hash(T2) == hash(inversion(QQ))


def test_cyclic_and_dihedral_generators():
    (g,) = standard_generators(GroupSpec("cyclic", 2))
    assert g == scaling(QQ(-1))
    gens = standard_generators(GroupSpec("dihedral", 3))
    assert mobius_order(gens[0]) == 3 and mobius_order(gens[1]) == 2


def test_exceptional_relations():
    T3, B = standard_generators(GroupSpec("A4"))
    assert mobius_order(T3) == 3
    assert mobius_order(B) == 2
    assert mobius_order(T3.compose(B)) == 3
    # the plain inversion pairs with the rotation to order two (a dihedral
    # pairing); only the displayed involution closes the tetrahedral triangle
    A = inversion(CyclotomicField(12))
    assert mobius_order(T3.compose(A)) == 2

    T4, C = standard_generators(GroupSpec("S4"))
    assert mobius_order(T4) == 4
    assert mobius_order(C) == 2
    assert mobius_order(T4.compose(C)) == 3

    T5, D = standard_generators(GroupSpec("A5"))
    assert mobius_order(T5) == 5
    assert mobius_order(D) == 2
    assert mobius_order(T5.compose(D)) == 3


def test_closures():
    assert len(group_closure([scaling(QQ(-1)), inversion(QQ)])) == 4
    sizes = {}
    for kind in ("A4", "S4", "A5"):
        closure = group_closure(standard_generators(GroupSpec(kind)))
        sizes[kind] = len(closure)
        order = GroupSpec(kind).order()
        for g in closure:
            assert order % mobius_order(g) == 0
    assert sizes == {"A4": 12, "S4": 24, "A5": 60}


def test_dihedral_closures():
    for n in range(2, 13):
        closure = group_closure(standard_generators(GroupSpec("dihedral", n)))
        assert len(closure) == 2 * n


def test_cap_exceeded():
    with pytest.raises(CapExceeded):
        group_closure([MobiusMap(QQ, 1, 1, 0, 1)], cap=50)


def test_normalizer():
    gens = normalizer_elements(5)
    F4 = CyclotomicField(4)
    A_i = gens.scaling(F4.zeta())
    assert A_i == scaling(F4.zeta())
    # scalings commute with scalings, so they normalise every rotation group
    two = gens.scaling(QQ(2))
    r2 = rotation(2)
    assert two.compose(r2).compose(two.inverse()) == r2
    # the involution inverts rotations
    F7 = CyclotomicField(7)
    B = gens.involution(F7)
    T = rotation(7).lift(F7)
    assert B.compose(T).compose(B.inverse()) == scaling(F7.zeta(6))
    # A(2) o B has order 2
    assert mobius_order(gens.scaling(QQ(2)).compose(gens.involution(QQ))) == 2


def test_mobius_serialization_roundtrip():
    from ratsym.jsonio import mobius_to_json, mobius_from_json
    for T in (inversion(QQ), rotation(5), standard_generators(GroupSpec("A5"))[1]):
        assert mobius_from_json(mobius_to_json(T)) == T
