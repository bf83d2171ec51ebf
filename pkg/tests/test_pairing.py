from fractions import Fraction

import pytest
from hypothesis import given, settings

from helpers import antisymmetric_forms, blades, e, forms, multivectors
from qca.exterior import Multivector, blade_order, counit, gco, grade_project, popcount, tensor, wedge
from qca.pairing import (
    VectorForm,
    cco,
    clifford_coproduct,
    clifford_map,
    cmul,
    dotted_wedge,
    extend_pairing,
    inversion_wedge_from_clifford,
    left_contract,
    pairing_det,
    reversion_clifford,
    right_contract,
    wick_expansion,
    wick_transform,
)

F = Fraction
K = VectorForm.of([[F(2, 3), F(-1, 5)], [F(7, 2), 3]])
I2 = VectorForm.identity(2)


def rand_form(rng, dim):
    return VectorForm.of([[F(rng.randint(-5, 5), rng.randint(1, 4)) for _ in range(dim)] for _ in range(dim)])


def test_extend_pairing_examples():
    a, b, c, d = 2, F(1, 3), -5, F(7, 4)
    B = VectorForm.of([[a, b], [c, d]])
    P = extend_pairing(B)
    assert P(Multivector.scalar(2), Multivector.scalar(2)) == 1
    assert P(e(2, "e1"), e(2, "e2")) == b
    assert P(e(2, "e1we2"), e(2, "e1we2")) == b * c - a * d
    assert P(e(2, "e1"), e(2, "e1we2")) == 0


def test_extend_pairing_matches_determinant_closed_form(rng):
    B = rand_form(rng, 4)
    P = extend_pairing(B)
    for a in blade_order(4):
        for b in blade_order(4):
            if popcount(a) == popcount(b):
                assert P.value(a, b) == pairing_det(B, a, b)


def test_contraction_examples():
    assert left_contract(e(2, "e1"), e(2, "e2"), K) == Multivector.scalar(2, K(1, 2))
    assert left_contract(e(2, "e1"), e(2, "e1we2"), K) == K(1, 1) * e(2, "e2") - K(1, 2) * e(2, "e1")
    assert left_contract(e(2, "e1we2"), e(2, "e1we2"), I2) == Multivector.scalar(2, -1)
    assert right_contract(e(2, "e2"), e(2, "e1"), K) == Multivector.scalar(2, K(2, 1))
    assert right_contract(e(2, "e1we2"), e(2, "e2"), I2) == e(2, "e1")
    u = e(2, "e1we2", 3) + e(2, "e1")
    assert right_contract(u, Multivector.scalar(2), K) == u


def test_left_contract_is_a_graded_derivation(rng):
    B = rand_form(rng, 3)
    for x in blades(3)[1:4]:
        for m in blade_order(3):
            u = Multivector.blade(3, m)
            for v in blades(3):
                sign = -1 if popcount(m) % 2 else 1
                expect = wedge(left_contract(x, u, B), v) + sign * wedge(u, left_contract(x, v, B))
                assert left_contract(x, wedge(u, v), B) == expect


def test_left_contract_composes(rng):
    B = rand_form(rng, 3)
    for u in blades(3):
        for v in blades(3):
            for w in blades(3):
                assert left_contract(wedge(u, v), w, B) == left_contract(u, left_contract(v, w, B), B)


def test_cmul_examples():
    assert cmul(e(2, "e1"), e(2, "e2"), K) == Multivector.scalar(2, K(1, 2)) + e(2, "e1we2")
    assert cmul(e(2, "e2"), e(2, "e1we2"), I2) == -e(2, "e1")
    g = VectorForm.of([[1, F(1, 2), F(-3, 4)], [F(1, 2), 2, 5], [F(-3, 4), 5, 0]])
    assert cmul(e(3, "e1"), e(3, "e2we3"), g) == e(3, "e1we2we3") + g(1, 2) * e(3, "e3") - g(1, 3) * e(3, "e2")


def test_clifford_map(rng):
    B = rand_form(rng, 3)
    assert clifford_map(e(2, "e1"), Multivector.scalar(2), K) == e(2, "e1")
    assert clifford_map(e(2, "e1"), e(2, "e1"), K) == Multivector.scalar(2, K(1, 1))
    for x in blades(3)[1:4]:
        for u in blades(3):
            assert clifford_map(x, u, B) == cmul(x, u, B)
    with pytest.raises(ValueError):
        clifford_map(e(3, "e1we2"), e(3, "e1"), B)


def test_cmul_associative_on_dim3_triples(rng):
    bs = blades(3)
    for _ in range(5):
        B = rand_form(rng, 3)
        for x in bs:
            for y in bs:
                xy = cmul(x, y, B)
                for z in bs:
                    assert cmul(xy, z, B) == cmul(x, cmul(y, z, B), B)


@settings(max_examples=30, deadline=None)
@given(forms(3), multivectors(3))
def test_cmul_unit(B, u):
    Id = Multivector.scalar(3)
    assert cmul(Id, u, B) == u == cmul(u, Id, B)


@settings(max_examples=30, deadline=None)
@given(forms(3))
def test_quantization_sees_only_the_symmetric_part(B):
    for i in range(1, 4):
        for j in range(1, 4):
            x, y = Multivector.gen(3, i), Multivector.gen(3, j)
            assert cmul(x, y, B) + cmul(y, x, B) == Multivector.scalar(3, B(i, j) + B(j, i))


def test_counit_of_product_is_the_graded_pairing(rng):
    B = rand_form(rng, 3)
    P = extend_pairing(B)
    for x in blades(3):
        for y in blades(3):
            assert counit(cmul(x, y, B)) == P(x, y)
    e1 = e(3, "e1")
    assert counit(cmul(e1, e1, VectorForm.identity(3))) != counit(e1) * counit(e1)


def test_parity_is_preserved(rng):
    B = rand_form(rng, 3)
    for a in blade_order(3):
        for b in blade_order(3):
            p = (popcount(a) + popcount(b)) % 2
            out = cmul(Multivector.blade(3, a), Multivector.blade(3, b), B)
            assert all(popcount(m) % 2 == p for m, _ in out)


def test_z_grading_is_broken_only_by_contractions():
    # nearest-neighbour B couples e2–e3, e4–e5 and e5–e6 across the factors
    B = VectorForm.of([[int(abs(i - j) <= 1) for j in range(6)] for i in range(6)])
    u, v = e(6, "e1we2we5"), e(6, "e3we4we6")
    out = cmul(u, v, B)
    assert out.grades() == {2, 4, 6}
    assert grade_project(out, 6) == wedge(u, v)
    assert cmul(u, v, VectorForm.identity(6)) == wedge(u, v)


def test_cco_examples():
    a, b, c, d = 2, F(1, 3), -5, F(7, 4)
    C = VectorForm.of([[a, b], [c, d]])
    Id, e1, e2, e12 = Multivector.scalar(2), e(2, "e1"), e(2, "e2"), e(2, "e1we2")
    assert cco(Id, C) == (tensor(Id, Id) + a * tensor(e1, e1) + c * tensor(e2, e1) + b * tensor(e1, e2)
                          + d * tensor(e2, e2) + (c * b - d * a) * tensor(e12, e12))
    assert cco(e1, C) == (tensor(Id, e1) - b * tensor(e1, e12) - d * tensor(e2, e12) + tensor(e1, Id)
                          + c * tensor(e12, e1) + d * tensor(e12, e2))
    for x in blades(3):
        assert cco(x, VectorForm.zero(3)) == gco(x)


def test_cco_coassociative(rng):
    C = rand_form(rng, 3)
    cop = clifford_coproduct(C)
    for a in blade_order(3):
        first = {}
        second = {}
        for (x, y), c in cop(a).items():
            for (x1, x2), d in cop(x).items():
                key = (x1, x2, y)
                first[key] = first.get(key, 0) + c * d
            for (y1, y2), d in cop(y).items():
                key = (x, y1, y2)
                second[key] = second.get(key, 0) + c * d
        assert {k: v for k, v in first.items() if v} == {k: v for k, v in second.items() if v}


def test_dotted_wedge():
    Fm = VectorForm.of([[0, F(3, 2), -2], [F(-3, 2), 0, 5], [2, -5, 0]])
    e1, e2, e3 = (Multivector.gen(3, i) for i in (1, 2, 3))
    assert dotted_wedge(e1, e2, Fm) == wedge(e1, e2) + Multivector.scalar(3, Fm(1, 2))
    assert dotted_wedge(e1, e1, Fm) == 0
    triple = dotted_wedge(dotted_wedge(e1, e2, Fm), e3, Fm)
    assert triple == wedge(wedge(e1, e2), e3) + Fm(1, 2) * e3 + Fm(2, 3) * e1 + Fm(3, 1) * e2
    with pytest.raises(ValueError):
        dotted_wedge(e1, e2, VectorForm.identity(3))


@settings(max_examples=25, deadline=None)
@given(antisymmetric_forms(3), multivectors(3))
def test_wick_round_trip(Fm, u):
    assert wick_transform(wick_transform(u, Fm, "to_dotted"), Fm, "from_dotted") == u
    assert wick_transform(wick_transform(u, Fm, "from_dotted"), Fm, "to_dotted") == u


def test_wick_examples():
    Fm = VectorForm.of([[0, F(2, 7)], [F(-2, 7), 0]])
    assert wick_transform(e(2, "e1we2"), Fm, "to_dotted") == e(2, "e1we2") - Multivector.scalar(2, F(2, 7))
    for d in ("to_dotted", "from_dotted"):
        assert wick_transform(e(2, "e1"), Fm, d) == e(2, "e1")
    with pytest.raises(ValueError):
        wick_transform(e(2, "e1"), Fm, "sideways")


def test_reversion_clifford_is_an_anti_automorphism(rng):
    for _ in range(3):
        B = rand_form(rng, 2)
        for x in blades(2)[:3]:
            assert reversion_clifford(x, B) == x
        for x in blades(2):
            for y in blades(2):
                lhs = reversion_clifford(cmul(x, y, B), B)
                assert lhs == cmul(reversion_clifford(y, B), reversion_clifford(x, B), B)


def test_reversion_clifford_grade2_sign():
    # reversing e1∘e2 = B12 + e12 into e2∘e1 = B21 − e12 forces −2F12
    B = VectorForm.of([[1, F(5, 3)], [F(-1, 3), 2]])
    F12 = B.antisymmetric_part()(1, 2)
    assert reversion_clifford(e(2, "e1we2"), B) == -e(2, "e1we2") - Multivector.scalar(2, 2 * F12)


@pytest.mark.xfail(strict=True, reason="the +2F12 display is not an anti-automorphism of cmul")
def test_reversion_clifford_plus_sign_display():
    B = VectorForm.of([[1, F(5, 3)], [F(-1, 3), 2]])
    F12 = B.antisymmetric_part()(1, 2)
    assert reversion_clifford(e(2, "e1we2"), B) == -e(2, "e1we2") + Multivector.scalar(2, 2 * F12)


def test_inversion_formulas(rng):
    B = rand_form(rng, 3)
    gens = [Multivector.gen(3, i) for i in (1, 2, 3)]
    for x in gens:
        assert inversion_wedge_from_clifford([x], B) == x
        for y in gens:
            assert cmul(x, y, B) - wedge(x, y) == Multivector.scalar(3, B.on_vectors(x, y))
            for z in gens:
                xyz = cmul(cmul(x, y, B), z, B)
                expect = (xyz - B.on_vectors(x, y) * z + B.on_vectors(x, z) * y - B.on_vectors(y, z) * x)
                assert inversion_wedge_from_clifford([x, y, z], B) == expect == wedge(wedge(x, y), z)


def test_wick_expansion_matches_cmul(rng):
    B = rand_form(rng, 4)
    vs = [Multivector.gen(4, i) + Multivector.gen(4, 1 + i % 4, F(1, i + 1)) for i in range(1, 5)]
    assert wick_expansion(vs, B) == cmul(cmul(cmul(vs[0], vs[1], B), vs[2], B), vs[3], B)
    with pytest.raises(ValueError):
        wick_expansion([e(4, "e1we2")], B)
