from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from helpers import blades, e, multivectors
from qca.exterior import (
    DimensionError,
    Multivector,
    TensorPoly,
    basis,
    blade_name,
    blade_order,
    blade_sign,
    contract_legs,
    counit,
    format_terms,
    gco,
    gco_tensor,
    grade_involution,
    grade_project,
    graded_switch,
    graded_tensor_mul,
    parse_blade,
    popcount,
    reversion_wedge,
    splits,
    tensor,
    wedge,
    wedge_blades,
)


def test_wedge_examples():
    assert wedge(e(2, "e1"), e(2, "e2")) == e(2, "e1we2")
    assert wedge(e(2, "e1"), e(2, "e1")) == 0
    a, b = Fraction(3, 7), Fraction(-5, 2)
    p2 = e(2, "e1", a) + e(2, "e1we2", b) - Multivector.scalar(2, 4)
    assert wedge(e(2, "e1we2"), p2) == e(2, "e1we2", -4)


def test_blade_sign_is_merge_parity():
    # e2 ∧ e1 = −e1we2, e3 ∧ e1we2 = +e1we2we3
    assert wedge_blades(0b10, 0b01) == (-1, 0b11)
    assert wedge_blades(0b100, 0b011) == (1, 0b111)
    assert wedge_blades(0b011, 0b010) == (0, 0)
    assert blade_sign(0b110, 0b001) == 1


def test_blade_order_is_graded_lex():
    assert [blade_name(m) for m in blade_order(3)] == [
        "Id", "e1", "e2", "e3", "e1we2", "e1we3", "e2we3", "e1we2we3"]


@pytest.mark.parametrize("name, sign, mask", [("Id", 1, 0), ("e3", 1, 4), ("e2we1", -1, 3), ("e1we1", 0, 0)])
def test_parse_blade(name, sign, mask):
    assert parse_blade(name) == (sign, mask)


def test_multivector_rejects_out_of_range_blades():
    with pytest.raises(DimensionError):
        Multivector(2, {0b100: 1})
    with pytest.raises(DimensionError):
        Multivector.gen(2, 3)
    with pytest.raises(DimensionError):
        wedge(e(2, "e1"), e(3, "e1"))


def test_no_stored_zeros():
    u = e(2, "e1") - e(2, "e1")
    assert u.terms == {}
    assert not u


def test_grade_project():
    u = Multivector.scalar(2) + e(2, "e1") + e(2, "e1we2")
    assert grade_project(u, 1) == e(2, "e1")
    assert grade_project(e(2, "e1we2"), 2) == e(2, "e1we2")
    assert grade_project(e(2, "e1we2"), 0) == 0


@given(multivectors(4))
def test_grade_projections_sum_to_u(u):
    total = Multivector(4)
    for r in range(5):
        total = total + grade_project(u, r)
    assert total == u


def test_grade_involution_on_basis():
    assert [grade_involution(x) for x in basis(2)] == [
        Multivector.scalar(2), -e(2, "e1"), -e(2, "e2"), e(2, "e1we2")]


@given(multivectors(3), multivectors(3))
def test_grade_involution_is_an_involutive_automorphism(u, v):
    assert grade_involution(grade_involution(u)) == u
    assert grade_involution(wedge(u, v)) == wedge(grade_involution(u), grade_involution(v))


def test_reversion_wedge():
    assert reversion_wedge(e(2, "e1we2")) == -e(2, "e1we2")
    assert reversion_wedge(e(2, "e1")) == e(2, "e1")
    for x in blades(3):
        for y in blades(3):
            assert reversion_wedge(wedge(x, y)) == wedge(reversion_wedge(y), reversion_wedge(x))


def test_wedge_associative_on_dim3_triples():
    bs = blades(3)
    for x in bs:
        for y in bs:
            xy = wedge(x, y)
            for z in bs:
                assert wedge(xy, z) == wedge(x, wedge(y, z))


def test_graded_commutativity():
    for a in blade_order(4):
        for b in blade_order(4):
            x, y = Multivector.blade(4, a), Multivector.blade(4, b)
            s = -1 if popcount(a) * popcount(b) % 2 else 1
            assert wedge(x, y) == wedge(y, x) * s


def test_gco_examples():
    Id = Multivector.scalar(3)
    e1, e2, e12 = e(3, "e1"), e(3, "e2"), e(3, "e1we2")
    assert gco(Id) == tensor(Id, Id)
    assert gco(e1) == tensor(Id, e1) + tensor(e1, Id)
    assert gco(e12) == tensor(Id, e12) + tensor(e1, e2) - tensor(e2, e1) + tensor(e12, Id)


def test_split_sum_identity():
    def wedge_back(x, y):
        s, m = wedge_blades(x, y)
        return {m: s}

    assert contract_legs(gco(e(3, "e1we2")), wedge_back) == e(3, "e1we2", 4)
    for m in blade_order(4):
        assert contract_legs(gco(Multivector.blade(4, m)), wedge_back) == Multivector.blade(4, m, 2 ** popcount(m))


def test_splits_cover_all_subsets():
    assert len(splits(0b1011)) == 8
    assert {(m1 | m2) for m1, m2, _ in splits(0b1011)} == {0b1011}


def test_gco_coassociative_on_dim4_blades():
    for x in blades(4):
        t = gco(x)
        assert gco_tensor(t, 0) == gco_tensor(t, 1)


@given(multivectors(3))
def test_counit_laws(u):
    left = Multivector(3)
    right = Multivector(3)
    for (a, b), c in gco(u):
        left = left + Multivector.blade(3, b, c * counit(Multivector.blade(3, a)))
        right = right + Multivector.blade(3, a, c * counit(Multivector.blade(3, b)))
    assert left == u == right


def test_counit_examples():
    assert counit(Multivector.scalar(2, 4) + e(2, "e1", Fraction(2, 3))) == 4
    assert counit(e(2, "e1we2")) == 0


def test_gco_is_an_algebra_map_on_dim3_pairs():
    for x in blades(3):
        for y in blades(3):
            assert gco(wedge(x, y)) == graded_tensor_mul(gco(x), gco(y))


def test_graded_switch():
    t = TensorPoly(2, 2, {(1, 2): 1, (3, 1): 1})
    assert graded_switch(t) == TensorPoly(2, 2, {(2, 1): -1, (1, 3): 1})


@given(st.sampled_from(range(1, 5)).flatmap(multivectors))
def test_format_terms_is_parser_readable(u):
    from qca.evaluate import evaluate
    from qca.serial import AlgebraConfig

    assert evaluate(format_terms(u), AlgebraConfig(dim=u.dim)) == u
