from fractions import Fraction

import pytest

from helpers import blades, e
from qca.cayley import (
    bracket,
    erganzung,
    erganzung_inverse,
    extensor,
    integral,
    lotze_product,
    meet,
    meet_classical,
    meet_coproduct,
    meet_sign_table,
    straightening_holds,
    vee,
)
from qca.exterior import Multivector, blade_order, popcount, wedge


def test_bracket_examples():
    a, b = Fraction(3, 4), Fraction(-2, 5)
    assert bracket(e(3, "e1"), e(3, "e2"), e(3, "e3")) == 1
    assert bracket(e(3, "e2"), e(3, "e1"), e(3, "e3")) == -1
    assert bracket(e(4, "e1we2"), e(4, "e2we3we4")) == 0
    assert bracket(e(4, "e1we2", a), e(4, "e3we4", b)) == a * b
    assert bracket([e(2, "e1"), e(2, "e2")]) == 1
    with pytest.raises(ValueError):
        bracket()


def test_bracket_is_alternating_and_multilinear():
    x, y, z = e(3, "e1") + e(3, "e2", 2), e(3, "e2") - e(3, "e3"), e(3, "e3", 5)
    assert bracket(x, y, z) == -bracket(y, x, z)
    assert bracket(x, x, z) == 0
    assert bracket(x * 3 + y, y, z) == 3 * bracket(x, y, z)


def test_meet_examples():
    assert meet(e(3, "e1we2"), e(3, "e2we3")) == -e(3, "e2")
    top = e(3, "e1we2we3")
    for x in blades(3):
        assert meet(top, x) == x == meet(x, top)
    assert meet(e(3, "e1we2"), e(3, "e1we2")) == 0


def test_vee_examples():
    x = e(3, "e1we2") + e(3, "e2we3")
    y = e(3, "e2we3") + e(3, "e1we3")
    assert vee(x, y) == -e(3, "e1") - e(3, "e2") + e(3, "e3")
    top = e(3, "e1we2we3")
    assert vee(top, top) == top


@pytest.mark.parametrize("dim", [2, 3, 4])
def test_vee_equals_meet(dim):
    for x in blades(dim):
        for y in blades(dim):
            assert vee(x, y) == meet(x, y)


@pytest.mark.parametrize("dim", [3, 4])
def test_meet_associative(dim):
    bs = blades(dim)
    for x in bs:
        for y in bs:
            xy = meet(x, y)
            for z in bs:
                assert meet(xy, z) == meet(x, meet(y, z))


@pytest.mark.parametrize("dim", [3, 4])
def test_meet_support_law(dim):
    top = (1 << dim) - 1
    for a in blade_order(dim):
        for b in blade_order(dim):
            m = meet(Multivector.blade(dim, a), Multivector.blade(dim, b))
            if a | b == top:
                assert set(m.terms) == {a & b}
                assert abs(m.coeff(a & b)) == 1
            else:
                assert m == 0


def test_erganzung():
    assert erganzung(e(3, "e1")) == e(3, "e2we3")
    assert erganzung(e(3, "e2")) == -e(3, "e1we3")
    for x in blades(4):
        assert bracket(x, erganzung(x)) == 1
        assert erganzung_inverse(erganzung(x)) == x


def test_meet_classical():
    assert meet_classical(e(3, "e1we2"), e(3, "e2we3")) == e(3, "e2")
    assert meet_classical(e(3, "e1we2"), e(3, "e2we3"), orientation=-1) == -e(3, "e2")
    top = e(3, "e1we2we3")
    assert meet_classical(top, top) == top
    with pytest.raises(ValueError):
        meet_classical(top, top, orientation=2)


def test_meet_sign_tables():
    assert {k for k, s in meet_sign_table(3).items() if s < 0} == {(2, 2)}
    assert {k for k, s in meet_sign_table(4).items() if s < 0} == {(1, 3), (3, 1), (3, 3)}


@pytest.mark.parametrize("dim", [2, 3, 4])
def test_meet_coproduct(dim):
    t = (1 << dim) - 1
    assert meet_coproduct(Multivector.blade(dim, t)).coeff((t, t)) == 1
    # μ is the counit of Δ_∨
    for x in blades(dim):
        left = Multivector(dim)
        for (a, b), c in meet_coproduct(x):
            left = left + Multivector.blade(dim, b, c * integral(Multivector.blade(dim, a)))
        assert left == x


@pytest.mark.parametrize("dim", [2, 3, 4])
def test_lotze_gives_the_wedge_back(dim):
    for x in blades(dim):
        for y in blades(dim):
            assert lotze_product(x, y) == wedge(x, y)


def test_straightening():
    bs = blades(3)
    assert all(straightening_holds(a, b, c) for a in bs for b in bs for c in bs)


def test_extensor_meet_intersects_planes():
    # two planes in 3-space meet in a line through their common vector
    p = extensor([e(3, "e1") + e(3, "e3"), e(3, "e2")])
    q = extensor([e(3, "e2"), e(3, "e3")])
    line = meet(p, q)
    assert popcount(next(iter(line.terms))) == 1
    assert wedge(line, e(3, "e2")) == 0
