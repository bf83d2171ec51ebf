from fractions import Fraction

import pytest

from helpers import blades, e
from qca.exterior import Multivector, TensorPoly, grade_involution, graded_switch, tensor
from qca.hopf import (
    ConvCtx,
    Endo,
    LinForm,
    NoAntipode,
    antipode_solve,
    cointegral_space,
    conv_unit,
    convolve,
    counit_multiplicative_witness,
    crossing,
    grassmann_antipode,
    integral_space,
    verify_unipotent,
)
from qca.pairing import VectorForm, cco, cmul
from qca.scalars import matmul

F = Fraction


def rand_form(rng, dim):
    return VectorForm.of([[F(rng.randint(-5, 5), rng.randint(1, 4)) for _ in range(dim)] for _ in range(dim)])


def rand_endo(rng, dim):
    n = 1 << dim
    return Endo(dim, [[F(rng.randint(-3, 3), rng.randint(1, 3)) for _ in range(n)] for _ in range(n)])


def rand_invertible(rng, dim):
    while True:
        G = rand_form(rng, dim)
        if G.det():
            return G


def test_endo_algebra():
    f = Endo.from_map(2, grade_involution)
    assert f @ f == Endo.identity(2)
    assert f + Endo.zero(2) == f
    assert (f - f) == Endo.zero(2)
    assert f * 2 == f + f
    assert f(e(2, "e1we2") + e(2, "e1")) == e(2, "e1we2") - e(2, "e1")


def test_conv_unit_is_rank_one():
    for ctx in (ConvCtx(2), ConvCtx(2, VectorForm.identity(2), VectorForm.of([[1, 2], [0, 3]]))):
        u = conv_unit(ctx)
        assert u.rows[0][0] == 1
        assert sum(1 for r in u.rows for x in r if x) == 1


def test_convolution_unit_and_associativity(rng):
    ctx = ConvCtx(2, rand_form(rng, 2), rand_form(rng, 2))
    u = conv_unit(ctx)
    f, g, h = (rand_endo(rng, 2) for _ in range(3))
    assert convolve(u, f, ctx) == f == convolve(f, u, ctx)
    assert convolve(convolve(f, g, ctx), h, ctx) == convolve(f, convolve(g, h, ctx), ctx)


def test_grassmann_antipode():
    got = [grassmann_antipode(x) for x in blades(3)]
    signs = [1, -1, -1, -1, 1, 1, 1, -1]
    assert got == [x * s for x, s in zip(blades(3), signs)]
    for x in blades(4):
        assert grassmann_antipode(x) == grade_involution(x)
    ctx = ConvCtx(3)
    assert convolve(Endo.identity(3), Endo.from_map(3, grade_involution), ctx) == conv_unit(ctx)


def test_antipode_solve_local_case_is_grade_involution():
    assert antipode_solve(None, None, dim=3) == Endo.from_map(3, grade_involution)
    assert antipode_solve(VectorForm.zero(2), VectorForm.zero(2)) == Endo.from_map(2, grade_involution)
    with pytest.raises(ValueError):
        antipode_solve(None, None)


def test_antipode_dim2_closed_form(rng):
    from qca.suites import dim2_antipode_closed_form

    checked = 0
    while checked < 5:
        B, C = rand_form(rng, 2), rand_form(rng, 2)
        N, M = dim2_antipode_closed_form(B, C)
        if not N:
            continue
        checked += 1
        assert antipode_solve(B, C) == Endo(2, [[x / N for x in r] for r in M])


def test_antipode_example_matrix():
    B = VectorForm.of([[1, 2], [3, 4]])
    C = VectorForm.of([[0, 1], [1, 0]])
    # N = 1 − tr(BC) + det(BC) = 1 − 5 + 2
    S = antipode_solve(B, C)
    h = F(1, 2)
    assert S == Endo(2, [[-h, 0, 0, h], [0, h, 0, 0], [0, 0, h, 0], [0, 0, 0, -h]])


def test_no_antipode_when_C_is_B_inverse(rng):
    for dim in (1, 2, 3):
        B = rand_invertible(rng, dim)
        with pytest.raises(NoAntipode):
            antipode_solve(B, B.inverse())


@pytest.mark.parametrize("dim", [1, 2, 3])
def test_antipode_axiom(rng, dim):
    B, C = rand_form(rng, dim), rand_form(rng, dim)
    ctx = ConvCtx(dim, B, C)
    S = antipode_solve(B, C)
    u = conv_unit(ctx)
    assert convolve(S, Endo.identity(dim), ctx) == u == convolve(Endo.identity(dim), S, ctx)


def test_counit_multiplicative_only_for_local_product(rng):
    assert counit_multiplicative_witness(ConvCtx(3, None, rand_form(rng, 3))) is None
    assert counit_multiplicative_witness(ConvCtx(3, rand_form(rng, 3), None)) is not None


def test_crossing_grassmann_is_graded_switch():
    for x in blades(3):
        for y in blades(3):
            t = tensor(x, y)
            assert crossing(t, None, None) == graded_switch(t)
    assert crossing(tensor(e(2, "e1"), e(2, "e2")), None, None) == -tensor(e(2, "e2"), e(2, "e1"))
    Id = Multivector.scalar(3)
    for x in blades(3):
        assert crossing(tensor(Id, x), None, None) == tensor(x, Id)


def _crossing_oracle(a, b, B, C):
    """Direct tangle composition with cmul, cco and the solved antipode."""
    S = antipode_solve(B, C)
    dim = a.dim
    acc = TensorPoly(dim, 2)
    for (a1, a2), ca in cco(a, C):
        for (b1, b2), cb in cco(b, C):
            p = cmul(Multivector.blade(dim, a2), Multivector.blade(dim, b1), B)
            Sa = S(Multivector.blade(dim, a1))
            Sb = S(Multivector.blade(dim, b2))
            for (p1, p2), cp in cco(p, C):
                left = cmul(Sa, Multivector.blade(dim, p1), B)
                right = cmul(Multivector.blade(dim, p2), Sb, B)
                acc = acc + tensor(left, right) * (ca * cb * cp)
    return acc


def test_crossing_dim1_brute_force(rng):
    for _ in range(4):
        b, c = F(rng.randint(-5, 5), rng.randint(1, 3)), F(rng.randint(-5, 5), rng.randint(1, 3))
        if b * c == 1:
            continue
        B, C = VectorForm.of([[b]]), VectorForm.of([[c]])
        for x in blades(1):
            for y in blades(1):
                assert crossing(tensor(x, y), B, C) == _crossing_oracle(x, y, B, C)


def test_crossing_dim2_brute_force(rng):
    B, C = rand_form(rng, 2), rand_form(rng, 2)
    for x in blades(2):
        for y in blades(2):
            assert crossing(tensor(x, y), B, C) == _crossing_oracle(x, y, B, C)


def test_crossing_propagates_no_antipode():
    B = VectorForm.of([[2]])
    with pytest.raises(NoAntipode):
        crossing(tensor(e(1, "e1"), e(1, "e1")), B, B.inverse())
    with pytest.raises(ValueError):
        crossing(TensorPoly(1, 3), None, None)


def test_integrals_grassmann():
    for dim in (1, 2, 3):
        ctx = ConvCtx(dim)
        top = (1 << dim) - 1
        for side in ("left", "right"):
            (mu,) = integral_space(ctx, side)
            assert set(mu.support()) == {top}
            (coint,) = cointegral_space(ctx, side)
            assert set(coint.terms) == {top}


def test_integrals_clifford(rng):
    B, C = rand_form(rng, 2), rand_form(rng, 2)
    for side in ("left", "right"):
        assert integral_space(ConvCtx(2, B, C), side) == []
        assert integral_space(ConvCtx(2, B, None), side) != []
        assert cointegral_space(ConvCtx(2, B, C), side) == []
        assert cointegral_space(ConvCtx(2, None, C), side) != []
    with pytest.raises(ValueError):
        integral_space(ConvCtx(2), "middle")


def test_integral_dimensions_are_basis_independent(rng):
    G = rand_invertible(rng, 2)
    Gi = G.inverse()
    B, C = rand_form(rng, 2), rand_form(rng, 2)
    for b, c in ((None, None), (B, None), (None, C), (B, C)):
        b2 = None if b is None else VectorForm.of(matmul(matmul(G.transpose().entries, b.entries), G.entries))
        c2 = None if c is None else VectorForm.of(matmul(matmul(Gi.entries, c.entries), Gi.transpose().entries))
        for side in ("left", "right"):
            assert len(integral_space(ConvCtx(2, b, c), side)) == len(integral_space(ConvCtx(2, b2, c2), side))
            assert len(cointegral_space(ConvCtx(2, b, c), side)) == len(cointegral_space(ConvCtx(2, b2, c2), side))


def test_unipotents():
    for dim in (1, 2):
        ctx = ConvCtx(dim)
        u = conv_unit(ctx)
        assert verify_unipotent(u, ctx)
        assert verify_unipotent(-u, ctx)
        assert not verify_unipotent(Endo.identity(dim), ctx)


@pytest.mark.parametrize("alpha", [F(k, 2) for k in range(-6, 7)])
def test_scalar_unipotents_at_dim1(alpha):
    ctx = ConvCtx(1)
    assert verify_unipotent(conv_unit(ctx) * alpha, ctx) == (alpha in (1, -1))


def test_linform():
    mu = LinForm.from_values(2, {3: F(1, 2)})
    assert mu(e(2, "e1we2", 4) + e(2, "e1")) == 2
    assert mu.support() == {3: F(1, 2)}
    with pytest.raises(ValueError):
        LinForm(2, (1, 2))
