"""Shared hypothesis strategies and small builders for the unit tests."""

from fractions import Fraction

from hypothesis import strategies as st

from qca.exterior import Multivector, blade_order
from qca.pairing import VectorForm

rationals = st.builds(Fraction, st.integers(-9, 9), st.integers(1, 6))


def multivectors(dim):
    return st.dictionaries(st.sampled_from(blade_order(dim)), rationals, max_size=1 << dim).map(
        lambda t: Multivector(dim, t))


def forms(dim):
    return st.lists(st.lists(rationals, min_size=dim, max_size=dim), min_size=dim, max_size=dim).map(VectorForm.of)


def antisymmetric_forms(dim):
    def build(vals):
        rows = [[Fraction(0)] * dim for _ in range(dim)]
        it = iter(vals)
        for i in range(dim):
            for j in range(i + 1, dim):
                rows[i][j] = next(it)
                rows[j][i] = -rows[i][j]
        return VectorForm.of(rows)

    k = dim * (dim - 1) // 2
    return st.lists(rationals, min_size=k, max_size=k).map(build)


def blades(dim):
    return [Multivector.blade(dim, m) for m in blade_order(dim)]


def e(dim, name, c=1):
    return Multivector.from_name(dim, name, c)
