"""Generalized cliffordization with free pairings on ∧V × ∧V, and the
ordering group of normalized linear forms Z.
"""

from __future__ import annotations

from functools import cached_property
from typing import Callable, Mapping, Sequence

from .exterior import (
    DimensionError,
    Multivector,
    add_into,
    bilinear,
    blade_order,
    blade_position,
    check_dim,
    linear,
    popcount,
    splits,
    wedge_blades,
)
from .hopf import Endo, LinForm
from .pairing import Cliffordizer, VectorForm, extend_pairing
from .scalars import Scalar, fmt_scalar, norm, to_scalar


class GeneralPairing:
    """BF : ∧V × ∧V → k as a 2^n × 2^n matrix in blade order (row = left slot)."""

    __slots__ = ("dim", "rows", "_val", "__dict__")

    def __init__(self, dim: int, rows: Sequence[Sequence[Scalar]]):
        check_dim(dim)
        N = 1 << dim
        if len(rows) != N or any(len(r) != N for r in rows):
            raise DimensionError(f"GeneralPairing on dim {dim} needs a {N}x{N} matrix")
        self.dim = dim
        self.rows = tuple(tuple(to_scalar(x) for x in r) for r in rows)
        pos = blade_position(dim)
        self._val = {(a, b): self.rows[pos[a]][pos[b]] for a in pos for b in pos}

    @classmethod
    def from_function(cls, dim: int, fn: Callable[[int, int], Scalar]) -> GeneralPairing:
        order = blade_order(dim)
        return cls(dim, [[fn(a, b) for b in order] for a in order])

    @classmethod
    def graded(cls, B: VectorForm) -> GeneralPairing:
        return cls.from_function(B.dim, extend_pairing(B).value)

    def value(self, a: int, b: int) -> Scalar:
        return self._val[(a, b)]

    def __call__(self, u: Multivector, v: Multivector) -> Scalar:
        if u.dim != self.dim or v.dim != self.dim:
            raise DimensionError("dimension mismatch")
        return norm(sum(ca * cb * self._val[(a, b)] for a, ca in u.terms.items() for b, cb in v.terms.items()))

    def with_entry(self, a: int, b: int, c: Scalar) -> GeneralPairing:
        pos = blade_position(self.dim)
        rows = [list(r) for r in self.rows]
        rows[pos[a]][pos[b]] = c
        return GeneralPairing(self.dim, rows)

    @cached_property
    def product(self) -> Cliffordizer:
        return Cliffordizer(self.value, graded=False)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, GeneralPairing):
            return NotImplemented
        return self.dim == other.dim and self.rows == other.rows

    __hash__ = None  # type: ignore[assignment]

    def __repr__(self) -> str:
        body = "; ".join(" ".join(fmt_scalar(x) for x in r) for r in self.rows)
        return f"GeneralPairing({self.dim}, [{body}])"


def rmul(u: Multivector, v: Multivector, BF: GeneralPairing) -> Multivector:
    """u &r v = Σ BF(u₍₂₎, v₍₁₎) u₍₁₎ ∧ v₍₂₎."""
    if u.dim != BF.dim:
        raise DimensionError("dimension mismatch")
    return bilinear(u, v, BF.product)


# -- constraint checkers ------------------------------------------------------


def check_unit(BF: GeneralPairing) -> bool:
    """BF(Id, x) = ε(x) = BF(x, Id) for every blade x."""
    for m in blade_order(BF.dim):
        e = 1 if m == 0 else 0
        if BF.value(0, m) != e or BF.value(m, 0) != e:
            return False
    return True


def rmul_unit_holds(BF: GeneralPairing) -> bool:
    """Direct test: Id &r x == x == x &r Id on every blade."""
    one = Multivector.scalar(BF.dim)
    for m in blade_order(BF.dim):
        x = Multivector._raw(BF.dim, {m: 1})
        if rmul(one, x, BF) != x or rmul(x, one, BF) != x:
            return False
    return True


def assoc_witness(BF: GeneralPairing) -> tuple[int, int, int] | None:
    """First blade triple where (u &r v) &r w ≠ u &r (v &r w), else None."""
    f = BF.product
    order = blade_order(BF.dim)

    def mul(x: Mapping, y: Mapping) -> dict:
        acc: dict = {}
        for a, ca in x.items():
            for b, cb in y.items():
                for m, c in f(a, b).items():
                    add_into(acc, m, ca * cb * c)
        return acc

    for a in order:
        for b in order:
            ab = f(a, b)
            for c in order:
                if mul(ab, {c: 1}) != mul({a: 1}, f(b, c)):
                    return a, b, c
    return None


def check_assoc(BF: GeneralPairing) -> bool:
    return assoc_witness(BF) is None


def check_car(BF: GeneralPairing) -> bool:
    """e_i &r e_j + e_j &r e_i == (BF(e_i,e_j) + BF(e_j,e_i))·Id for all i, j."""
    n = BF.dim
    for i in range(n):
        for j in range(n):
            ei, ej = Multivector.gen(n, i + 1), Multivector.gen(n, j + 1)
            lhs = rmul(ei, ej, BF) + rmul(ej, ei, BF)
            rhs = Multivector.scalar(n, BF(ei, ej) + BF(ej, ei))
            if lhs != rhs:
                return False
    return True


# -- ordering forms -----------------------------------------------------------


class OrderingForm(LinForm):
    """Normalized linear form: Z(Id) = 1 and Z(e_i) = 0.

    With ``even`` set, Z must also vanish on all odd grades.
    """

    def __init__(self, dim: int, coeffs: Sequence[Scalar], even: bool = False):
        super().__init__(dim, tuple(coeffs))
        object.__setattr__(self, "even", even)
        if self.value(0) != 1:
            raise ValueError("ordering form needs Z(Id) = 1")
        for i in range(dim):
            if self.value(1 << i):
                raise ValueError("ordering form needs Z(e_i) = 0")
        if even and any(self.value(m) for m in blade_order(dim) if popcount(m) & 1):
            raise ValueError("even ordering form must vanish on odd grades")

    @classmethod
    def from_values(cls, dim: int, values: Mapping[int, Scalar], even: bool = False) -> OrderingForm:
        vals = dict(values)
        vals.setdefault(0, 1)
        return cls(dim, tuple(vals.get(m, 0) for m in blade_order(dim)), even=even)

    @classmethod
    def counit(cls, dim: int) -> OrderingForm:
        return cls.from_values(dim, {0: 1}, even=True)


def convolve_forms(A: LinForm, Bf: LinForm) -> LinForm:
    """(A ⋆ B)(x) = Σ A(x₍₁₎) B(x₍₂₎) over the Graßmann co-product."""
    if A.dim != Bf.dim:
        raise DimensionError("dimension mismatch")
    vals = {m: norm(sum(s * A.value(m1) * Bf.value(m2) for m1, m2, s in splits(m))) for m in blade_order(A.dim)}
    return LinForm.from_values(A.dim, vals)


def z_inverse(Z: LinForm) -> OrderingForm:
    """Convolution inverse by the proper-cut recursion Z⁻¹(x) = ε(x) − Σ_{x₍₁₎≠Id} Z(x₍₁₎) Z⁻¹(x₍₂₎)."""
    if Z.value(0) != 1:
        raise ValueError("z_inverse needs Z(Id) = 1")
    inv: dict = {}
    for m in sorted(blade_order(Z.dim), key=popcount):
        acc: Scalar = 1 if m == 0 else 0
        for m1, m2, s in splits(m):
            if m1:
                acc -= s * Z.value(m1) * inv[m2]
        inv[m] = norm(acc)
    even = bool(getattr(Z, "even", False))
    return OrderingForm.from_values(Z.dim, inv, even=even)


def z_coboundary(Z: LinForm) -> GeneralPairing:
    """∂Z(u, v) = Σ Z(u₍₁₎) Z(v₍₂₎) Z⁻¹(u₍₂₎ ∧ v₍₁₎)."""
    Zi = z_inverse(Z)
    dim = Z.dim

    def fn(a: int, b: int) -> Scalar:
        acc: Scalar = 0
        for a1, a2, sa in splits(a):
            za = Z.value(a1)
            if not za:
                continue
            for b1, b2, sb in splits(b):
                zb = Z.value(b2)
                if not zb:
                    continue
                s, m = wedge_blades(a2, b1)
                if s:
                    acc += sa * sb * s * za * zb * Zi.value(m)
        return norm(acc)

    return GeneralPairing.from_function(dim, fn)


def combined_pairing(B: VectorForm, Z: LinForm) -> GeneralPairing:
    """BF(u, v) = Σ ∂Z(u₍₁₎, v₍₂₎) B^∧(u₍₂₎, v₍₁₎)."""
    if B.dim != Z.dim:
        raise DimensionError("dimension mismatch")
    dZ = z_coboundary(Z)
    P = extend_pairing(B).value

    def fn(a: int, b: int) -> Scalar:
        acc: Scalar = 0
        for a1, a2, sa in splits(a):
            for b1, b2, sb in splits(b):
                if popcount(a2) != popcount(b1):
                    continue
                p = P(a2, b1)
                if p:
                    acc += sa * sb * dZ.value(a1, b2) * p
        return norm(acc)

    return GeneralPairing.from_function(B.dim, fn)


def ordering_operator(p: LinForm) -> Endo:
    """P(x) = Σ p(x₍₁₎) x₍₂₎, the convolution p ⋆ id."""
    if not p.value(0):
        raise ValueError("ordering operator needs p(Id) != 0")
    return Endo.from_map(p.dim, lambda u: linear(u, lambda m: _apply_left(p, m)))


def _apply_left(p: LinForm, m: int) -> dict:
    out: dict = {}
    for m1, m2, s in splits(m):
        v = p.value(m1)
        if v:
            add_into(out, m2, s * v)
    return out
