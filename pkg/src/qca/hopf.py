"""Convolution algebra of End(∧V): antipodes, crossings, integrals."""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Callable, Iterator, Mapping, Sequence

from .exterior import (
    DimensionError,
    Multivector,
    TensorPoly,
    add_into,
    blade_order,
    blade_position,
    check_dim,
    splits,
    wedge_blades,
)
from .pairing import VectorForm, clifford_coproduct, clifford_product
from .scalars import Scalar, fmt_scalar, norm, nullspace, solve_square, to_scalar


class NoAntipode(Exception):
    """The bi-convolution has no antipode (the defining linear system is inconsistent)."""


# -- Endo ---------------------------------------------------------------------


class Endo:
    """Linear operator on ∧V as a 2^n × 2^n matrix in graded-lex blade order.

    Column j is the image of the j-th basis blade.
    """

    __slots__ = ("dim", "rows")

    def __init__(self, dim: int, rows: Sequence[Sequence[Scalar]]):
        check_dim(dim)
        N = 1 << dim
        if len(rows) != N or any(len(r) != N for r in rows):
            raise DimensionError(f"Endo on dim {dim} needs a {N}x{N} matrix")
        self.dim = dim
        self.rows = tuple(tuple(to_scalar(x) for x in r) for r in rows)

    @classmethod
    def from_columns(cls, dim: int, cols: Sequence[Mapping[int, Scalar]]) -> Endo:
        """Build from the images (terms dicts) of the basis blades in blade order."""
        pos = blade_position(dim)
        N = 1 << dim
        rows = [[0] * N for _ in range(N)]
        for j, col in enumerate(cols):
            for m, c in col.items():
                rows[pos[m]][j] = norm(c)
        e = object.__new__(cls)
        e.dim = dim
        e.rows = tuple(tuple(r) for r in rows)
        return e

    @classmethod
    def from_map(cls, dim: int, fn: Callable[[Multivector], Multivector]) -> Endo:
        return cls.from_columns(dim, [fn(Multivector._raw(dim, {m: 1})).terms for m in blade_order(dim)])

    @classmethod
    def identity(cls, dim: int) -> Endo:
        return cls.from_columns(dim, [{m: 1} for m in blade_order(dim)])

    @classmethod
    def zero(cls, dim: int) -> Endo:
        return cls.from_columns(dim, [{} for _ in blade_order(dim)])

    def column(self, mask: int) -> dict:
        j = blade_position(self.dim)[mask]
        order = blade_order(self.dim)
        return {order[i]: r[j] for i, r in enumerate(self.rows) if r[j]}

    def columns(self) -> list[dict]:
        return [self.column(m) for m in blade_order(self.dim)]

    def __call__(self, u: Multivector) -> Multivector:
        if u.dim != self.dim:
            raise DimensionError("dimension mismatch")
        acc: dict = {}
        for m, c in u.terms.items():
            for k, d in self.column(m).items():
                add_into(acc, k, c * d)
        return Multivector._raw(self.dim, acc)

    def __matmul__(self, other: Endo) -> Endo:
        """Operator composition self ∘ other."""
        if other.dim != self.dim:
            raise DimensionError("dimension mismatch")
        cols = list(zip(*other.rows))
        out = [[norm(sum(a * b for a, b in zip(r, c) if a and b)) for c in cols] for r in self.rows]
        return Endo(self.dim, out)

    def __add__(self, other: Endo) -> Endo:
        return Endo(self.dim, [[a + b for a, b in zip(r, s)] for r, s in zip(self.rows, other.rows)])

    def __neg__(self) -> Endo:
        return Endo(self.dim, [[-a for a in r] for r in self.rows])

    def __sub__(self, other: Endo) -> Endo:
        return self + (-other)

    def __mul__(self, k: Scalar) -> Endo:
        if isinstance(k, Endo):
            return NotImplemented
        k = to_scalar(k)
        return Endo(self.dim, [[a * k for a in r] for r in self.rows])

    __rmul__ = __mul__

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Endo):
            return NotImplemented
        return self.dim == other.dim and self.rows == other.rows

    __hash__ = None  # type: ignore[assignment]

    def __repr__(self) -> str:
        body = "; ".join(" ".join(fmt_scalar(x) for x in r) for r in self.rows)
        return f"Endo({self.dim}, [{body}])"


# -- convolution context ------------------------------------------------------


class ConvCtx:
    """Product (wedge or cmul_B) and co-product (gco or cco_C) on one ∧V.

    ``B``/``C`` of None mean the Graßmann product / co-product.
    """

    def __init__(self, dim: int, B: VectorForm | None = None, C: VectorForm | None = None):
        check_dim(dim)
        for f in (B, C):
            if f is not None and f.dim != dim:
                raise DimensionError("form dimension differs from context dimension")
        self.dim = dim
        self.B = None if B is None or B.is_zero() else B
        self.C = None if C is None or C.is_zero() else C
        self._mul = clifford_product(self.B) if self.B is not None else None
        self._cop = clifford_coproduct(self.C) if self.C is not None else None

    def mul(self, a: int, b: int) -> Mapping[int, Scalar]:
        if self._mul is None:
            s, m = wedge_blades(a, b)
            return {m: s} if s else {}
        return self._mul(a, b)

    def cop(self, a: int) -> Iterator[tuple[int, int, Scalar]]:
        if self._cop is None:
            return iter(splits(a))
        return ((m1, m2, c) for (m1, m2), c in self._cop(a).items())

    def counit(self, a: int) -> Scalar:
        # both gco and cco_C have the Id-coefficient as counit
        return 1 if a == 0 else 0

    def mul_terms(self, x: Mapping[int, Scalar], y: Mapping[int, Scalar]) -> dict:
        acc: dict = {}
        for a, ca in x.items():
            for b, cb in y.items():
                k = ca * cb
                for m, c in self.mul(a, b).items():
                    add_into(acc, m, k * c)
        return acc

    def __repr__(self) -> str:
        return f"ConvCtx(dim={self.dim}, B={'0' if self.B is None else 'B'}, C={'0' if self.C is None else 'C'})"


def _ctx_check(ctx: ConvCtx, *fs: Endo) -> None:
    for f in fs:
        if f.dim != ctx.dim:
            raise DimensionError("Endo dimension differs from context dimension")


def convolve(f: Endo, g: Endo, ctx: ConvCtx) -> Endo:
    """f ⋆ g = m ∘ (f ⊗ g) ∘ Δ."""
    _ctx_check(ctx, f, g)
    fc = {m: f.column(m) for m in blade_order(ctx.dim)}
    gc = {m: g.column(m) for m in blade_order(ctx.dim)}
    cols = []
    for x in blade_order(ctx.dim):
        acc: dict = {}
        for x1, x2, c in ctx.cop(x):
            for m, d in ctx.mul_terms(fc[x1], gc[x2]).items():
                add_into(acc, m, c * d)
        cols.append(acc)
    return Endo.from_columns(ctx.dim, cols)


def conv_unit(ctx: ConvCtx) -> Endo:
    """η ∘ ε: x ↦ ε(x)·Id."""
    return Endo.from_columns(ctx.dim, [{0: ctx.counit(m)} if ctx.counit(m) else {} for m in blade_order(ctx.dim)])


def verify_unipotent(T: Endo, ctx: ConvCtx) -> bool:
    return convolve(T, T, ctx) == conv_unit(ctx)


# -- antipodes ----------------------------------------------------------------


@lru_cache(maxsize=None)
def _gantipode_blade(mask: int) -> tuple[tuple[int, Scalar], ...]:
    # f⁻¹(x) = −x − Σ′ x₍₁₎ ∧ f⁻¹(x₍₂₎), proper cuts only
    if mask == 0:
        return ((0, 1),)
    acc: dict = {mask: -1}
    for m1, m2, s in splits(mask):
        if m1 == 0 or m2 == 0:
            continue
        for k, c in _gantipode_blade(m2):
            t, m = wedge_blades(m1, k)
            if t:
                add_into(acc, m, -s * t * c)
    return tuple(acc.items())


def grassmann_antipode(u: Multivector) -> Multivector:
    acc: dict = {}
    for m, c in u.terms.items():
        for k, d in _gantipode_blade(m):
            add_into(acc, k, c * d)
    return Multivector._raw(u.dim, acc)


def antipode_solve(B: VectorForm | None, C: VectorForm | None, dim: int | None = None) -> Endo:
    """Solve S ⋆ id = u = id ⋆ S in the bi-convolution Cl(B, C).

    Unknowns are the 4^n entries S[k][j]; raises NoAntipode when the system
    has no solution.
    """
    if dim is None:
        dim = (B or C).dim if (B or C) is not None else None
        if dim is None:
            raise ValueError("dim is required when both forms are absent")
    ctx = ConvCtx(dim, B, C)
    return _antipode(ctx)


def _antipode(ctx: ConvCtx) -> Endo:
    key = (ctx.dim, ctx.B, ctx.C)
    hit = _ANTIPODES.get(key)
    if hit is not None:
        if isinstance(hit, NoAntipode):
            raise hit
        return hit
    # S ⋆ id = u.  In a finite-dimensional algebra a one-sided inverse is
    # two-sided, so the left system is square and nonsingular exactly when
    # the antipode exists; the right axiom is confirmed afterwards.
    order = blade_order(ctx.dim)
    pos = blade_position(ctx.dim)
    N = len(order)
    rows: dict = {}
    rhs: dict = {}
    for x in order:
        for x1, x2, c in ctx.cop(x):
            j1 = pos[x1]
            for k in order:
                for r, d in ctx.mul(k, x2).items():
                    add_into(rows.setdefault(pos[r] * N + pos[x], {}), pos[k] * N + j1, c * d)
        e = ctx.counit(x)
        if e:
            rhs[pos[x]] = e
    sol = solve_square(rows, rhs, N * N)
    S = None if sol is None else Endo(ctx.dim, [sol[i * N:(i + 1) * N] for i in range(N)])
    if S is None or convolve(Endo.identity(ctx.dim), S, ctx) != conv_unit(ctx):
        err = NoAntipode(f"no antipode for {ctx!r}")
        _ANTIPODES[key] = err
        raise err
    _ANTIPODES[key] = S
    return S


_ANTIPODES: dict = {}


# -- crossing -----------------------------------------------------------------


def crossing(t: TensorPoly, B: VectorForm | None, C: VectorForm | None) -> TensorPoly:
    """Crossing derived from product, co-product and antipode.

    X(a⊗b) = Σ m(S a₍₁₎ ⊗ p₍₁₎) ⊗ m(p₍₂₎ ⊗ S b₍₂₎),  p = m(a₍₂₎ ⊗ b₍₁₎),
    with Δ = Δ_C and m = m_B.  The tangle is planar so no switch signs enter.
    """
    if t.rank != 2:
        raise ValueError("crossing acts on rank-2 tensors")
    kern = _crossing_kernel(ConvCtx(t.dim, B, C))
    acc: dict = {}
    for (a, b), c0 in t.terms.items():
        for key, c in kern.blade(a, b).items():
            add_into(acc, key, c0 * c)
    return TensorPoly._raw(t.dim, 2, acc)


class _CrossingKernel:
    """Blade-level crossing with the partial products shared across calls."""

    def __init__(self, ctx: ConvCtx):
        self.ctx = ctx
        if ctx.B is None and ctx.C is None:
            # the Graßmann antipode has a closed recursion; no solve needed
            S = Endo.from_map(ctx.dim, grassmann_antipode)
        else:
            S = _antipode(ctx)
        self.scol = {m: S.column(m) for m in blade_order(ctx.dim)}
        self._inner: dict = {}
        self._left: dict = {}
        self._right: dict = {}
        self._blade: dict = {}

    def inner(self, a2: int, b1: int) -> dict:
        # Δ(m(a₍₂₎ ⊗ b₍₁₎))
        hit = self._inner.get((a2, b1))
        if hit is None:
            hit = {}
            for p, c in self.ctx.mul(a2, b1).items():
                for p1, p2, d in self.ctx.cop(p):
                    add_into(hit, (p1, p2), c * d)
            self._inner[(a2, b1)] = hit
        return hit

    def left(self, a1: int) -> dict:
        # p₁ ↦ m(S a₁ ⊗ p₁), one table per a₁
        hit = self._left.get(a1)
        if hit is None:
            src = self.scol[a1]
            hit = self._left[a1] = {p: self.ctx.mul_terms(src, {p: 1}) for p in blade_order(self.ctx.dim)}
        return hit

    def right(self, b2: int) -> dict:
        hit = self._right.get(b2)
        if hit is None:
            src = self.scol[b2]
            hit = self._right[b2] = {p: self.ctx.mul_terms({p: 1}, src) for p in blade_order(self.ctx.dim)}
        return hit

    def blade(self, a: int, b: int) -> dict:
        hit = self._blade.get((a, b))
        if hit is not None:
            return hit
        acc: dict = {}
        bs = list(self.ctx.cop(b))
        for a1, a2, ca in self.ctx.cop(a):
            La = self.left(a1)
            for b1, b2, cb in bs:
                Rb = self.right(b2)
                k = ca * cb
                for (p1, p2), cp in self.inner(a2, b1).items():
                    L = La[p1]
                    if not L:
                        continue
                    kk = k * cp
                    for r, cr in Rb[p2].items():
                        for l, cl in L.items():
                            key = (l, r)
                            acc[key] = acc.get(key, 0) + kk * cl * cr
        hit = self._blade[(a, b)] = {key: norm(c) for key, c in acc.items() if c}
        return hit


_KERNELS: dict = {}


def _crossing_kernel(ctx: ConvCtx) -> _CrossingKernel:
    key = (ctx.dim, ctx.B, ctx.C)
    hit = _KERNELS.get(key)
    if hit is None:
        hit = _KERNELS[key] = _CrossingKernel(ctx)
    return hit


# -- integrals and cointegrals ---------------------------------------------------


@dataclass(frozen=True)
class LinForm:
    """Linear form on ∧V given by its values on the blades in blade order."""

    dim: int
    coeffs: tuple[Scalar, ...]

    def __post_init__(self):
        check_dim(self.dim)
        c = tuple(to_scalar(x) for x in self.coeffs)
        if len(c) != 1 << self.dim:
            raise DimensionError(f"LinForm on dim {self.dim} needs {1 << self.dim} values")
        object.__setattr__(self, "coeffs", c)

    @classmethod
    def from_values(cls, dim: int, values: Mapping[int, Scalar]) -> LinForm:
        return cls(dim, tuple(values.get(m, 0) for m in blade_order(dim)))

    def value(self, mask: int) -> Scalar:
        return self.coeffs[blade_position(self.dim)[mask]]

    def __call__(self, u: Multivector) -> Scalar:
        if u.dim != self.dim:
            raise DimensionError("dimension mismatch")
        return norm(sum(c * self.value(m) for m, c in u.terms.items()))

    def support(self) -> dict:
        return {m: c for m, c in zip(blade_order(self.dim), self.coeffs) if c}


def _nullspace_from(eqs: list[dict], N: int) -> list[list[Scalar]]:
    rows = {i: r for i, r in enumerate(eqs) if r}
    if not rows:
        return nullspace([], N)
    return nullspace({i: r for i, r in enumerate(rows.values())}, N)


def integral_space(ctx: ConvCtx, side: str) -> list[LinForm]:
    """Basis of μ with (id⊗μ)Δ = μ·Id (right) or (μ⊗id)Δ = μ·Id (left)."""
    if side not in ("left", "right"):
        raise ValueError("side must be left or right")
    order = blade_order(ctx.dim)
    pos = blade_position(ctx.dim)
    eqs: list[dict] = []
    for x in order:
        out: dict = {}
        for x1, x2, c in ctx.cop(x):
            leg, mu_arg = (x1, x2) if side == "right" else (x2, x1)
            add_into(out.setdefault(leg, {}), pos[mu_arg], c)
        add_into(out.setdefault(0, {}), pos[x], -1)
        eqs.extend(r for r in out.values() if r)
    return [LinForm(ctx.dim, tuple(v)) for v in _nullspace_from(eqs, len(order))]


def cointegral_space(ctx: ConvCtx, side: str) -> list[Multivector]:
    """Basis of e with m(x⊗e) = ε(x)e (right) or m(e⊗x) = ε(x)e (left)."""
    if side not in ("left", "right"):
        raise ValueError("side must be left or right")
    order = blade_order(ctx.dim)
    pos = blade_position(ctx.dim)
    eqs: list[dict] = []
    for x in order:
        out: dict = {}
        for k in order:
            prod = ctx.mul(x, k) if side == "right" else ctx.mul(k, x)
            for r, c in prod.items():
                add_into(out.setdefault(r, {}), pos[k], c)
        e = ctx.counit(x)
        if e:
            for k in order:
                add_into(out.setdefault(k, {}), pos[k], -e)
        eqs.extend(r for r in out.values() if r)
    return [Multivector._raw(ctx.dim, dict(zip(order, v))) for v in _nullspace_from(eqs, len(order))]


def counit_multiplicative_witness(ctx: ConvCtx) -> tuple[int, int] | None:
    """First blade pair with ε(m(a, b)) ≠ ε(a)ε(b), or None when ε is multiplicative."""
    for a in blade_order(ctx.dim):
        for b in blade_order(ctx.dim):
            if ctx.mul(a, b).get(0, 0) != ctx.counit(a) * ctx.counit(b):
                return a, b
    return None
