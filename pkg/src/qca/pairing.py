"""Bilinear forms, their graded extension, contractions and cliffordization.

The Clifford product is the Rota–Stein deformation of the wedge

    u ∘ v = Σ B^∧(u₍₂₎, v₍₁₎) · u₍₁₎ ∧ v₍₂₎

and the Clifford co-product dualizes it with a co-scalar product C.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Callable, Iterable, Sequence

from .exterior import (
    DimensionError,
    Multivector,
    TensorPoly,
    add_into,
    bilinear,
    blade_order,
    blade_sign,
    indices,
    linear,
    popcount,
    splits,
    wedge,
    wedge_blades,
)
from .scalars import Scalar, det, fmt_scalar, inverse, norm, to_scalar


@dataclass(frozen=True)
class VectorForm:
    """An n×n matrix of exact scalars, B(e_i, e_j) = entries[i-1][j-1]."""

    entries: tuple[tuple[Scalar, ...], ...]

    def __post_init__(self):
        rows = tuple(tuple(to_scalar(x) for x in r) for r in self.entries)
        n = len(rows)
        if any(len(r) != n for r in rows):
            raise ValueError("VectorForm must be square")
        object.__setattr__(self, "entries", rows)

    @classmethod
    def of(cls, rows: Sequence[Sequence[object]]) -> VectorForm:
        return cls(tuple(tuple(r) for r in rows))

    @classmethod
    def zero(cls, dim: int) -> VectorForm:
        return cls(tuple((0,) * dim for _ in range(dim)))

    @classmethod
    def identity(cls, dim: int) -> VectorForm:
        return cls(tuple(tuple(int(i == j) for j in range(dim)) for i in range(dim)))

    @property
    def dim(self) -> int:
        return len(self.entries)

    def __call__(self, i: int, j: int) -> Scalar:
        """1-based entry B_ij."""
        return self.entries[i - 1][j - 1]

    def on_vectors(self, x: Multivector, y: Multivector) -> Scalar:
        acc: Scalar = 0
        for a, ca in x.terms.items():
            for b, cb in y.terms.items():
                if popcount(a) != 1 or popcount(b) != 1:
                    raise ValueError("VectorForm evaluates on grade-1 arguments only")
                acc += ca * cb * self.entries[a.bit_length() - 1][b.bit_length() - 1]
        return norm(acc)

    def transpose(self) -> VectorForm:
        return VectorForm(tuple(zip(*self.entries)))

    def __neg__(self) -> VectorForm:
        return VectorForm(tuple(tuple(-x for x in r) for r in self.entries))

    def __add__(self, other: VectorForm) -> VectorForm:
        return VectorForm(tuple(tuple(x + y for x, y in zip(r, s)) for r, s in zip(self.entries, other.entries)))

    def __sub__(self, other: VectorForm) -> VectorForm:
        return self + (-other)

    def symmetric_part(self) -> VectorForm:
        t = self.transpose().entries
        return VectorForm(tuple(tuple(norm(Fraction(x + y) / 2) for x, y in zip(r, s))
                                for r, s in zip(self.entries, t)))

    def antisymmetric_part(self) -> VectorForm:
        return self - self.symmetric_part()

    def is_antisymmetric(self) -> bool:
        return all(self.entries[i][j] == -self.entries[j][i] for i in range(self.dim) for j in range(self.dim))

    def is_zero(self) -> bool:
        return not any(any(r) for r in self.entries)

    def inverse(self) -> VectorForm | None:
        inv = inverse(self.entries)
        return None if inv is None else VectorForm.of(inv)

    def det(self) -> Scalar:
        return det(self.entries)

    def to_json(self) -> list[list[str]]:
        return [[fmt_scalar(x) for x in r] for r in self.entries]


def _check(B: VectorForm, dim: int) -> None:
    if B.dim != dim:
        raise DimensionError(f"form has dim {B.dim}, multivector has dim {dim}")


# -- graded extension ---------------------------------------------------------


class GradedPairing:
    """B^∧ on ∧V×∧V, defined by the Laplace recursion

        B^∧(e_i ∧ v, w) = Σ B(e_i, w₍₂₎) B^∧(v, w₍₁₎)   (w₍₂₎ of grade 1)

    and memoized per blade pair.
    """

    def __init__(self, base: VectorForm):
        self.base = base
        self.dim = base.dim
        self._memo: dict[tuple[int, int], Scalar] = {}

    def value(self, a: int, b: int) -> Scalar:
        if popcount(a) != popcount(b):
            return 0
        if a == 0:
            return 1
        key = (a, b)
        hit = self._memo.get(key)
        if hit is not None:
            return hit
        low = a & -a
        i = low.bit_length() - 1
        rest = a ^ low
        row = self.base.entries[i]
        acc: Scalar = 0
        bb = b
        while bb:
            j = bb & -bb
            bb ^= j
            bij = row[j.bit_length() - 1]
            if bij:
                w1 = b ^ j
                acc += blade_sign(w1, j) * bij * self.value(rest, w1)
        acc = norm(acc)
        self._memo[key] = acc
        return acc

    def __call__(self, x: Multivector, y: Multivector) -> Scalar:
        _check(self.base, x.dim)
        _check(self.base, y.dim)
        acc: Scalar = 0
        for a, ca in x.terms.items():
            for b, cb in y.terms.items():
                v = self.value(a, b)
                if v:
                    acc += ca * cb * v
        return norm(acc)


@lru_cache(maxsize=256)
def extend_pairing(B: VectorForm) -> GradedPairing:
    return GradedPairing(B)


def pairing_det(B: VectorForm, a: int, b: int) -> Scalar:
    """Closed form (−1)^{r(r−1)/2} det(B[a, b]) used only as a cross-check."""
    if popcount(a) != popcount(b):
        return 0
    ia, ib = indices(a), indices(b)
    r = len(ia)
    sub = [[B(i, j) for j in ib] for i in ia]
    return norm((-1) ** (r * (r - 1) // 2) * det(sub))


# -- cliffordization ----------------------------------------------------------


class Cliffordizer:
    """Blade-level product Σ P(u₍₂₎, v₍₁₎) u₍₁₎ ∧ v₍₂₎ for an arbitrary pairing P.

    ``graded`` lets the loop skip split pairs of unequal grade, which is exact
    for B^∧ and saves most of the work.
    """

    def __init__(self, value: Callable[[int, int], Scalar], graded: bool):
        self.value = value
        self.graded = graded
        self._memo: dict[tuple[int, int], dict] = {}

    def __call__(self, a: int, b: int) -> dict:
        key = (a, b)
        hit = self._memo.get(key)
        if hit is not None:
            return hit
        out: dict = {}
        bs = splits(b)
        for a1, a2, sa in splits(a):
            g = popcount(a2)
            for b1, b2, sb in bs:
                if self.graded and popcount(b1) != g:
                    continue
                p = self.value(a2, b1)
                if not p:
                    continue
                s, m = wedge_blades(a1, b2)
                if s:
                    add_into(out, m, s * sa * sb * p)
        self._memo[key] = out
        return out


@lru_cache(maxsize=256)
def clifford_product(B: VectorForm) -> Cliffordizer:
    return Cliffordizer(extend_pairing(B).value, graded=True)


def cmul(u: Multivector, v: Multivector, B: VectorForm) -> Multivector:
    _check(B, u.dim)
    return bilinear(u, v, clifford_product(B))


def cmul_all(items: Iterable[Multivector], B: VectorForm) -> Multivector:
    acc = Multivector.scalar(B.dim)
    for x in items:
        acc = cmul(acc, x, B)
    return acc


def left_contract(u: Multivector, v: Multivector, B: VectorForm) -> Multivector:
    """u ⌋ v = Σ B^∧(u, v₍₁₎) v₍₂₎."""
    _check(B, u.dim)
    P = extend_pairing(B).value

    def fn(a: int, b: int) -> dict:
        g = popcount(a)
        out: dict = {}
        for b1, b2, s in splits(b):
            if popcount(b1) == g:
                p = P(a, b1)
                if p:
                    add_into(out, b2, s * p)
        return out

    return bilinear(u, v, fn)


def right_contract(u: Multivector, v: Multivector, B: VectorForm) -> Multivector:
    """u ⌊ v = Σ u₍₁₎ B^∧(u₍₂₎, v)."""
    _check(B, u.dim)
    P = extend_pairing(B).value

    def fn(a: int, b: int) -> dict:
        g = popcount(b)
        out: dict = {}
        for a1, a2, s in splits(a):
            if popcount(a2) == g:
                p = P(a2, b)
                if p:
                    add_into(out, a1, s * p)
        return out

    return bilinear(u, v, fn)


def clifford_map(x: Multivector, u: Multivector, B: VectorForm) -> Multivector:
    """Chevalley map γ_x(u) = x ⌋ u + x ∧ u for a vector x."""
    if not x.is_homogeneous(1):
        raise ValueError("clifford_map needs a grade-1 first argument")
    return left_contract(x, u, B) + wedge(x, u)


# -- co-cliffordization -------------------------------------------------------


class CoCliffordizer:
    """Blade-level Clifford co-product Δ_C(a) = Σ (a₍₁₎ ∧ C₍₁₎) ⊗ (C₍₂₎ ∧ a₍₂₎)."""

    def __init__(self, C: VectorForm):
        self.C = C
        P = extend_pairing(C).value
        order = blade_order(C.dim)
        self.cap = [(x, y, P(x, y)) for x in order for y in order if popcount(x) == popcount(y) and P(x, y)]
        self._memo: dict[int, dict] = {}

    def __call__(self, a: int) -> dict:
        hit = self._memo.get(a)
        if hit is not None:
            return hit
        out: dict = {}
        for a1, a2, s in splits(a):
            for x, y, p in self.cap:
                s1, m1 = wedge_blades(a1, x)
                if not s1:
                    continue
                s2, m2 = wedge_blades(y, a2)
                if s2:
                    add_into(out, (m1, m2), s * s1 * s2 * p)
        self._memo[a] = out
        return out


@lru_cache(maxsize=256)
def clifford_coproduct(C: VectorForm) -> CoCliffordizer:
    return CoCliffordizer(C)


def cco(u: Multivector, C: VectorForm) -> TensorPoly:
    _check(C, u.dim)
    f = clifford_coproduct(C)
    acc: dict = {}
    for m, c in u.terms.items():
        for key, d in f(m).items():
            add_into(acc, key, c * d)
    return TensorPoly._raw(u.dim, 2, acc)


# -- dotted wedge and Wick basis change ----------------------------------------


def _require_antisymmetric(F: VectorForm) -> None:
    if not F.is_antisymmetric():
        raise ValueError("F must be antisymmetric")


def dotted_wedge(u: Multivector, v: Multivector, F: VectorForm) -> Multivector:
    _require_antisymmetric(F)
    return cmul(u, v, F)


def word(mask: int, B: VectorForm, reverse: bool = False) -> Multivector:
    """Clifford word of the generators of ``mask`` (ascending, or descending)."""
    gens = [Multivector.gen(B.dim, i) for i in indices(mask)]
    if reverse:
        gens.reverse()
    return cmul_all(gens, B)


def _decompose(u: Multivector, image: Callable[[int], Multivector]) -> dict:
    """Coordinates of u in a basis {image(S)} that is unitriangular w.r.t. grade."""
    resid = dict(u.terms)
    coords: dict = {}
    while resid:
        m = max(resid, key=lambda k: (popcount(k), k))
        c = resid[m]
        add_into(coords, m, c)
        for k, d in image(m).terms.items():
            add_into(resid, k, -c * d)
    return coords


def wick_transform(u: Multivector, F: VectorForm, direction: str) -> Multivector:
    """Change between wedge coordinates and dotted-wedge coordinates.

    ``to_dotted`` returns the coefficients of u on the dotted blades
    e_{i1} ∧̇ … ∧̇ e_{ik} (written with ordinary blade names); ``from_dotted``
    reads u as dotted coordinates and expands back into the wedge basis.
    """
    _require_antisymmetric(F)
    _check(F, u.dim)
    if direction == "to_dotted":
        return Multivector._raw(u.dim, _decompose(u, lambda m: word(m, F)))
    if direction == "from_dotted":
        return linear(u, lambda m: word(m, F).terms)
    raise ValueError(f"direction must be to_dotted or from_dotted, got {direction!r}")


def reversion_clifford(u: Multivector, B: VectorForm) -> Multivector:
    """Anti-automorphism of cmul(·,·,B) fixing Id ⊕ V.

    u is written in the basis of ascending Clifford words, each word is
    reversed, and the result is expanded back into the wedge basis.
    """
    _check(B, u.dim)
    coords = _decompose(u, lambda m: word(m, B))
    acc = Multivector(u.dim)
    for m, c in coords.items():
        acc = acc + c * word(m, B, reverse=True)
    return acc


# -- inversion formulas -------------------------------------------------------


def _require_vectors(vectors: Sequence[Multivector]) -> None:
    for x in vectors:
        if not x.is_homogeneous(1):
            raise ValueError("inputs must be grade-1 multivectors")


def clifford_monomial(vectors: Sequence[Multivector], B: VectorForm) -> Multivector:
    """x₁ ∘ x₂ ∘ … ∘ x_k in the wedge basis."""
    _require_vectors(vectors)
    return cmul_all(vectors, B)


def partial_matchings(k: int) -> Iterable[tuple[list[tuple[int, int]], list[int], int]]:
    """All partial matchings of positions 0..k−1 as (pairs, unmatched, sign).

    The sign is the parity of the permutation listing each pair (i < j) in
    turn followed by the unmatched positions in order.
    """

    def rec(pos: list[int]):
        if len(pos) < 2:
            yield [], pos, 1
            return
        first, rest = pos[0], pos[1:]
        # first stays unmatched
        for pairs, free, s in rec(rest):
            # `first` passes an even number of paired slots: no sign
            yield pairs, [first] + free, s
        for idx, j in enumerate(rest):
            remaining = rest[:idx] + rest[idx + 1:]
            for pairs, free, s in rec(remaining):
                # j jumps over idx elements to sit next to first
                yield [(first, j)] + pairs, free, s * (-1) ** idx

    yield from rec(list(range(k)))


def inversion_wedge_from_clifford(vectors: Sequence[Multivector], B: VectorForm) -> Multivector:
    """x₁ ∧ … ∧ x_k assembled from Clifford monomials of sub-words.

    Rota–Stein inversion: every partial matching contributes
    (−1)^{#pairs} · sign · Π B(x_i, x_j) times the Clifford monomial of the
    unmatched vectors.  The result equals the plain wedge of the inputs.
    """
    _require_vectors(vectors)
    dim = B.dim
    acc = Multivector(dim)
    for pairs, free, s in partial_matchings(len(vectors)):
        k: Scalar = s * (-1) ** len(pairs)
        for i, j in pairs:
            k *= B.on_vectors(vectors[i], vectors[j])
            if not k:
                break
        if k:
            acc = acc + k * cmul_all([vectors[i] for i in free], B)
    return acc


def wick_expansion(vectors: Sequence[Multivector], B: VectorForm) -> Multivector:
    """Forward direction: x₁ ∘ … ∘ x_k as a sum over partial matchings of wedges."""
    _require_vectors(vectors)
    acc = Multivector(B.dim)
    for pairs, free, s in partial_matchings(len(vectors)):
        k: Scalar = s
        for i, j in pairs:
            k *= B.on_vectors(vectors[i], vectors[j])
            if not k:
                break
        if k:
            w = Multivector.scalar(B.dim)
            for i in free:
                w = wedge(w, vectors[i])
            acc = acc + k * w
    return acc
