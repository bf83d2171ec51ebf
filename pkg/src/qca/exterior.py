"""Graßmann algebra and co-gebra on bitmask blades.

Generator ``e_k`` is bit ``k-1``; a blade is the int whose set bits are its
indices.  ``Id`` is mask 0.
"""

from __future__ import annotations

import re
from fractions import Fraction
from functools import lru_cache
from types import MappingProxyType
from typing import Callable, Iterable, Iterator, Mapping

from .scalars import Scalar, fmt_scalar, norm, to_scalar

MAX_DIM = 9


class DimensionError(ValueError):
    pass


# -- blades -------------------------------------------------------------------


def popcount(m: int) -> int:
    return bin(m).count("1")


def blade_sign(a: int, b: int) -> int:
    """Sign of sorting the concatenation of index sets ``a`` then ``b``.

    ``a`` and ``b`` must be disjoint; each pair (i in a, j in b, i > j) is one
    transposition.
    """
    a >>= 1
    n = 0
    while a:
        n += popcount(a & b)
        a >>= 1
    return -1 if n & 1 else 1


def wedge_blades(a: int, b: int) -> tuple[int, int]:
    """(sign, mask) of e_a ∧ e_b; sign 0 when they share an index."""
    if a & b:
        return 0, 0
    return blade_sign(a, b), a | b


def indices(mask: int) -> tuple[int, ...]:
    out = []
    k = 1
    while mask:
        if mask & 1:
            out.append(k)
        mask >>= 1
        k += 1
    return tuple(out)


def mask_of(idx: Iterable[int]) -> tuple[int, int]:
    """(sign, mask) of the wedge of generators in the given order."""
    sign, mask = 1, 0
    for i in idx:
        if i < 1:
            raise ValueError(f"generator index must be >= 1, got {i}")
        s, mask = wedge_blades(mask, 1 << (i - 1))
        if s == 0:
            return 0, 0
        sign *= s
    return sign, mask


def blade_name(mask: int) -> str:
    if mask == 0:
        return "Id"
    return "w".join(f"e{i}" for i in indices(mask))


_BLADE = re.compile(r"^e(\d)((?:we\d)*)$")


def parse_blade(name: str) -> tuple[int, int]:
    """(sign, mask) for names like ``Id``, ``e3`` or ``e1we2we5``."""
    if name == "Id":
        return 1, 0
    m = _BLADE.match(name)
    if not m:
        raise ValueError(f"not a blade name: {name!r}")
    idx = [int(p) for p in re.findall(r"\d", name)]
    return mask_of(idx)


@lru_cache(maxsize=None)
def blade_order(dim: int) -> tuple[int, ...]:
    """Graded-lexicographic order: Id, e1, …, en, e1we2, …, top."""
    check_dim(dim)
    return tuple(sorted(range(1 << dim), key=lambda m: (popcount(m), indices(m))))


@lru_cache(maxsize=None)
def blade_position(dim: int) -> Mapping[int, int]:
    return MappingProxyType({m: i for i, m in enumerate(blade_order(dim))})


@lru_cache(maxsize=None)
def splits(mask: int) -> tuple[tuple[int, int, int], ...]:
    """All ordered bipartitions (m1, m2, sign) of a blade, i.e. its Sweedler terms."""
    out = []
    sub = mask
    while True:
        rest = mask ^ sub
        out.append((sub, rest, blade_sign(sub, rest)))
        if sub == 0:
            break
        sub = (sub - 1) & mask
    out.sort(key=lambda t: (popcount(t[0]), indices(t[0])))
    return tuple(out)


def check_dim(dim: int) -> None:
    if not isinstance(dim, int) or not 0 <= dim <= MAX_DIM:
        raise DimensionError(f"dim must be in 0..{MAX_DIM}, got {dim!r}")


# -- sparse dict helpers used by every module ---------------------------------
# A "terms" dict maps blade masks (or tuples of masks) to nonzero scalars.


def add_into(acc: dict, key, c: Scalar) -> None:
    v = acc.get(key, 0) + c
    if v:
        acc[key] = v
    else:
        acc.pop(key, None)


def clean(terms: Mapping) -> dict:
    return {k: norm(v) for k, v in terms.items() if v}


# -- Multivector --------------------------------------------------------------


class Multivector:
    """Sparse element of ∧V with exact coefficients.  Treated as immutable."""

    __slots__ = ("dim", "_t")

    def __init__(self, dim: int, terms: Mapping[int, Scalar] | None = None):
        check_dim(dim)
        self.dim = dim
        t = {}
        top = 1 << dim
        for m, c in (terms or {}).items():
            if not 0 <= m < top:
                raise DimensionError(f"blade {m:#b} exceeds dim {dim}")
            c = to_scalar(c)
            if c:
                t[m] = c
        self._t = t

    @classmethod
    def _raw(cls, dim: int, terms: dict) -> Multivector:
        # trusted constructor for kernel results
        mv = object.__new__(cls)
        mv.dim = dim
        mv._t = {m: norm(c) for m, c in terms.items() if c}
        return mv

    @classmethod
    def scalar(cls, dim: int, c: Scalar = 1) -> Multivector:
        return cls(dim, {0: c})

    @classmethod
    def blade(cls, dim: int, mask: int, c: Scalar = 1) -> Multivector:
        return cls(dim, {mask: c})

    @classmethod
    def gen(cls, dim: int, i: int, c: Scalar = 1) -> Multivector:
        if not 1 <= i <= dim:
            raise DimensionError(f"generator e{i} outside dim {dim}")
        return cls(dim, {1 << (i - 1): c})

    @classmethod
    def from_name(cls, dim: int, name: str, c: Scalar = 1) -> Multivector:
        s, m = parse_blade(name)
        return cls(dim, {m: s * to_scalar(c)})

    @classmethod
    def vector(cls, dim: int, coeffs: Iterable[Scalar]) -> Multivector:
        return cls(dim, {1 << i: c for i, c in enumerate(coeffs)})

    @property
    def terms(self) -> Mapping[int, Scalar]:
        return MappingProxyType(self._t)

    def __iter__(self) -> Iterator[tuple[int, Scalar]]:
        return iter(sorted(self._t.items(), key=lambda kv: blade_position(self.dim)[kv[0]]))

    def __len__(self) -> int:
        return len(self._t)

    def __bool__(self) -> bool:
        return bool(self._t)

    def coeff(self, mask: int) -> Scalar:
        return self._t.get(mask, 0)

    def grades(self) -> set[int]:
        return {popcount(m) for m in self._t}

    def is_homogeneous(self, r: int | None = None) -> bool:
        g = self.grades()
        if r is None:
            return len(g) <= 1
        return g <= {r}

    def _same(self, other: Multivector) -> None:
        if not isinstance(other, Multivector):
            raise TypeError(f"expected Multivector, got {type(other).__name__}")
        if other.dim != self.dim:
            raise DimensionError(f"dimension mismatch: {self.dim} vs {other.dim}")

    def __add__(self, other: Multivector) -> Multivector:
        self._same(other)
        t = dict(self._t)
        for m, c in other._t.items():
            add_into(t, m, c)
        return Multivector._raw(self.dim, t)

    def __sub__(self, other: Multivector) -> Multivector:
        return self + (-other)

    def __neg__(self) -> Multivector:
        return Multivector._raw(self.dim, {m: -c for m, c in self._t.items()})

    def __mul__(self, k: Scalar) -> Multivector:
        if isinstance(k, Multivector):
            return NotImplemented
        k = to_scalar(k)
        return Multivector._raw(self.dim, {m: c * k for m, c in self._t.items()})

    __rmul__ = __mul__

    def __eq__(self, other: object) -> bool:
        if isinstance(other, Multivector):
            return self.dim == other.dim and self._t == other._t
        if isinstance(other, (int, Fraction)) and not isinstance(other, bool):
            return self._t == ({0: other} if other else {})
        return NotImplemented

    __hash__ = None  # type: ignore[assignment]

    def __repr__(self) -> str:
        return f"Multivector({self.dim}, {format_terms(self)})"

    def __str__(self) -> str:
        return format_terms(self)


def format_terms(u: Multivector) -> str:
    """Text form that the expression parser reads back, e.g. ``3/2*e1we2 - e3 + 4*Id``."""
    parts = []
    for m, c in u:
        name = blade_name(m)
        neg = c < 0
        a = -c if neg else c
        body = name if a == 1 else f"{fmt_scalar(a)}*{name}"
        parts.append(("- " if neg else "+ ") + body)
    if not parts:
        return "0"
    s = " ".join(parts)
    return s[2:] if s.startswith("+ ") else "-" + s[2:]


def basis(dim: int) -> list[Multivector]:
    return [Multivector._raw(dim, {m: 1}) for m in blade_order(dim)]


def bilinear(u: Multivector, v: Multivector, fn: Callable[[int, int], Mapping[int, Scalar]]) -> Multivector:
    """Extend a blade-level product ``fn(a, b) -> terms`` bilinearly."""
    u._same(v)
    acc: dict = {}
    for a, ca in u._t.items():
        for b, cb in v._t.items():
            k = ca * cb
            for m, c in fn(a, b).items():
                add_into(acc, m, k * c)
    return Multivector._raw(u.dim, acc)


def linear(u: Multivector, fn: Callable[[int], Mapping[int, Scalar]]) -> Multivector:
    acc: dict = {}
    for a, ca in u._t.items():
        for m, c in fn(a).items():
            add_into(acc, m, ca * c)
    return Multivector._raw(u.dim, acc)


# -- products and involutions -------------------------------------------------


def _wedge_fn(a: int, b: int) -> dict:
    s, m = wedge_blades(a, b)
    return {m: s} if s else {}


def wedge(u: Multivector, v: Multivector) -> Multivector:
    return bilinear(u, v, _wedge_fn)


def wedge_all(items: Iterable[Multivector], dim: int) -> Multivector:
    acc = Multivector.scalar(dim)
    for x in items:
        acc = wedge(acc, x)
    return acc


def grade_project(u: Multivector, r: int) -> Multivector:
    if not 0 <= r <= u.dim:
        raise ValueError(f"grade {r} outside 0..{u.dim}")
    return Multivector._raw(u.dim, {m: c for m, c in u._t.items() if popcount(m) == r})


def grade_involution(u: Multivector) -> Multivector:
    return Multivector._raw(u.dim, {m: -c if popcount(m) & 1 else c for m, c in u._t.items()})


def reversion_sign(mask: int) -> int:
    k = popcount(mask)
    return -1 if (k * (k - 1) // 2) & 1 else 1


def reversion_wedge(u: Multivector) -> Multivector:
    return Multivector._raw(u.dim, {m: reversion_sign(m) * c for m, c in u._t.items()})


def counit(u: Multivector) -> Scalar:
    return u.coeff(0)


def top_blade(dim: int) -> int:
    return (1 << dim) - 1


# -- TensorPoly ---------------------------------------------------------------


class TensorPoly:
    """Formal sum of scalar-weighted blade tuples of a fixed rank."""

    __slots__ = ("dim", "rank", "_t")

    def __init__(self, dim: int, rank: int, terms: Mapping[tuple[int, ...], Scalar] | None = None):
        check_dim(dim)
        if rank < 1:
            raise ValueError("rank must be >= 1")
        self.dim = dim
        self.rank = rank
        top = 1 << dim
        t = {}
        for key, c in (terms or {}).items():
            key = tuple(key)
            if len(key) != rank:
                raise ValueError(f"tuple {key} does not have rank {rank}")
            if any(not 0 <= m < top for m in key):
                raise DimensionError(f"blade in {key} exceeds dim {dim}")
            c = to_scalar(c)
            if c:
                t[key] = c
        self._t = t

    @classmethod
    def _raw(cls, dim: int, rank: int, terms: dict) -> TensorPoly:
        tp = object.__new__(cls)
        tp.dim, tp.rank = dim, rank
        tp._t = {k: norm(c) for k, c in terms.items() if c}
        return tp

    @property
    def terms(self) -> Mapping[tuple[int, ...], Scalar]:
        return MappingProxyType(self._t)

    def __iter__(self) -> Iterator[tuple[tuple[int, ...], Scalar]]:
        pos = blade_position(self.dim)
        return iter(sorted(self._t.items(), key=lambda kv: tuple(pos[m] for m in kv[0])))

    def __len__(self) -> int:
        return len(self._t)

    def coeff(self, key: tuple[int, ...]) -> Scalar:
        return self._t.get(tuple(key), 0)

    def _same(self, other: TensorPoly) -> None:
        if not isinstance(other, TensorPoly):
            raise TypeError(f"expected TensorPoly, got {type(other).__name__}")
        if (other.dim, other.rank) != (self.dim, self.rank):
            raise DimensionError("tensor shape mismatch")

    def __add__(self, other: TensorPoly) -> TensorPoly:
        self._same(other)
        t = dict(self._t)
        for k, c in other._t.items():
            add_into(t, k, c)
        return TensorPoly._raw(self.dim, self.rank, t)

    def __neg__(self) -> TensorPoly:
        return TensorPoly._raw(self.dim, self.rank, {k: -c for k, c in self._t.items()})

    def __sub__(self, other: TensorPoly) -> TensorPoly:
        return self + (-other)

    def __mul__(self, k: Scalar) -> TensorPoly:
        if isinstance(k, (Multivector, TensorPoly)):
            return NotImplemented
        k = to_scalar(k)
        return TensorPoly._raw(self.dim, self.rank, {t: c * k for t, c in self._t.items()})

    __rmul__ = __mul__

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, TensorPoly):
            return NotImplemented
        return (self.dim, self.rank, self._t) == (other.dim, other.rank, other._t)

    __hash__ = None  # type: ignore[assignment]

    def __str__(self) -> str:
        parts = []
        for key, c in self:
            body = "&t(" + ",".join(blade_name(m) for m in key) + ")"
            neg = c < 0
            a = -c if neg else c
            if a != 1:
                body = f"{fmt_scalar(a)}*{body}"
            parts.append(("- " if neg else "+ ") + body)
        if not parts:
            return "0"
        s = " ".join(parts)
        return s[2:] if s.startswith("+ ") else "-" + s[2:]

    __repr__ = __str__


def tensor(*items: Multivector) -> TensorPoly:
    """Plain tensor product u ⊗ v ⊗ …."""
    dim = items[0].dim
    acc: dict = {(): 1}
    for x in items:
        if x.dim != dim:
            raise DimensionError("dimension mismatch")
        nxt: dict = {}
        for k, c in acc.items():
            for m, d in x._t.items():
                nxt[k + (m,)] = c * d
        acc = nxt
    return TensorPoly._raw(dim, len(items), acc)


def apply_legs(t: TensorPoly, maps: list[Callable[[int], Mapping[int, Scalar]] | None]) -> TensorPoly:
    """Apply a blade-level linear map on each leg (None = identity)."""
    acc: dict = {}
    for key, c in t._t.items():
        partial = {(): c}
        for m, f in zip(key, maps):
            img = {m: 1} if f is None else f(m)
            nxt: dict = {}
            for k, d in partial.items():
                for mm, e in img.items():
                    add_into(nxt, k + (mm,), d * e)
            partial = nxt
        for k, d in partial.items():
            add_into(acc, k, d)
    return TensorPoly._raw(t.dim, t.rank, acc)


def contract_legs(t: TensorPoly, fn: Callable[..., Mapping[int, Scalar]]) -> Multivector:
    """Collapse every tuple with a multilinear blade function into ∧V."""
    acc: dict = {}
    for key, c in t._t.items():
        for m, d in fn(*key).items():
            add_into(acc, m, c * d)
    return Multivector._raw(t.dim, acc)


def graded_tensor_mul(s: TensorPoly, t: TensorPoly) -> TensorPoly:
    """(a⊗b)(c⊗d) = (−1)^{|b||c|} (a∧c)⊗(b∧d), the product of ∧V ⊗ ∧V."""
    s._same(t)
    if s.rank != 2:
        raise ValueError("graded tensor product implemented for rank 2")
    acc: dict = {}
    for (a, b), x in s._t.items():
        for (c, d), y in t._t.items():
            s1, m1 = wedge_blades(a, c)
            s2, m2 = wedge_blades(b, d)
            if s1 and s2:
                sw = -1 if (popcount(b) * popcount(c)) & 1 else 1
                add_into(acc, (m1, m2), sw * s1 * s2 * x * y)
    return TensorPoly._raw(s.dim, 2, acc)


def graded_switch(t: TensorPoly) -> TensorPoly:
    """τ̂(a⊗b) = (−1)^{|a||b|} b⊗a."""
    acc: dict = {}
    for (a, b), c in t._t.items():
        sw = -1 if (popcount(a) * popcount(b)) & 1 else 1
        add_into(acc, (b, a), sw * c)
    return TensorPoly._raw(t.dim, 2, acc)


# -- Graßmann co-product ------------------------------------------------------


def _gco_fn(mask: int) -> dict:
    return {(m1, m2): s for m1, m2, s in splits(mask)}


def gco(u: Multivector) -> TensorPoly:
    acc: dict = {}
    for m, c in u._t.items():
        for key, s in _gco_fn(m).items():
            add_into(acc, key, s * c)
    return TensorPoly._raw(u.dim, 2, acc)


def gco_tensor(t: TensorPoly, leg: int) -> TensorPoly:
    """Apply gco on one leg of a tensor, raising the rank by one."""
    acc: dict = {}
    for key, c in t._t.items():
        for m1, m2, s in splits(key[leg]):
            add_into(acc, key[:leg] + (m1, m2) + key[leg + 1:], s * c)
    return TensorPoly._raw(t.dim, t.rank + 1, acc)
