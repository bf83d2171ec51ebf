"""Graßmann–Cayley layer: Peano bracket, meet, Ergänzung and Lotze duality.

The bracket is μ∘∧ where μ, the unique Graßmann integral, reads off the
coefficient of the top blade e1w…wn.
"""

from __future__ import annotations

from typing import Sequence

from .exterior import (
    Multivector,
    TensorPoly,
    add_into,
    bilinear,
    blade_order,
    blade_sign,
    linear,
    popcount,
    splits,
    top_blade,
    wedge,
)
from .scalars import Scalar


def integral(u: Multivector) -> Scalar:
    """μ: the coefficient of the top blade."""
    return u.coeff(top_blade(u.dim))


def bracket(*args: Multivector) -> Scalar:
    if len(args) == 1 and isinstance(args[0], (list, tuple)):
        args = tuple(args[0])
    if not args:
        raise ValueError("bracket needs at least one argument")
    acc = args[0]
    for x in args[1:]:
        acc = wedge(acc, x)
    return integral(acc)


def _mu_wedge(a: int, b: int, top: int) -> int:
    """μ(e_a ∧ e_b) for blades."""
    if a & b or (a | b) != top:
        return 0
    return blade_sign(a, b)


def meet(x: Multivector, y: Multivector) -> Multivector:
    """x ∨ y = Σ x₍₁₎ · μ(y ∧ x₍₂₎)."""
    top = top_blade(x.dim)

    def fn(a: int, b: int) -> dict:
        out: dict = {}
        for a1, a2, s in splits(a):
            v = _mu_wedge(b, a2, top)
            if v:
                add_into(out, a1, s * v)
        return out

    return bilinear(x, y, fn)


def vee(x: Multivector, y: Multivector) -> Multivector:
    """x ∨ y = Σ μ(y₍₁₎ ∧ x) · y₍₂₎."""
    top = top_blade(x.dim)

    def fn(a: int, b: int) -> dict:
        out: dict = {}
        for b1, b2, s in splits(b):
            v = _mu_wedge(b1, a, top)
            if v:
                add_into(out, b2, s * v)
        return out

    return bilinear(x, y, fn)


def erganzung(u: Multivector) -> Multivector:
    """Graßmann complement |A with bracket(A ∧ |A) = 1 on unit blades."""
    top = top_blade(u.dim)
    return linear(u, lambda a: {top ^ a: blade_sign(a, top ^ a)})


def erganzung_inverse(u: Multivector) -> Multivector:
    top = top_blade(u.dim)
    # |(e_c) = sign(c, b)·e_b with c = top ^ b
    return linear(u, lambda b: {top ^ b: blade_sign(top ^ b, b)})


def meet_classical(x: Multivector, y: Multivector, orientation: int = 1) -> Multivector:
    """|(A ∨ B) := |A ∧ |B, i.e. A ∨ B = |⁻¹(|A ∧ |B), times ``orientation``.

    With orientation +1 this is the complement-based meet; the Hopf meet of
    this module differs from it by a sign per grade pair, see meet_sign_table.
    """
    if orientation not in (1, -1):
        raise ValueError("orientation must be +1 or -1")
    return orientation * erganzung_inverse(wedge(erganzung(x), erganzung(y)))


def meet_sign_table(dim: int) -> dict[tuple[int, int], int]:
    """Sign s with meet == s·meet_classical per (grade x, grade y), over all blade pairs.

    Raises if a grade pair is not governed by a single sign.
    """
    table: dict[tuple[int, int], int] = {}
    for a in blade_order(dim):
        for b in blade_order(dim):
            x, y = Multivector._raw(dim, {a: 1}), Multivector._raw(dim, {b: 1})
            h, c = meet(x, y), meet_classical(x, y)
            if not h and not c:
                continue
            if h == c:
                s = 1
            elif h == -c:
                s = -1
            else:
                raise AssertionError(f"meet and meet_classical disagree beyond sign on {a:b}, {b:b}")
            key = (popcount(a), popcount(b))
            if table.setdefault(key, s) != s:
                raise AssertionError(f"sign not constant on grade pair {key}")
    return table


# -- meet co-product and Lotze duality ----------------------------------------


def meet_coproduct(x: Multivector) -> TensorPoly:
    """Δ_∨ as the transpose of the meet's structure constants.

    The coefficient of e_A ⊗ e_B in Δ_∨(e_S) is the e_S-coefficient of
    e_A ∨ e_B.  Its counit is μ, dual to the meet unit e1w…wn.
    """
    dim = x.dim
    table = _meet_table(dim)
    acc: dict = {}
    for s, c in x.terms.items():
        for key, d in table.get(s, {}).items():
            add_into(acc, key, c * d)
    return TensorPoly._raw(dim, 2, acc)


_MEET_TABLES: dict[int, dict] = {}


def _meet_table(dim: int) -> dict:
    hit = _MEET_TABLES.get(dim)
    if hit is None:
        hit = {}
        for a in blade_order(dim):
            for b in blade_order(dim):
                m = meet(Multivector._raw(dim, {a: 1}), Multivector._raw(dim, {b: 1}))
                for s, c in m.terms.items():
                    hit.setdefault(s, {})[(a, b)] = c
        _MEET_TABLES[dim] = hit
    return hit


def pairing_dual(mask: int, dim: int) -> tuple[int, int]:
    """(sign, blade) d with μ(d ∧ e_mask) = 1, the dual basis for ⟨a,b⟩ = μ(a∧b)."""
    top = top_blade(dim)
    c = top ^ mask
    return blade_sign(c, mask), c


def lotze_product(x: Multivector, y: Multivector) -> Multivector:
    """Product dual to Δ_∨ through the pairing ⟨a, b⟩ = μ(a ∧ b).

    ⟨x ∧′ y, z⟩ is fixed as Σ ⟨x, z₍₂₎⟩⟨y, z₍₁₎⟩ over Δ_∨(z), the same
    crossed leg order as the Laplace rule for pairings.  Lotze's theorem says
    the result is the wedge again; the uncrossed order gives the opposite
    wedge y ∧ x instead.
    """
    dim = x.dim
    top = top_blade(dim)
    table = _meet_table(dim)

    def fn(a: int, b: int) -> dict:
        out: dict = {}
        for z, legs in table.items():
            v = 0
            for (z1, z2), c in legs.items():
                p = _mu_wedge(a, z2, top) * _mu_wedge(b, z1, top)
                if p:
                    v += c * p
            if v:
                # expand on the basis dual to ⟨·, e_z⟩
                s, d = pairing_dual(z, dim)
                add_into(out, d, s * v)
        return out

    return bilinear(x, y, fn)


def straightening_holds(a: Multivector, b: Multivector, c: Multivector) -> bool:
    """μ((a∨b) ∧ c) == μ(a ∧ (b∨c))."""
    return integral(wedge(meet(a, b), c)) == integral(wedge(a, meet(b, c)))


def join(x: Multivector, y: Multivector) -> Multivector:
    return wedge(x, y)


def extensor(vectors: Sequence[Multivector]) -> Multivector:
    acc = Multivector.scalar(vectors[0].dim)
    for v in vectors:
        acc = wedge(acc, v)
    return acc

