"""Desk-scale fermionic QFT on the Schwinger-source algebra ∧V.

Sources j_1..j_n are the generators e_1..e_n.  Field operators are Clifford
maps built from the graded left derivation ∂_I and left source
multiplication j_L ∧.  The 1/i and i/2 factors of the physics notation are
dropped; everything stays rational.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import product
from typing import Sequence

from .exterior import (
    DimensionError,
    Multivector,
    add_into,
    blade_order,
    blade_sign,
    check_dim,
    indices,
    popcount,
    wedge,
    wedge_all,
)
from .hopf import Endo
from .pairing import VectorForm, cmul_all
from .scalars import Scalar, fmt_scalar, norm, to_scalar

HALF = Fraction(1, 2)


@dataclass(frozen=True)
class QuantForm:
    """P = g + F: symmetric part g quantizes, antisymmetric part F orders."""

    P: VectorForm

    @property
    def dim(self) -> int:
        return self.P.dim

    @property
    def g(self) -> VectorForm:
        return self.P.symmetric_part()

    @property
    def F(self) -> VectorForm:
        return self.P.antisymmetric_part()

    @classmethod
    def index_doubled(cls, dim: int, F: VectorForm | None = None) -> QuantForm:
        """g with 2 g_IJ = δ_{I, n+1−J}, plus an optional antisymmetric F."""
        g = VectorForm.of([[HALF if i + j == dim - 1 else 0 for j in range(dim)] for i in range(dim)])
        if F is None:
            return cls(g)
        if not F.is_antisymmetric():
            raise ValueError("F must be antisymmetric")
        return cls(g + F)


# -- elementary operators on the source algebra --------------------------------


def derivation(I: int, dim: int) -> Endo:
    """Graded left derivation ∂_I: ∂_I(e_I ∧ u) = u for u free of e_I."""
    _check_index(I, dim)
    bit = 1 << (I - 1)

    def col(m: int) -> dict:
        if not m & bit:
            return {}
        # moving e_I to the front passes the lower indices
        s = -1 if popcount(m & (bit - 1)) & 1 else 1
        return {m ^ bit: s}

    return Endo.from_columns(dim, [col(m) for m in blade_order(dim)])


def source_mul(L: int, dim: int) -> Endo:
    """Left multiplication j_L ∧ ·."""
    _check_index(L, dim)
    bit = 1 << (L - 1)

    def col(m: int) -> dict:
        if m & bit:
            return {}
        return {m | bit: blade_sign(bit, m)}

    return Endo.from_columns(dim, [col(m) for m in blade_order(dim)])


def _check_index(I: int, dim: int) -> None:
    if not 1 <= I <= dim:
        raise DimensionError(f"index {I} outside 1..{dim}")


def field_op(I: int, P: QuantForm, side: str = "left") -> Endo:
    """ψ_I = ∂_I + ½ P_IL j_L ∧  (left);  ψ^op_I = ∂_I − ½ P_LI j_L ∧  (right)."""
    n = P.dim
    _check_index(I, n)
    if side not in ("left", "right"):
        raise ValueError("side must be left or right")
    op = derivation(I, n)
    for L in range(1, n + 1):
        c = HALF * P.P(I, L) if side == "left" else -HALF * P.P(L, I)
        if c:
            op = op + source_mul(L, n) * c
    return op


def anticommutator(a: Endo, b: Endo) -> Endo:
    return a @ b + b @ a


# -- vertex monomials -----------------------------------------------------------


def vertex_form(P: QuantForm) -> VectorForm:
    """Effective cliffordization form −P with the diagonal removed."""
    n = P.dim
    return VectorForm.of([[0 if i == j else -P.P.entries[i][j] for j in range(n)] for i in range(n)])


def vertex_monomial(indices_: Sequence[int], P: QuantForm) -> Multivector:
    """ψ_{I1} ∘ … ∘ ψ_{Ik} applied to Id under the vertex form.

    For distinct I, J, K: ψ_I∘ψ_J∘ψ_K = e_IJK − P_IJ e_K − P_JK e_I + P_IK e_J.
    No P_II ever enters, and repeated indices are annihilated.
    """
    n = P.dim
    for I in indices_:
        _check_index(I, n)
    B = vertex_form(P)
    return cmul_all([Multivector.gen(n, I) for I in indices_], B)


def vertex_display(i: int, j: int, k: int, P: QuantForm) -> Multivector:
    """The four-term form e_ijk − P_ij e_k − P_jk e_i − P_ki e_j."""
    n = P.dim
    e = lambda t: Multivector.gen(n, t)  # noqa: E731
    return (wedge_all([e(i), e(j), e(k)], n) - P.P(i, j) * e(k) - P.P(j, k) * e(i) - P.P(k, i) * e(j))


# -- normal forms -------------------------------------------------------------


def d_chain(mask: int, dim: int) -> Endo:
    """∂_B = ∂_{bk} ∘ … ∘ ∂_{b1} for B = {b1 < … < bk}, so that ∂_B e_B = Id."""
    op = Endo.identity(dim)
    for b in indices(mask):
        op = derivation(b, dim) @ op
    return op


def _d_chain_apply(dmask: int, m: int) -> tuple[int, int]:
    """(sign, blade) of ∂_dmask e_m, sign 0 if it vanishes."""
    if dmask & ~m:
        return 0, 0
    s = 1
    for b in indices(dmask):
        bit = 1 << (b - 1)
        if popcount(m & (bit - 1)) & 1:
            s = -s
        m ^= bit
    return s, m


@dataclass(frozen=True)
class NormalForm:
    """Σ c · j_A ∧ ∂_B with all source multiplications left of all derivations."""

    dim: int
    terms: tuple[tuple[Scalar, int, int], ...]

    def __post_init__(self):
        check_dim(self.dim)
        acc: dict = {}
        for c, a, b in self.terms:
            add_into(acc, (a, b), to_scalar(c))
        pos = {m: i for i, m in enumerate(blade_order(self.dim))}
        canon = tuple(sorted(((norm(c), a, b) for (a, b), c in acc.items()), key=lambda t: (pos[t[2]], pos[t[1]])))
        object.__setattr__(self, "terms", canon)

    @classmethod
    def from_endo(cls, op: Endo) -> NormalForm:
        """Unique decomposition, fixed column by column in increasing grade."""
        dim = op.dim
        found: list[tuple[Scalar, int, int]] = []
        for s in blade_order(dim):
            target = dict(op.column(s))
            for c, a, b in found:
                sg, rest = _d_chain_apply(b, s)
                if not sg:
                    continue
                t, m = _wedge(a, rest)
                if t:
                    add_into(target, m, -c * sg * t)
            found.extend((c, a, s) for a, c in target.items())
        return cls(dim, tuple(found))

    def to_endo(self) -> Endo:
        cols = []
        for s in blade_order(self.dim):
            acc: dict = {}
            for c, a, b in self.terms:
                sg, rest = _d_chain_apply(b, s)
                if not sg:
                    continue
                t, m = _wedge(a, rest)
                if t:
                    add_into(acc, m, c * sg * t)
            cols.append(acc)
        return Endo.from_columns(self.dim, cols)

    def by_pattern(self) -> dict[tuple[int, int], list[tuple[Scalar, int, int]]]:
        """Group terms by (number of j's, number of ∂'s)."""
        out: dict = {}
        for t in self.terms:
            out.setdefault((popcount(t[1]), popcount(t[2])), []).append(t)
        return out

    def __len__(self) -> int:
        return len(self.terms)

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        for c, a, b in self.terms:
            js = "".join(f"j{i}" for i in indices(a))
            ds = "".join(f"d{i}" for i in indices(b))
            body = " ".join(x for x in (js, ds) if x) or "1"
            parts.append(f"{fmt_scalar(c)}*{body}" if body != "1" else fmt_scalar(c))
        return " + ".join(parts)


def _wedge(a: int, b: int) -> tuple[int, int]:
    if a & b:
        return 0, 0
    return blade_sign(a, b), a | b


# -- functional Hamiltonians ----------------------------------------------------


@dataclass(frozen=True)
class HamTerm:
    """Σ c[I1]…[Ik] · ψ_I1 … ψ_Ik with a dense coefficient tensor over 1..n."""

    degree: int
    coeffs: tuple

    @classmethod
    def of(cls, degree: int, nested) -> HamTerm:
        def freeze(x, depth):
            if depth == 0:
                return to_scalar(x)
            return tuple(freeze(y, depth - 1) for y in x)

        return cls(degree, freeze(nested, degree))

    def entries(self, dim: int):
        for idx in product(range(1, dim + 1), repeat=self.degree):
            c = self.coeffs
            try:
                for i in idx:
                    c = c[i - 1]
            except (IndexError, TypeError):
                raise DimensionError(f"coefficient tensor does not cover index range 1..{dim}") from None
            if c:
                yield idx, c

    def check(self, dim: int) -> None:
        def walk(x, depth):
            if depth == 0:
                return
            if not isinstance(x, tuple) or len(x) != dim:
                raise DimensionError(f"coefficient tensor must have shape {dim}^{self.degree}")
            for y in x:
                walk(y, depth - 1)

        walk(self.coeffs, self.degree)


def substitute(terms: Sequence[HamTerm], P: QuantForm, side: str) -> Endo:
    """H[ψ] (side=left) or H[ψ^op] (side=right) as an operator, same index order."""
    n = P.dim
    ops = {I: field_op(I, P, side) for I in range(1, n + 1)}
    total = Endo.zero(n)
    for t in terms:
        t.check(n)
        for idx, c in t.entries(n):
            op = Endo.identity(n)
            for I in idx:
                op = op @ ops[I]
            total = total + op * c
    return total


def functional_hamiltonian(terms: Sequence[HamTerm], P: QuantForm) -> NormalForm:
    """H[j, ∂]^P = H[ψ^op] − H[ψ], normal ordered."""
    return NormalForm.from_endo(substitute(terms, P, "right") - substitute(terms, P, "left"))


# -- time and normal ordering ---------------------------------------------------


def wedge_exp(F: VectorForm, sign: int = 1) -> Multivector:
    """exp∧(sign · ½ F_IJ j_I ∧ j_J) = exp∧(sign · Σ_{I<J} F_IJ e_IJ); terminates by nilpotency."""
    n = F.dim
    x = Multivector(n, {(1 << i) | (1 << j): sign * F.entries[i][j] for i in range(n) for j in range(i + 1, n)})
    acc = Multivector.scalar(n)
    term = Multivector.scalar(n)
    k = 1
    while True:
        term = wedge(term, x) * Fraction(1, k)
        if not term:
            return acc
        acc = acc + term
        k += 1


def ordering_transform(u: Multivector, F: VectorForm, direction: str) -> Multivector:
    """N = exp∧(+½F jj) ∧ T and T = exp∧(−½F jj) ∧ N."""
    if not F.is_antisymmetric():
        raise ValueError("F must be antisymmetric")
    if F.dim != u.dim:
        raise DimensionError("dimension mismatch")
    if direction == "T_to_N":
        return wedge(wedge_exp(F, 1), u)
    if direction == "N_to_T":
        return wedge(wedge_exp(F, -1), u)
    raise ValueError(f"direction must be T_to_N or N_to_T, got {direction!r}")


# -- vacuum states --------------------------------------------------------------


def expectation(word: Sequence[int], B: VectorForm) -> Scalar:
    """ε(e_{w1} ∘ … ∘ e_{wk}): the vacuum value of an operator word."""
    n = B.dim
    return cmul_all([Multivector.gen(n, i) for i in word], B).coeff(0)


def u1_form(nu: Scalar) -> VectorForm:
    nu = to_scalar(nu)
    return VectorForm.of([[0, nu], [1 - nu, 0]])


def u2_form(r: Scalar, s: Scalar, q: Scalar, t: Scalar, u: Scalar, m: Scalar) -> VectorForm:
    """4×4 B on (a1, a2, a2†, a1†) = (e1, e2, e3, e4)."""
    r, s, q, t, u, m = (to_scalar(x) for x in (r, s, q, t, u, m))
    return VectorForm.of([
        [0, u, q, r],
        [-u, 0, s, t],
        [-q, 1 - s, 0, m],
        [1 - r, -t, -m, 0],
    ])


# annihilators and creators in the doubled index set
A1, A2, A2D, A1D = 1, 2, 3, 4
_DAG = {A1: A1D, A2: A2D}


@dataclass(frozen=True)
class U2Record:
    nu: Scalar
    w: Scalar
    F: tuple[tuple[Scalar, Scalar], tuple[Scalar, Scalar]]
    positive: bool
    boundary: bool
    quasifree: bool


def positive_state(nu: Scalar, w: Scalar) -> bool:
    """Closed positivity triangle 0 ≤ w ≤ ν ≤ 1, 2ν − 1 ≤ w (vertices (0,0), (1,1), (½,0))."""
    return 0 <= w <= nu <= 1 and 2 * nu - 1 <= w


def positive_interior(nu: Scalar, w: Scalar) -> bool:
    return 0 < w < nu < 1 and 2 * nu - 1 < w


def u2_analysis(r: Scalar, s: Scalar, q: Scalar, t: Scalar, u: Scalar, m: Scalar) -> U2Record:
    r, s = to_scalar(r), to_scalar(s)
    if r != s:
        raise ValueError("U(2) invariance needs r == s")
    B = u2_form(r, s, q, t, u, m)
    nu = expectation([A1, A1D], B)
    nu2 = expectation([A2, A2D], B)
    assert nu == nu2
    w = expectation([A1, A2, A2D, A1D], B)

    def prop(i: int, j: int) -> Scalar:
        # diagonal: ½⟨[a_i†, a_i]⟩, off-diagonal: ½⟨[a_i, a_j†]⟩
        if i == j:
            return norm(HALF * (expectation([_DAG[i], i], B) - expectation([i, _DAG[i]], B)))
        return norm(HALF * (expectation([i, _DAG[j]], B) - expectation([_DAG[j], i], B)))

    F = ((prop(1, 1), prop(1, 2)), (prop(2, 1), prop(2, 2)))
    pos = positive_state(nu, w)
    return U2Record(nu=nu, w=w, F=F, positive=pos, boundary=pos and not positive_interior(nu, w),
                    quasifree=(w == nu * nu))

