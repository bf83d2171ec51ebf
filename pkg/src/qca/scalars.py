"""Exact rational scalars and the small amount of linear algebra the kernel needs.

Scalars are plain ``int`` or ``fractions.Fraction``.  Integers are kept as
integers wherever possible because most structure constants are 0 or +-1 and
int arithmetic is several times faster than Fraction arithmetic.
"""

from __future__ import annotations

import re
from fractions import Fraction
from typing import Iterable, Sequence, Union

from sympy import QQ
from sympy.polys.matrices import DomainMatrix
from sympy.polys.matrices.exceptions import DMNonInvertibleMatrixError

Scalar = Union[int, Fraction]

_RATIONAL = re.compile(r"^\s*([+-]?\d+)\s*(?:/\s*(\d+))?\s*$")


def norm(c: Scalar) -> Scalar:
    """Collapse an integral Fraction to an int."""
    if isinstance(c, Fraction) and c.denominator == 1:
        return c.numerator
    return c


def to_scalar(x: object) -> Scalar:
    """Coerce ints, Fractions and ``"p/q"`` strings.  Floats are refused."""
    if isinstance(x, bool):
        raise TypeError("booleans are not scalars")
    if isinstance(x, int):
        return x
    if isinstance(x, Fraction):
        return norm(x)
    if isinstance(x, str):
        m = _RATIONAL.match(x)
        if not m:
            raise ValueError(f"not a rational literal: {x!r}")
        num = int(m.group(1))
        den = int(m.group(2)) if m.group(2) else 1
        if den == 0:
            raise ValueError(f"zero denominator in {x!r}")
        return norm(Fraction(num, den))
    if hasattr(x, "numerator") and hasattr(x, "denominator") and not isinstance(x, float):
        return norm(Fraction(int(x.numerator), int(x.denominator)))
    raise TypeError(f"cannot use {type(x).__name__} as an exact scalar")


def fmt_scalar(c: Scalar) -> str:
    c = norm(c)
    if isinstance(c, int):
        return str(c)
    return f"{c.numerator}/{c.denominator}"


# -- linear algebra over QQ ---------------------------------------------------
# Thin wrappers around sympy's DomainMatrix so callers only ever see Fractions.


def _from_qq(x) -> Scalar:
    return norm(Fraction(int(x.numerator), int(x.denominator)))


def _to_qq(x: Scalar):
    x = to_scalar(x)
    if isinstance(x, int):
        return QQ(x)
    return QQ(x.numerator, x.denominator)


def _dm(rows: Sequence[Sequence[Scalar]] | dict, shape: tuple[int, int]) -> DomainMatrix:
    if isinstance(rows, dict):
        data = {i: {j: _to_qq(v) for j, v in r.items() if v} for i, r in rows.items()}
        data = {i: r for i, r in data.items() if r}
        return DomainMatrix(data, shape, QQ)
    return DomainMatrix([[_to_qq(v) for v in r] for r in rows], shape, QQ)


def nullspace(rows: Sequence[Sequence[Scalar]] | dict, ncols: int) -> list[list[Scalar]]:
    """Basis of {x : A x = 0}.  ``rows`` may be dense or a sparse {i: {j: v}} dict."""
    nrows = len(rows) if not isinstance(rows, dict) else (max(rows, default=-1) + 1)
    if nrows == 0:
        return [[1 if i == j else 0 for i in range(ncols)] for j in range(ncols)]
    A = _dm(rows, (nrows, ncols)).to_dense()
    return [[_from_qq(v) for v in row] for row in A.nullspace().to_list()]


def solve(rows: dict, rhs: dict, nrows: int, ncols: int) -> list[Scalar] | None:
    """Solve A x = b exactly.

    Returns None when the system is inconsistent.  When it is
    underdetermined the free variables are set to zero.
    """
    aug = {i: dict(r) for i, r in rows.items()}
    for i, v in rhs.items():
        if v:
            aug.setdefault(i, {})[ncols] = v
    R, pivots = _dm(aug, (nrows, ncols + 1)).rref()
    if ncols in pivots:
        return None
    R = R.to_sdm()
    x: list[Scalar] = [0] * ncols
    for i, p in enumerate(pivots):
        x[p] = _from_qq(R.get(i, {}).get(ncols, QQ(0)))
    return x


def solve_square(rows: dict, rhs: dict, n: int) -> list[Scalar] | None:
    """Solve a square system by LU; None when the matrix is singular."""
    A = _dm(rows, (n, n)).to_dense()
    b = _dm({i: {0: v} for i, v in rhs.items() if v}, (n, 1)).to_dense()
    try:
        x = A.lu_solve(b)
    except DMNonInvertibleMatrixError:
        return None
    return [_from_qq(r[0]) for r in x.to_list()]


def rank(rows: Sequence[Sequence[Scalar]]) -> int:
    if not rows:
        return 0
    return _dm(rows, (len(rows), len(rows[0]))).rank()


def inverse(rows: Sequence[Sequence[Scalar]]) -> list[list[Scalar]] | None:
    """Matrix inverse, or None if singular."""
    n = len(rows)
    A = _dm(rows, (n, n))
    if A.det() == 0:
        return None
    return [[_from_qq(v) for v in row] for row in A.inv().to_list()]


def det(rows: Sequence[Sequence[Scalar]]) -> Scalar:
    n = len(rows)
    if n == 0:
        return 1
    return _from_qq(_dm(rows, (n, n)).det())


def matmul(a: Sequence[Sequence[Scalar]], b: Sequence[Sequence[Scalar]]) -> list[list[Scalar]]:
    bt = list(zip(*b))
    return [[norm(sum(x * y for x, y in zip(row, col))) for col in bt] for row in a]


def dot(a: Iterable[Scalar], b: Iterable[Scalar]) -> Scalar:
    return norm(sum(x * y for x, y in zip(a, b)))
