"""Exact linear algebra over the rationals.

Matrices are plain row-major lists of lists of :class:`fractions.Fraction`.
Heavy lifting (rank, inverse, row reduction) is delegated to sympy's
``DomainMatrix`` over ``QQ``; conversion happens at the boundary so the rest
of the package only ever sees ``Fraction``.
"""

from __future__ import annotations

import math
from fractions import Fraction
from typing import Sequence

from sympy import QQ
from sympy.polys.matrices import DomainMatrix

Matrix = list[list[Fraction]]


def _to_dm(rows: Sequence[Sequence[Fraction]], ncols: int | None = None) -> DomainMatrix:
    nrows = len(rows)
    if ncols is None:
        ncols = len(rows[0]) if nrows else 0
    data = [[QQ(int(x.numerator), int(x.denominator)) for x in row] for row in rows]
    return DomainMatrix(data, (nrows, ncols), QQ)


def _from_dm(dm: DomainMatrix) -> Matrix:
    return [[Fraction(int(x.numerator), int(x.denominator)) for x in row] for row in dm.to_list()]


def zeros(nrows: int, ncols: int) -> Matrix:
    return [[Fraction(0)] * ncols for _ in range(nrows)]


def identity(n: int) -> Matrix:
    m = zeros(n, n)
    for i in range(n):
        m[i][i] = Fraction(1)
    return m


def shape(m: Matrix, ncols: int | None = None) -> tuple[int, int]:
    if ncols is not None:
        return len(m), ncols
    return len(m), (len(m[0]) if m else 0)


def matmul(a: Matrix, b: Matrix, inner: int | None = None, ncols: int | None = None) -> Matrix:
    """Product ``a @ b``; ``inner``/``ncols`` disambiguate empty operands."""
    n = len(a)
    if inner is None:
        inner = len(b)
    if ncols is None:
        ncols = len(b[0]) if b else 0
    out = zeros(n, ncols)
    for i in range(n):
        row = a[i]
        acc = out[i]
        for k in range(inner):
            x = row[k]
            if x:
                bk = b[k]
                for j in range(ncols):
                    y = bk[j]
                    if y:
                        acc[j] += x * y
    return out


def rank(m: Matrix, ncols: int | None = None) -> int:
    if not m:
        return 0
    return _to_dm(m, ncols).rank()


def inverse(m: Matrix) -> Matrix:
    """Inverse of a square matrix; raises ``ValueError`` when singular."""
    n = len(m)
    if n == 0:
        return []
    if any(len(row) != n for row in m):
        raise ValueError("inverse of a non-square matrix")
    dm = _to_dm(m, n)
    if dm.rank() != n:
        raise ValueError("matrix is singular")
    return _from_dm(dm.inv())


def is_invertible(m: Matrix, ncols: int | None = None) -> bool:
    nrows, nc = shape(m, ncols)
    if nrows != nc:
        return False
    return nrows == 0 or rank(m, nc) == nrows


def nullspace(m: Matrix, ncols: int) -> Matrix:
    """Basis of ``{x : m x = 0}`` as a list of vectors, from the reduced echelon form."""
    if not m:
        return identity(ncols)
    ns = _to_dm(m, ncols).nullspace()
    basis = _from_dm(ns)
    out = []
    for vec in basis:
        # clear denominators; keeps bases readable
        lcm = math.lcm(*(x.denominator for x in vec))
        out.append([x * lcm for x in vec])
    return out


def pivot_rows(m: Matrix, ncols: int) -> list[int]:
    """Indices of a maximal set of linearly independent rows of ``m``."""
    if not m:
        return []
    t = transpose(m, ncols)
    _, pivots = _to_dm(t, len(m)).rref()
    return list(pivots)


def transpose(m: Matrix, ncols: int | None = None) -> Matrix:
    nrows, nc = shape(m, ncols)
    return [[m[i][j] for i in range(nrows)] for j in range(nc)]

