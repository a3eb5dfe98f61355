"""Exact determinants over Z[t] by fraction-free (Bareiss) elimination."""

from __future__ import annotations

from .matrix import DimensionError, SemiringMatrix
from .poly import IntPoly, T
from .semiring import Z_T


class InternalConsistencyError(RuntimeError):
    """An exact division that must succeed did not; indicates a bug."""


def det_poly(m: SemiringMatrix) -> IntPoly:
    if not m.is_square:
        raise DimensionError(f"determinant of a {m.rows}x{m.cols} matrix")
    n = m.rows
    a = [[IntPoly.lift(x) for x in m.row(i)] for i in range(n)]
    if n == 0:
        return IntPoly.const(1)
    sign = 1
    prev = IntPoly.const(1)
    for k in range(n - 1):
        if a[k][k].is_zero():
            swap = next((i for i in range(k + 1, n) if not a[i][k].is_zero()), None)
            if swap is None:
                return IntPoly()
            a[k], a[swap] = a[swap], a[k]
            sign = -sign
        pivot = a[k][k]
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                num = a[i][j] * pivot - a[i][k] * a[k][j]
                try:
                    a[i][j] = num.exact_div(prev)
                except ArithmeticError as exc:
                    raise InternalConsistencyError(f"Bareiss step {k}: {exc}") from exc
            a[i][k] = IntPoly()
        prev = pivot
    d = a[n - 1][n - 1]
    return d if sign > 0 else -d


def identity_minus_t(m: SemiringMatrix) -> SemiringMatrix:
    """``I - t.m`` over Z[t]."""
    if not m.is_square:
        raise DimensionError("I - tM needs a square matrix")
    n = m.rows
    out = []
    for i in range(n):
        for j in range(n):
            e = T * IntPoly.lift(m[i, j])
            out.append((IntPoly.const(1) if i == j else IntPoly()) - e)
    return SemiringMatrix(n, n, out, Z_T)


def t_identity_minus(m: SemiringMatrix) -> SemiringMatrix:
    """``t.I - m`` over Z[t] (characteristic matrix)."""
    if not m.is_square:
        raise DimensionError("tI - M needs a square matrix")
    n = m.rows
    out = []
    for i in range(n):
        for j in range(n):
            out.append((T if i == j else IntPoly()) - IntPoly.lift(m[i, j]))
    return SemiringMatrix(n, n, out, Z_T)


def to_poly_matrix(m: SemiringMatrix) -> SemiringMatrix:
    """Lift an integer or polynomial matrix to Z[t]."""
    return SemiringMatrix(m.rows, m.cols, (IntPoly.lift(x) for x in m.entries), Z_T)
