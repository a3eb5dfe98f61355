"""Smith normal form of integer matrices."""

from __future__ import annotations

from typing import NamedTuple

from .matrix import SemiringMatrix
from .semiring import Z


class SmithForm(NamedTuple):
    divisors: list[int]  # d1 | d2 | ... | dr, all >= 1
    free_rank: int       # rank of the free part of the cokernel


def _identity(n: int) -> list[list[int]]:
    return [[int(i == j) for j in range(n)] for i in range(n)]


def smith_decomposition(m: SemiringMatrix) -> tuple[list[list[int]], list[list[int]], list[list[int]]]:
    """Return ``(U, D, V)`` with ``U . m . V = D`` diagonal and ``U, V`` unimodular.

    Pivots are chosen as the entry of smallest nonzero absolute value in the
    active block, ties broken by row-major position.
    """
    a = [[int(x) for x in m.row(i)] for i in range(m.rows)]
    nr, nc = m.rows, m.cols
    U = _identity(nr)
    V = _identity(nc)

    def swap_rows(i, j):
        a[i], a[j] = a[j], a[i]
        U[i], U[j] = U[j], U[i]

    def swap_cols(i, j):
        for r in a:
            r[i], r[j] = r[j], r[i]
        for r in V:
            r[i], r[j] = r[j], r[i]

    def add_row(src, dst, c):  # row dst += c * row src
        if c:
            a[dst] = [x + c * y for x, y in zip(a[dst], a[src])]
            U[dst] = [x + c * y for x, y in zip(U[dst], U[src])]

    def add_col(src, dst, c):  # col dst += c * col src
        if c:
            for r in a:
                r[dst] += c * r[src]
            for r in V:
                r[dst] += c * r[src]

    t = 0
    while t < min(nr, nc):
        best = None
        for i in range(t, nr):
            for j in range(t, nc):
                v = abs(a[i][j])
                if v and (best is None or v < best[0]):
                    best = (v, i, j)
        if best is None:
            break
        _, pi, pj = best
        swap_rows(t, pi)
        swap_cols(t, pj)
        while True:
            p = a[t][t]
            dirty = False
            for i in range(t + 1, nr):
                q = a[i][t] // p
                add_row(t, i, -q)
                if a[i][t]:
                    dirty = True
            for j in range(t + 1, nc):
                q = a[t][j] // p
                add_col(t, j, -q)
                if a[t][j]:
                    dirty = True
            if dirty:
                # a remainder smaller than the pivot exists; re-pivot within row/col t
                best = None
                for i in range(t, nr):
                    v = abs(a[i][t])
                    if v and (best is None or v < best[0]):
                        best = (v, i, t)
                for j in range(t, nc):
                    v = abs(a[t][j])
                    if v and (best is None or v < best[0]):
                        best = (v, t, j)
                _, pi, pj = best
                swap_rows(t, pi)
                swap_cols(t, pj)
                continue
            bad = None
            for i in range(t + 1, nr):
                for j in range(t + 1, nc):
                    if a[i][j] % p:
                        bad = i
                        break
                if bad is not None:
                    break
            if bad is None:
                break
            add_row(bad, t, 1)
        if a[t][t] < 0:
            a[t] = [-x for x in a[t]]
            U[t] = [-x for x in U[t]]
        t += 1
    return U, a, V


def smith_normal_form(m: SemiringMatrix) -> SmithForm:
    """Invariant factors of an integer matrix and the free rank of its cokernel."""
    _, d, _ = smith_decomposition(m)
    divisors = []
    for i in range(min(m.rows, m.cols)):
        if d[i][i]:
            divisors.append(d[i][i])
    return SmithForm(divisors, m.rows - len(divisors))


def snf_of_rows(rows: list[list[int]]) -> SmithForm:
    return smith_normal_form(SemiringMatrix.from_rows(rows, Z, cols=len(rows[0]) if rows else 0))
