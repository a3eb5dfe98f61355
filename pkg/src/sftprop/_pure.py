"""Pure-Python hot kernels; the compiled ``_kernels`` module mirrors this API."""

from __future__ import annotations

from itertools import product


def scaled_table(table, unit, max_mult):
    """``out[a][x]`` is ``x`` added to itself ``a`` times in the monoid."""
    size = len(table)
    out = [[unit] * size]
    for a in range(1, max_mult + 1):
        prev = out[-1]
        out.append([table[prev[x]][x] for x in range(size)])
    return out


def count_fixed_points(table, unit, hom, matrix):
    """Number of ``x`` in ``X^n`` with ``hom((M x)_i) == x_i`` for every ``i``."""
    size = len(table)
    n = len(matrix)
    if n == 0:
        return 1
    top = max((a for row in matrix for a in row), default=0)
    sc = scaled_table(table, unit, top)
    terms = [[(j, sc[a]) for j, a in enumerate(row) if a] for row in matrix]
    count = 0
    for x in product(range(size), repeat=n):
        for i in range(n):
            acc = unit
            for j, s in terms[i]:
                acc = table[acc][s[x[j]]]
            if hom[acc] != x[i]:
                break
        else:
            count += 1
    return count


def _vectors(bounds):
    return product(*(range(b + 1) for b in bounds))


def factorizations(a, r, max_entry, limit=0):
    """All ``(R, S)`` over Z_+ with ``R S = a``, inner dimension exactly ``r``.

    Entries are bounded by ``max_entry``; every column of ``R`` and row of ``S``
    is nonzero; the rank-one terms ``(R[:,k], S[k,:])`` appear in
    nondecreasing lexicographic order, which picks one representative per
    permutation of the inner dimension. ``limit > 0`` caps the result count.
    Returns tuples of row tuples, in deterministic depth-first order.
    """
    p = len(a)
    q = len(a[0]) if p else 0
    out = []
    if r == 0:
        if all(x == 0 for row in a for x in row):
            return [(tuple(() for _ in range(p)), ())]
        return []
    rem = [list(row) for row in a]
    us: list[tuple] = []
    vs: list[tuple] = []

    def total():
        return sum(map(sum, rem))

    def rec(k, prev):
        if limit and len(out) >= limit:
            return
        left = r - k
        if left == 0:
            if total() == 0:
                R = tuple(tuple(us[c][i] for c in range(r)) for i in range(p))
                out.append((R, tuple(vs)))
            return
        if total() < left:
            return
        ubounds = [min(max_entry, max(row)) for row in rem]
        for u in _vectors(ubounds):
            if prev is not None and u < prev[0]:
                continue
            if not any(u):
                continue
            vb = []
            for j in range(q):
                b = max_entry
                for i in range(p):
                    if u[i]:
                        b = min(b, rem[i][j] // u[i])
                vb.append(b)
            if not any(vb):
                continue
            same = prev is not None and u == prev[0]
            for v in _vectors(vb):
                if not any(v):
                    continue
                if same and v < prev[1]:
                    continue
                for i in range(p):
                    if u[i]:
                        ri = rem[i]
                        for j in range(q):
                            ri[j] -= u[i] * v[j]
                us.append(u)
                vs.append(v)
                rec(k + 1, (u, v))
                us.pop()
                vs.pop()
                for i in range(p):
                    if u[i]:
                        ri = rem[i]
                        for j in range(q):
                            ri[j] += u[i] * v[j]
                if limit and len(out) >= limit:
                    return

    rec(0, None)
    return out
