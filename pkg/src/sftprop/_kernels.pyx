# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled hot kernels. Same API and results as ``sftprop._pure``."""

from libc.stdlib cimport malloc, free

cdef enum:
    MAXD = 16


def count_fixed_points(table, unit, hom, matrix):
    cdef Py_ssize_t size = len(table)
    cdef Py_ssize_t n = len(matrix)
    cdef Py_ssize_t i, j, a, x, top, k
    cdef long acc, cnt = 0
    if n == 0:
        return 1
    if n > 64:
        raise ValueError("matrix too large for the compiled kernel")
    top = 0
    for row in matrix:
        for v in row:
            if v > top:
                top = v
    cdef long *tab = <long *> malloc(size * size * sizeof(long))
    cdef long *hm = <long *> malloc(size * sizeof(long))
    cdef long *sc = <long *> malloc((top + 1) * size * sizeof(long))
    cdef long *mat = <long *> malloc(n * n * sizeof(long))
    cdef long *xs = <long *> malloc(n * sizeof(long))
    if not tab or not hm or not sc or not mat or not xs:
        free(tab); free(hm); free(sc); free(mat); free(xs)
        raise MemoryError()
    try:
        for i in range(size):
            hm[i] = hom[i]
            for j in range(size):
                tab[i * size + j] = table[i][j]
        for x in range(size):
            sc[x] = unit
        for a in range(1, top + 1):
            for x in range(size):
                sc[a * size + x] = tab[sc[(a - 1) * size + x] * size + x]
        for i in range(n):
            xs[i] = 0
            for j in range(n):
                mat[i * n + j] = matrix[i][j]
        while True:
            for i in range(n):
                acc = unit
                for j in range(n):
                    a = mat[i * n + j]
                    if a:
                        acc = tab[acc * size + sc[a * size + xs[j]]]
                if hm[acc] != xs[i]:
                    break
            else:
                cnt += 1
            # odometer, last wire least significant
            k = n - 1
            while k >= 0:
                xs[k] += 1
                if xs[k] < size:
                    break
                xs[k] = 0
                k -= 1
            if k < 0:
                break
        return cnt
    finally:
        free(tab); free(hm); free(sc); free(mat); free(xs)


cdef struct Ctx:
    int p, q, r, maxe, limit
    long rem[MAXD * MAXD]
    long us[MAXD * MAXD]   # term k column of R at us[k*MAXD + i]
    long vs[MAXD * MAXD]   # term k row of S at vs[k*MAXD + j]


cdef int _lex_cmp(long *a, long *b, int n):
    cdef int i
    for i in range(n):
        if a[i] < b[i]:
            return -1
        if a[i] > b[i]:
            return 1
    return 0


cdef long _total(Ctx *c):
    cdef long s = 0
    cdef int i, j
    for i in range(c.p):
        for j in range(c.q):
            s += c.rem[i * MAXD + j]
    return s


cdef int _next_vec(long *v, long *bounds, int n):
    """Advance ``v`` in lexicographic order within ``bounds``; 0 when exhausted."""
    cdef int k = n - 1
    while k >= 0:
        v[k] += 1
        if v[k] <= bounds[k]:
            return 1
        v[k] = 0
        k -= 1
    return 0


cdef int _rec(Ctx *c, int k, list out) except -1:
    cdef int p = c.p, q = c.q, r = c.r
    cdef int i, j, same, nz
    cdef long b, rowmax
    cdef long u[MAXD]
    cdef long v[MAXD]
    cdef long ub[MAXD]
    cdef long vb[MAXD]
    if c.limit and len(out) >= c.limit:
        return 0
    if k == r:
        if _total(c) == 0:
            R = tuple(tuple(c.us[t * MAXD + i] for t in range(r)) for i in range(p))
            S = tuple(tuple(c.vs[t * MAXD + j] for j in range(q)) for t in range(r))
            out.append((R, S))
        return 0
    if _total(c) < r - k:
        return 0
    for i in range(p):
        rowmax = 0
        for j in range(q):
            if c.rem[i * MAXD + j] > rowmax:
                rowmax = c.rem[i * MAXD + j]
        ub[i] = rowmax if rowmax < c.maxe else c.maxe
        u[i] = 0
    while _next_vec(u, ub, p):
        if k > 0 and _lex_cmp(u, &c.us[(k - 1) * MAXD], p) < 0:
            continue
        nz = 0
        for j in range(q):
            b = c.maxe
            for i in range(p):
                if u[i] and c.rem[i * MAXD + j] // u[i] < b:
                    b = c.rem[i * MAXD + j] // u[i]
            vb[j] = b
            v[j] = 0
            if b:
                nz = 1
        if not nz:
            continue
        same = k > 0 and _lex_cmp(u, &c.us[(k - 1) * MAXD], p) == 0
        while _next_vec(v, vb, q):
            if same and _lex_cmp(v, &c.vs[(k - 1) * MAXD], q) < 0:
                continue
            for i in range(p):
                if u[i]:
                    for j in range(q):
                        c.rem[i * MAXD + j] -= u[i] * v[j]
            for i in range(p):
                c.us[k * MAXD + i] = u[i]
            for j in range(q):
                c.vs[k * MAXD + j] = v[j]
            _rec(c, k + 1, out)
            for i in range(p):
                if u[i]:
                    for j in range(q):
                        c.rem[i * MAXD + j] += u[i] * v[j]
            if c.limit and len(out) >= c.limit:
                return 0
    return 0


def factorizations(a, int r, int max_entry, int limit=0):
    cdef int p = len(a)
    cdef int q = len(a[0]) if p else 0
    cdef int i, j
    cdef Ctx *c
    if r == 0:
        if all(x == 0 for row in a for x in row):
            return [(tuple(() for _ in range(p)), ())]
        return []
    if p > MAXD or q > MAXD or r > MAXD:
        raise ValueError("dimensions too large for the compiled kernel")
    c = <Ctx *> malloc(sizeof(Ctx))
    if not c:
        raise MemoryError()
    out = []
    try:
        c.p = p; c.q = q; c.r = r; c.maxe = max_entry; c.limit = limit
        for i in range(p):
            for j in range(q):
                c.rem[i * MAXD + j] = a[i][j]
        _rec(c, 0, out)
    finally:
        free(c)
    return out
