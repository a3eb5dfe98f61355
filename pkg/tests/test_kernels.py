import itertools
import random

import pytest

from sftprop import _pure, kernels
from sftprop.weighted import STANDARD_MONOIDS, endomorphisms

needs_compiled = pytest.mark.skipif(kernels.compiled is None, reason="compiled extension not built")


def brute_factorizations(a, r, max_entry):
    """Every (R, S) with R S = a, nonzero inner columns/rows and sorted rank-one terms."""
    p, q = len(a), len(a[0])
    rng = range(max_entry + 1)
    out = set()
    for r_flat in itertools.product(rng, repeat=p * r):
        R = [r_flat[i * r:(i + 1) * r] for i in range(p)]
        if any(all(R[i][k] == 0 for i in range(p)) for k in range(r)):
            continue
        for s_flat in itertools.product(rng, repeat=r * q):
            S = [s_flat[k * q:(k + 1) * q] for k in range(r)]
            if any(not any(row) for row in S):
                continue
            prod = [[sum(R[i][k] * S[k][j] for k in range(r)) for j in range(q)] for i in range(p)]
            if prod != a:
                continue
            terms = [(tuple(R[i][k] for i in range(p)), tuple(S[k])) for k in range(r)]
            if terms != sorted(terms):
                continue
            out.add((tuple(tuple(row) for row in R), tuple(tuple(row) for row in S)))
    return out


def rand_rows(rng, p, q, hi):
    return [[rng.randint(0, hi) for _ in range(q)] for _ in range(p)]


def test_factorization_examples():
    assert _pure.factorizations([[2]], 2, 3) == [(((1, 1),), ((1,), (1,)))]
    assert sorted(_pure.factorizations([[2]], 1, 3)) == [(((1,),), ((2,),)), (((2,),), ((1,),))]
    assert _pure.factorizations([[0]], 1, 3) == []
    assert _pure.factorizations([[0, 0]], 0, 3) == [(((),), ())]


def test_pure_factorizations_match_brute_force():
    rng = random.Random(30)
    for _ in range(60):
        p, q, r = rng.randint(1, 2), rng.randint(1, 2), rng.randint(1, 2)
        a = rand_rows(rng, p, q, 3)
        got = _pure.factorizations(a, r, 2)
        assert len(got) == len(set(got))
        assert set(got) == brute_factorizations(a, r, 2)


def test_factorization_limit():
    full = _pure.factorizations([[4, 4], [4, 4]], 2, 3)
    assert len(full) > 3
    assert _pure.factorizations([[4, 4], [4, 4]], 2, 3, limit=3) == full[:3]


def brute_count(table, unit, hom, matrix):
    n, size = len(matrix), len(table)
    count = 0
    for x in itertools.product(range(size), repeat=n):
        good = True
        for i in range(n):
            acc = unit
            for j in range(n):
                for _ in range(matrix[i][j]):
                    acc = table[acc][x[j]]
            good = good and hom[acc] == x[i]
        count += good
    return count


def test_pure_count_matches_brute_force():
    rng = random.Random(31)
    for _ in range(60):
        mon = STANDARD_MONOIDS[rng.choice(sorted(STANDARD_MONOIDS))]()
        hom = rng.choice(endomorphisms(mon))
        n = rng.randint(0, 3)
        m = rand_rows(rng, n, n, 2)
        table = [list(r) for r in mon.table]
        assert _pure.count_fixed_points(table, mon.unit, list(hom.map), m) == brute_count(table, mon.unit, hom.map, m)


@needs_compiled
def test_compiled_agrees_with_pure():
    rng = random.Random(32)
    for _ in range(80):
        mon = STANDARD_MONOIDS[rng.choice(sorted(STANDARD_MONOIDS))]()
        hom = rng.choice(endomorphisms(mon))
        n = rng.randint(0, 3)
        m = rand_rows(rng, n, n, 3)
        table = [list(r) for r in mon.table]
        args = (table, mon.unit, list(hom.map), m)
        assert kernels.compiled.count_fixed_points(*args) == _pure.count_fixed_points(*args)
    for _ in range(80):
        p, q, r = rng.randint(1, 3), rng.randint(1, 3), rng.randint(0, 3)
        a = rand_rows(rng, p, q, 3)
        assert kernels.compiled.factorizations(a, r, 3, 0) == _pure.factorizations(a, r, 3)
        assert kernels.compiled.factorizations(a, r, 3, 2) == _pure.factorizations(a, r, 3, limit=2)


def test_backend_name():
    assert kernels.BACKEND in ("compiled", "pure")
    assert (kernels.BACKEND == "compiled") == (kernels.compiled is not None)


def test_dispatch_falls_back_on_large_inputs():
    big = [[1] * 17]
    assert kernels.factorizations(big, 1, 1) == _pure.factorizations(big, 1, 1)
