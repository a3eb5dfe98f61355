import random

import pytest

from sftprop import kernels
from sftprop.algebra import Z, ZPLUS, NatInf, SemiringMatrix, int_matrix, mat_direct_sum, mat_mul
from sftprop.invariants import invariant_table
from sftprop.prop import (
    DELTA,
    EMPTY,
    EPS,
    ETA,
    H,
    ID,
    MU,
    SIGMA,
    Contract,
    Expand,
    PermuteDashed,
    Slide,
    TracedMorphism,
    arity,
    compose,
    permutation_slide,
    tensor,
)
from sftprop.shift import SseStep
from sftprop.weighted import WeightedMorphism, partial_trace, trace_n, w_compose, w_tensor


def rand_matrix(rng: random.Random, rows: int, cols: int, hi: int = 2, lo: int = 0) -> SemiringMatrix:
    data = [[rng.randint(lo, hi) for _ in range(cols)] for _ in range(rows)]
    return SemiringMatrix.from_rows(data, ZPLUS if lo >= 0 else Z, cols=cols)


def rand_square(rng: random.Random, max_n: int = 3, hi: int = 2) -> SemiringMatrix:
    n = rng.randint(1, max_n)
    return rand_matrix(rng, n, n, hi)


@pytest.fixture
def rng():
    return random.Random(20240611)


FIB = int_matrix([[1, 1], [1, 0]])
UPPER3 = int_matrix([[0, 2, 1], [0, 1, 1], [0, 0, 1]])


# -- random diagram terms ----------------------------------------------------


_LAYER_ATOMS = {0: [ETA], 1: [ID, ID, H, DELTA, EPS], 2: [MU, SIGMA]}


def rand_layer(rng: random.Random, n_in: int, use_h: bool = True):
    """A tensor of generators with exactly ``n_in`` inputs."""
    parts = []
    left = n_in
    while left > 0 or (not parts and rng.random() < 0.5):
        if rng.random() < 0.15:
            parts.append(ETA)
            continue
        if left == 0:
            break
        width = 2 if left >= 2 and rng.random() < 0.4 else 1
        atoms = [a for a in _LAYER_ATOMS[width] if use_h or a is not H]
        parts.append(rng.choice(atoms))
        left -= width
    if not parts:
        return EMPTY
    rng.shuffle(parts)
    return tensor(*parts)


def rand_term(rng: random.Random, n_in: int, depth: int = 3, use_h: bool = True):
    """A random composite with ``n_in`` inputs and at most ``depth`` layers."""
    layers = []
    width = n_in
    for _ in range(rng.randint(1, depth)):
        layer = rand_layer(rng, width, use_h)
        layers.append(layer)
        width = arity(layer)[1]
        if width > 4:
            break
    return compose(*reversed(layers))


# -- random weighted morphisms -----------------------------------------------------


def rand_weighted(rng: random.Random, size: int, n_in: int, n_out: int, density: float = 0.4, hi: int = 2):
    rows = [
        [NatInf(rng.randint(1, hi)) if rng.random() < density else NatInf(0) for _ in range(size ** n_in)]
        for _ in range(size ** n_out)
    ]
    return WeightedMorphism.from_rows(size, n_in, n_out, rows)


# -- trace axioms in the weighted model ------------------------------------------------


def trace_axiom_instances(rng: random.Random):
    """One random instance of each axiom as ``(name, lhs, rhs)`` weighted morphisms."""
    s = rng.choice([2, 3])
    ident = lambda n: WeightedMorphism.identity(s, n)  # noqa: E731
    a, b, c, d = (rng.randint(0, 1) for _ in range(4))
    out = []

    # tightening: tr((1 (x) g) f (1 (x) h)) = g tr(f) h
    f = rand_weighted(rng, s, 1 + a, 1 + b)
    g = rand_weighted(rng, s, b, c)
    h = rand_weighted(rng, s, d, a)
    lhs = partial_trace(w_compose(w_compose(w_tensor(ident(1), g), f), w_tensor(ident(1), h)))
    rhs = w_compose(w_compose(g, partial_trace(f)), h)
    out.append(("tightening", lhs, rhs))

    # yanking
    out.append(("yanking", partial_trace(WeightedMorphism.permutation(s, [1, 0])), ident(1)))

    # sliding a permutation of the two traced wires
    f = rand_weighted(rng, s, 2 + a, 2 + b)
    p = WeightedMorphism.permutation(s, rng.choice([[0, 1], [1, 0]]))
    lhs = trace_n(w_compose(w_tensor(p, ident(b)), f), 2)
    rhs = trace_n(w_compose(f, w_tensor(p, ident(a))), 2)
    out.append(("sliding", lhs, rhs))

    # strength: tr(f) (x) g = tr(f (x) g)
    f = rand_weighted(rng, s, 1 + a, 1 + b)
    g = rand_weighted(rng, s, c, d)
    out.append(("strength", w_tensor(partial_trace(f), g), partial_trace(w_tensor(f, g))))
    return out


# -- random traced pairs and valid moves ---------------------------------------------------


def rand_pair(rng: random.Random, n_in=None, n_out=None, max_dim: int = 3, hi: int = 2) -> TracedMorphism:
    n_in = rng.randint(0, 2) if n_in is None else n_in
    n_out = rng.randint(0, 2) if n_out is None else n_out
    k = rng.randint(0, max(0, max_dim - max(n_in, n_out)))
    return TracedMorphism(k, rand_matrix(rng, k + n_out, k + n_in, hi))


def rand_operand_and_move(rng: random.Random, n_in: int, n_out: int):
    """A pair with the given visible arity and a move that applies to it."""
    kind = rng.choice(["permute", "perm_slide", "expand", "contract", "factor_slide", "factor_slide_pre"])
    if kind in ("factor_slide", "factor_slide_pre"):
        p, q = rng.randint(0, 2), rng.randint(0, 2)
        g = rand_matrix(rng, p, q, 1)
        cof = rand_matrix(rng, q + n_out, p + n_in, 2)
        move = Slide(g, cof, "post")
        left = mat_mul(mat_direct_sum(g, SemiringMatrix.identity(n_out)), cof)
        f = TracedMorphism(p, left)
        if kind == "factor_slide_pre":
            f = move.apply(f)
            move = move.inverse()
        return f, move
    f = rand_pair(rng, n_in, n_out)
    k = f.dashed
    if kind == "permute":
        perm = list(range(k))
        rng.shuffle(perm)
        return f, PermuteDashed(tuple(perm))
    if kind == "perm_slide":
        perm = list(range(k))
        rng.shuffle(perm)
        return f, permutation_slide(f, perm)
    if k + n_in == 0:
        return f, PermuteDashed(tuple(range(k)))
    site = rng.randrange(k + n_in)
    if kind == "expand":
        return f, Expand(site)
    return Expand(site).apply(f), Contract(site)


# -- invariant consistency -------------------------------------------------------------


def assert_invariants_agree(m, n, relation: str) -> None:
    for name, a, b in invariant_table(m, n, relation):
        assert a == b, f"{name}: {a} vs {b}"


def random_sse_neighbor(rng: random.Random, m, max_entry: int = 2):
    """A random elementary SSE step out of ``m`` via an exhaustive factor list, or None."""
    rows = m.to_rows()
    r = rng.randint(1, 3)
    facts = kernels.factorizations(rows, r, max_entry, 200)
    if not facts:
        return None
    R, S = rng.choice(facts)
    return SseStep(SemiringMatrix.from_rows([list(x) for x in R], ZPLUS, cols=r),
                   SemiringMatrix.from_rows([list(x) for x in S], ZPLUS, cols=m.cols))


# -- acceptance summary ---------------------------------------------------------------------

ACCEPTANCE_RESULTS: list[str] = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_RESULTS:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_RESULTS:
            terminalreporter.write_line(line)
