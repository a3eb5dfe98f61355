import random

import pytest

from conftest import UPPER3, rand_matrix, rand_operand_and_move, rand_pair, trace_axiom_instances
from sftprop.algebra import T, ZPLUS_T, DimensionError, NatInf, SemiringMatrix, int_matrix, mat_mul
from sftprop.certificate import MoveError, verify_certificate
from sftprop.prop import (
    Contract,
    Expand,
    PairBudget,
    PermuteDashed,
    Slide,
    TracedMorphism,
    full_trace,
    honest_value,
    iota,
    pair_equiv_bounded,
    permutation_slide,
    tp_compose,
    tp_tensor,
    tp_trace,
)
from sftprop.weighted import FiniteMonoid, MonoidHom, WeightedModel, WeightedMorphism, partial_trace

SWAP = int_matrix([[0, 1], [1, 0]])
Z2 = WeightedModel(FiniteMonoid.cyclic(2))


def value(f, model=Z2):
    return honest_value(f, model)


# -- constructors --------------------------------------------------------------------


def test_iota():
    assert iota(SemiringMatrix.identity(2)) == TracedMorphism(0, SemiringMatrix.identity(2))
    p = iota(UPPER3)
    assert (p.dashed, p.n_in, p.n_out) == (0, 3, 3)


def test_dashed_count_checked():
    with pytest.raises(DimensionError):
        TracedMorphism(3, SemiringMatrix.identity(2))


def test_compose_examples():
    ident = iota(SemiringMatrix.identity(1))
    assert value(tp_compose(ident, ident)) == Z2.identity(1)
    s1 = TracedMorphism(1, SWAP)
    both = tp_compose(s1, s1)
    pt = partial_trace(Z2.interpret(SWAP))
    assert value(both) == Z2.compose(pt, pt)


def test_compose_rejects_bad_arity():
    with pytest.raises(DimensionError):
        tp_compose(iota(int_matrix([[1, 1]])), iota(int_matrix([[1, 1]])))


def test_dashed_free_compose_is_move_equivalent_to_product():
    rng = random.Random(11)
    for _ in range(5):
        a, b = rand_matrix(rng, 2, 2), rand_matrix(rng, 2, 2)
        composed = tp_compose(iota(a), iota(b))
        cert = pair_equiv_bounded(composed, iota(mat_mul(a, b)))
        assert cert is not None and verify_certificate(cert)


def test_tensor_examples():
    a, b = int_matrix([[1, 2]]), int_matrix([[2], [0]])
    from sftprop.algebra import mat_direct_sum

    assert tp_tensor(iota(a), iota(b)) == iota(mat_direct_sum(a, b))
    f = TracedMorphism(1, int_matrix([[1, 2], [0, 1]]))
    assert tp_tensor(f, iota(SemiringMatrix.empty())) == f
    one = TracedMorphism(1, SemiringMatrix.identity(1))
    assert value(tp_tensor(one, one)).scalar() == NatInf(4)


def test_trace_examples():
    yank = tp_trace(iota(SWAP))
    assert yank == TracedMorphism(1, SWAP)
    assert value(yank) == Z2.identity(1)
    z3 = WeightedModel(FiniteMonoid.cyclic(3))
    assert value(tp_trace(iota(SemiringMatrix.identity(2))), z3) == WeightedMorphism(3, 1, 1, {j: {j: 3} for j in range(3)})
    m = int_matrix([[2]])
    diag_sum = sum((Z2.interpret(m).entry(x, x) for x in range(2)), NatInf(0))
    assert value(tp_trace(iota(m))).scalar() == diag_sum
    with pytest.raises(DimensionError):
        tp_trace(iota(SemiringMatrix.zeros(1, 0)))


def test_full_trace_examples():
    assert full_trace(SemiringMatrix.empty()) == TracedMorphism(0, SemiringMatrix.empty())
    assert full_trace(UPPER3) == TracedMorphism(3, UPPER3)
    assert value(full_trace(int_matrix([[2]]))).scalar() == NatInf(1)
    with pytest.raises(DimensionError):
        full_trace(int_matrix([[1, 1]]))


# -- moves ---------------------------------------------------------------------------------


def test_permute_identity_is_noop():
    f = TracedMorphism(2, int_matrix([[1, 2, 0], [0, 1, 1], [2, 0, 1]]))
    assert PermuteDashed((0, 1)).apply(f) == f


def test_swap_slide_on_two_dashed_wires():
    m = int_matrix([[1, 2, 0], [0, 1, 1], [2, 0, 1]])
    f = TracedMorphism(2, m)
    moved = permutation_slide(f, [1, 0]).apply(f)
    assert moved == PermuteDashed((1, 0)).apply(f)
    assert moved.underlying == int_matrix([[1, 0, 1], [2, 1, 0], [0, 2, 1]])
    assert value(moved) == value(f)


def test_expand_then_contract_restores():
    rng = random.Random(12)
    for _ in range(50):
        f = rand_pair(rng)
        for site in range(f.dashed + f.n_in):
            assert Contract(site).apply(Expand(site).apply(f)) == f


def test_expand_identity_gives_yank_pair():
    assert Expand(0).apply(iota(SemiringMatrix.identity(1))) == TracedMorphism(1, SWAP)


def test_invalid_moves_raise():
    f = TracedMorphism(1, int_matrix([[1, 1], [1, 1]]))
    with pytest.raises(MoveError):
        Contract(0).apply(f)
    with pytest.raises(MoveError):
        Expand(5).apply(f)
    with pytest.raises(MoveError):
        PermuteDashed((0, 1)).apply(f)
    with pytest.raises(MoveError):
        Slide(SemiringMatrix.identity(1), int_matrix([[2, 0], [0, 1]])).apply(f)
    with pytest.raises(MoveError):
        permutation_slide(f, [1, 0])


def test_moves_preserve_value_and_invert():
    rng = random.Random(13)
    for _ in range(150):
        n_in, n_out = rng.randint(0, 2), rng.randint(0, 2)
        f, move = rand_operand_and_move(rng, n_in, n_out)
        g = move.apply(f)
        assert (g.n_in, g.n_out) == (n_in, n_out)
        assert value(g) == value(f)
        assert move.inverse().apply(g) == f


def test_moves_preserve_value_with_nontrivial_h():
    model = WeightedModel(FiniteMonoid.cyclic(3), MonoidHom(FiniteMonoid.cyclic(3), [0, 2, 1]))
    rng = random.Random(14)
    for _ in range(40):
        f = TracedMorphism(1, SemiringMatrix(2, 2, (T * rng.randint(0, 2) for _ in range(4)), ZPLUS_T))
        for site in range(2):
            assert value(Expand(site).apply(f), model) == value(f, model)


# -- trace axioms and well-definedness -------------------------------------------------------


def test_trace_axioms_in_weighted_model():
    rng = random.Random(15)
    for _ in range(60):
        for name, lhs, rhs in trace_axiom_instances(rng):
            assert lhs == rhs, name


def test_sliding_arbitrary_one_wire_morphism():
    from conftest import rand_weighted
    from sftprop.weighted import w_compose, w_tensor

    rng = random.Random(16)
    for _ in range(40):
        s = 2
        g = rand_weighted(rng, s, 1, 1)
        f = rand_weighted(rng, s, 2, 2)
        ident = WeightedMorphism.identity(s)
        assert partial_trace(w_compose(w_tensor(g, ident), f)) == partial_trace(w_compose(f, w_tensor(g, ident)))


def test_tracing_two_wires_matches_dense_sum():
    from conftest import rand_weighted
    from sftprop.weighted import trace_n

    rng = random.Random(17)
    for _ in range(20):
        s = rng.choice([2, 3])
        f = rand_weighted(rng, s, 3, 3)
        t = trace_n(f, 2)
        for z in range(s):
            for y in range(s):
                expected = sum(
                    (f.entry(x * s + z, x * s + y) for x in range(s * s)), NatInf(0)
                )
                assert t.entry(z, y) == expected


def test_well_definedness_of_compose_and_tensor():
    rng = random.Random(18)
    for _ in range(80):
        a, b, c = (rng.randint(0, 2) for _ in range(3))
        f, move = rand_operand_and_move(rng, b, c)
        g = rand_pair(rng, a, b, max_dim=2)
        moved = move.apply(f)
        assert value(tp_compose(moved, g)) == value(tp_compose(f, g))
        assert value(tp_tensor(moved, g)) == value(tp_tensor(f, g))
        assert value(tp_tensor(g, moved)) == value(tp_tensor(g, f))
        h = rand_pair(rng, c, a, max_dim=2)
        assert value(tp_compose(h, moved)) == value(tp_compose(h, f))


def test_compose_and_tensor_commute_with_evaluation():
    rng = random.Random(19)
    for _ in range(60):
        a, b, c = (rng.randint(0, 2) for _ in range(3))
        f, g = rand_pair(rng, b, c, 2), rand_pair(rng, a, b, 2)
        assert value(tp_compose(f, g)) == Z2.compose(value(f), value(g))
        assert value(tp_tensor(f, g)) == Z2.tensor(value(f), value(g))
        if c and b:
            assert value(tp_trace(f)) == partial_trace(value(f))


# -- bounded search -----------------------------------------------------------------------------


def test_search_trivial_and_small_examples():
    f = TracedMorphism(1, int_matrix([[1, 2], [0, 1]]))
    cert = pair_equiv_bounded(f, f)
    assert cert is not None and len(cert) == 0
    yank = TracedMorphism(1, SWAP)
    expanded = Expand(0).apply(iota(SemiringMatrix.identity(1)))
    cert = pair_equiv_bounded(yank, expanded)
    assert cert is not None and len(cert) <= 2 and verify_certificate(cert)


def test_search_finds_factor_slide_over_polynomials():
    two = SemiringMatrix.from_rows([[2 * T]], ZPLUS_T)
    ones = SemiringMatrix.from_rows([[T, T], [T, T]], ZPLUS_T)
    cert = pair_equiv_bounded(full_trace(two), full_trace(ones))
    assert cert is not None and verify_certificate(cert)
    assert [s.tag for s in cert.steps] == ["pair.slide"]


def test_search_certificates_replay_after_random_moves():
    rng = random.Random(20)
    for _ in range(15):
        f = rand_pair(rng, 1, 1, max_dim=2)
        g = Expand(rng.randrange(f.dashed + 1)).apply(f)
        perm = list(range(g.dashed))
        rng.shuffle(perm)
        g = PermuteDashed(tuple(perm)).apply(g)
        cert = pair_equiv_bounded(f, g, PairBudget(max_steps=4))
        assert cert is not None
        assert verify_certificate(cert)
        assert value(g) == value(f)


def test_search_rejects_arity_mismatch():
    with pytest.raises(DimensionError):
        pair_equiv_bounded(iota(int_matrix([[1]])), iota(int_matrix([[1, 1]])))
