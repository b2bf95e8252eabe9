"""Exchange matrices, seeds, block mutation, and mutation loops."""

import pytest
from hypothesis import given, settings, strategies as st

from tsysteme import (
    ExchangeMatrix,
    LoopError,
    MLaurent,
    MutationLoop,
    Seed,
    TropicalValue,
    mutate_block,
    mutate_matrix,
    mutate_seed,
    mutate_seed_block,
    verify_loop,
)
from tsysteme.cluster import ExactDivisionError


def a2_matrix():
    return ExchangeMatrix([0, 1], {(0, 1): 1, (1, 0): -1})


@st.composite
def skew_matrices(draw, size=3):
    labels = list(range(size))
    entries = {}
    for i in range(size):
        for j in range(i + 1, size):
            v = draw(st.integers(-3, 3))
            if v:
                entries[(i, j)] = v
                entries[(j, i)] = -v
    return ExchangeMatrix(labels, entries)


def test_exchange_matrix_validation():
    with pytest.raises(LoopError):
        ExchangeMatrix([0, 0], {})
    with pytest.raises(LoopError):
        ExchangeMatrix([0, 1], {(0, 1): 1, (1, 0): 1})  # not skew
    with pytest.raises(LoopError):
        ExchangeMatrix([0], {(0, 0): 2})  # diagonal
    with pytest.raises(LoopError):
        ExchangeMatrix([0, 1], {(0, 2): 1})  # unknown label
    # skew-symmetrizable with unequal weights: B[0][1] d_1 = -B[1][0] d_0
    m = ExchangeMatrix([0, 1], {(0, 1): 1, (1, 0): -2}, weights={0: 1, 1: 2})
    assert m.entry(1, 0) == -2


def test_relabel_moves_entries_and_weights():
    m = ExchangeMatrix(["a", "b"], {("a", "b"): 3, ("b", "a"): -3})
    swapped = m.relabel({"a": "b", "b": "a"})
    assert swapped.entry("b", "a") == 3
    fresh = m.relabel({"a": "x", "b": "y"})
    assert sorted(fresh.labels) == ["x", "y"]
    assert fresh.entry("x", "y") == 3
    with pytest.raises(LoopError):
        m.relabel({"a": "c", "b": "c"})


@given(skew_matrices(), st.integers(0, 2))
def test_matrix_mutation_is_involutive(m, k):
    assert mutate_matrix(mutate_matrix(m, k), k) == m


@given(skew_matrices())
def test_block_mutation_order_independent(m):
    # find a disconnected pair if there is one
    for i in range(3):
        for j in range(i + 1, 3):
            if m.entry(i, j) == 0:
                assert mutate_block(m, (i, j)) == mutate_block(m, (j, i))
                assert mutate_block(m, (i, j)) == mutate_matrix(
                    mutate_matrix(m, i), j
                )
                return


def test_block_mutation_rejects_connected_indices():
    with pytest.raises(LoopError):
        mutate_block(a2_matrix(), (0, 1))
    with pytest.raises(LoopError):
        mutate_block(a2_matrix(), (0, 0))


def test_pentagon_recurrence():
    """Alternating mutation of the rank-2 single-arrow matrix cycles the
    cluster through the classical five Laurent polynomials and returns the
    seed after ten steps."""
    x0 = MLaurent.generator("x0")
    x1 = MLaurent.generator("x1")
    one = MLaurent.one()
    seed = Seed(a2_matrix(), None, {0: x0, 1: x1})
    # hand-derived orbit of the exchange relation x x' = x_other + 1
    expected_new = [
        (one + x1).exact_div(x0),
        (x0 + one + x1).exact_div(x0 * x1),
        (one + x0).exact_div(x1),
        x0,
        x1,
    ]
    current = seed
    seen = []
    for step in range(10):
        k = step % 2
        current = mutate_seed(current, k)
        seen.append(current.cluster[k])
    assert seen[:5] == expected_new
    assert seen[5:] == expected_new  # the orbit repeats with roles swapped
    assert current.matrix == seed.matrix
    assert current.cluster == seed.cluster


def test_mutated_coefficient_inverts_at_the_mutation_point():
    y0 = TropicalValue.generator("y0")
    y1 = TropicalValue.generator("y1")
    seed = Seed(a2_matrix(), {0: y0, 1: y1})
    out = mutate_seed(seed, 0)
    assert out.coeffs[0] == y0.inv()
    # B[0][1] = 1 > 0 pushes (1 (+) y0^-1)^-1 onto y1
    assert out.coeffs[1] == y1 * (y0.one_like().oplus(y0.inv()) ** -1)


def test_seed_assignment_must_cover_labels():
    with pytest.raises(LoopError):
        Seed(a2_matrix(), {0: TropicalValue.generator("y0")})


def test_mlaurent_exact_division():
    x = MLaurent.generator("x")
    y = MLaurent.generator("y")
    product = (x + y) * (x - y)
    assert product.exact_div(x + y) == x - y
    assert (x * y**-1).exact_div(x) == y**-1
    with pytest.raises(ExactDivisionError):
        (x + MLaurent.one()).exact_div(x + y)
    with pytest.raises(ZeroDivisionError):
        x.exact_div(MLaurent.zero())
    assert MLaurent.constant(6).exact_div(MLaurent.constant(3)) == 2


@settings(deadline=None)
@given(
    st.lists(st.sampled_from(["x", "y"]), min_size=1, max_size=4),
    st.lists(st.sampled_from(["x", "y", "z"]), min_size=1, max_size=4),
)
def test_mlaurent_division_inverts_multiplication(gs, hs):
    f = MLaurent.one()
    for g in gs:
        f = f * (MLaurent.generator(g) + MLaurent.one())
    h = MLaurent.one()
    for g in hs:
        h = h * (MLaurent.generator(g) + MLaurent.constant(2))
    assert (f * h).exact_div(h) == f


def alternating_loop():
    m = a2_matrix()
    return MutationLoop(m, [(0,), (1,)], {0: 0, 1: 1})


def test_verify_loop_accepts_the_alternating_loop():
    loop = alternating_loop()
    check = verify_loop(loop)
    assert check.ok and bool(check)
    assert len(check.stages) == 3
    assert loop.t == 2
    assert loop.nu_order() == 1
    assert loop.block_at(0) == (0,) and loop.block_at(3) == (1,)
    assert loop.stage_matrix(2) == loop.matrix


def test_verify_loop_reports_failures():
    m = a2_matrix()
    bad_nu = MutationLoop(m, [(0,), (1,)], {0: 1, 1: 0})
    check = verify_loop(bad_nu)
    assert not check.ok and "mismatch" in check.failure
    connected = MutationLoop(m, [(0, 1)], {0: 0, 1: 1})
    assert "connected" in verify_loop(connected).failure
    unknown = MutationLoop(m, [(7,)], {0: 0, 1: 1})
    assert "unknown" in verify_loop(unknown).failure
    with pytest.raises(LoopError):
        MutationLoop(m, [(0,)], {0: 0})  # nu not a bijection on labels


def test_weights_must_be_nu_invariant():
    m = ExchangeMatrix(
        [0, 1], {(0, 1): 1, (1, 0): -2}, weights={0: 1, 1: 2}
    )
    loop = MutationLoop(m, [(0,), (1,)], {0: 1, 1: 0})
    check = verify_loop(loop)
    assert not check.ok and "weight" in check.failure


def test_block_seed_mutation_matches_sequential():
    m = ExchangeMatrix(
        [0, 1, 2], {(0, 1): 1, (1, 0): -1, (1, 2): 1, (2, 1): -1}
    )
    cluster = {i: MLaurent.generator(f"x{i}") for i in range(3)}
    seed = Seed(m, None, cluster)
    together = mutate_seed_block(seed, (0, 2))
    stepwise = mutate_seed(mutate_seed(seed, 0), 2)
    assert together.matrix == stepwise.matrix
    assert together.cluster == stepwise.cluster
