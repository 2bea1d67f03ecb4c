import random

import pytest
from hypothesis import given
from hypothesis import strategies as st

from qcluster import qseed
from qcluster.errors import IncompatiblePair, IndexOutOfRange
from qcluster.grassmann import rectangles_seed, x_i_seed
from qcluster.qseed import (
    compatibility_diagonal,
    dump_seed,
    enumerate_exchange_graph,
    load_seed,
    mutate,
    mutate_matrices,
    new_seed,
    random_compatible_pair,
    seed_from_dict,
    seed_to_dict,
    yhat,
)

A2_BT = [[0, 1], [-1, 0], [1, 0], [0, 1]]
A2_LAM = [[0, 0, -1, 0], [0, 0, 0, -1], [1, 0, 0, -1], [0, 1, 1, 0]]


def a2_seed():
    return new_seed(["x1", "x2", "f1", "f2"], A2_BT, A2_LAM)


def test_compatibility_diagonal():
    assert compatibility_diagonal(tuple(map(tuple, A2_BT)), tuple(map(tuple, A2_LAM))) == (1, 1)
    with pytest.raises(IncompatiblePair):
        new_seed(["a", "b"], [[0, 1], [-1, 0]], [[0, 0], [0, 0]])


def test_a2_has_five_clusters():
    g = enumerate_exchange_graph(a2_seed())
    assert g.n_clusters == 5


def test_mutation_is_involutive():
    s = a2_seed()
    for k in range(s.n_mut):
        assert mutate(mutate(s, k), k).same_data(s)


def test_bad_direction():
    with pytest.raises(IndexOutOfRange):
        mutate(a2_seed(), 2)


def test_yhat_mutation_inverts():
    s = a2_seed()
    assert yhat(mutate(s, 0), 0) == yhat(s, 0).inverse()


def test_grassmannian_enumeration_counts():
    # Gr(2,n) is of type A_{n-3}: Catalan numbers of clusters
    assert enumerate_exchange_graph(rectangles_seed(2, 5)).n_clusters == 5
    assert enumerate_exchange_graph(rectangles_seed(2, 6)).n_clusters == 14


@pytest.mark.parametrize("make", [lambda: rectangles_seed(3, 6), lambda: x_i_seed(3, 6, 1), a2_seed])
def test_seed_file_round_trip(tmp_path, make):
    s = make()
    path = tmp_path / "seed.json"
    dump_seed(s, path)
    t = load_seed(path)
    assert t == s and t.meta == s.meta
    assert seed_to_dict(seed_from_dict(seed_to_dict(s))) == seed_to_dict(s)


@given(st.integers(0, 10**6), st.integers(1, 4), st.lists(st.integers(0, 3), max_size=10))
def test_mutation_keeps_pairs_compatible(seed, n, dirs):
    rng = random.Random(seed)
    bt, lam, d = random_compatible_pair(rng, n, mix_steps=rng.randint(0, 3))
    for k in dirs:
        bt, lam = mutate_matrices(bt, lam, k % n)
        assert compatibility_diagonal(bt, lam) == tuple(d)


@given(st.integers(0, 10**6), st.lists(st.integers(0, 2), min_size=1, max_size=4))
def test_mutated_frames_stay_bar_invariant(seed, dirs):
    rng = random.Random(seed)
    bt, lam, _ = random_compatible_pair(rng, 3)
    s = new_seed([f"x{j}" for j in range(6)], bt, lam)
    for k in dirs:
        s = mutate(s, k)
    assert all(x.is_bar_invariant() for x in s.frame)


def _sign_bug(btilde, lam, k):
    nb, nl = mutate_matrices(btilde, lam, k)
    rows = [list(r) for r in nl]
    for j in range(len(rows)):
        rows[j][k], rows[k][j] = -rows[j][k], -rows[k][j]
    return nb, tuple(tuple(r) for r in rows)


def test_negative_control_sign_bug_breaks_compatibility(monkeypatch):
    monkeypatch.setattr(qseed, "mutate_matrices", _sign_bug)
    rng = random.Random(1)
    broken = 0
    for _ in range(20):
        bt, lam, d = random_compatible_pair(rng, 3)
        bt2, lam2 = qseed.mutate_matrices(bt, lam, 0)
        try:
            broken += compatibility_diagonal(bt2, lam2) != tuple(d)
        except IncompatiblePair:
            broken += 1
    assert broken == 20
    with pytest.raises(IncompatiblePair):
        qseed.mutate(a2_seed(), 0)
