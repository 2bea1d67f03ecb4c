import random
from fractions import Fraction
from itertools import combinations

import pytest
from hypothesis import given
from hypothesis import strategies as st

from qcluster.errors import AmbientMismatch, InvalidParams, NotConsecutivelyGeneric, NotWeaklySeparated
from qcluster.grassmann import (
    frozen_subsets,
    interval,
    ksubsets,
    plucker_values,
    random_sample,
    rectangles_seed,
    scott_lambda,
    weakly_separated,
    window_oracle,
    x_i_labels,
    x_i_seed,
)
from qcluster.qseed import compatibility_diagonal


def crossing_free(I, J):
    """Independent check: no a<b<c<d alternating between I-J and J-I."""
    A, B = set(I) - set(J), set(J) - set(I)
    for a, b, c, d in combinations(sorted(A | B), 4):
        if (a in A and b in B and c in A and d in B) or (a in B and b in A and c in B and d in A):
            return False
    return True


def test_weak_separation_examples():
    assert weakly_separated((1, 2), (3, 4))
    assert weakly_separated((1, 3), (1, 3))
    assert not weakly_separated((1, 3), (2, 4))
    with pytest.raises(AmbientMismatch):
        weakly_separated((1, 2), (1, 2, 3))


@pytest.mark.parametrize("k,n", [(2, 4), (2, 5), (2, 6), (3, 6), (3, 7), (4, 8)])
def test_weak_separation_matches_crossing_criterion(k, n):
    for I, J in combinations(ksubsets(k, n), 2):
        assert weakly_separated(I, J) == crossing_free(I, J), (I, J)


def test_scott_examples():
    assert scott_lambda((1, 2), (3, 4)) == 2
    assert scott_lambda((1, 2, 3), (1, 4, 5)) == 2
    assert scott_lambda((1, 2, 4), (1, 3, 4)) == 1
    with pytest.raises(NotWeaklySeparated):
        scott_lambda((1, 3), (2, 4))


@pytest.mark.parametrize("k,n", [(2, 4), (2, 5), (2, 6), (3, 6)])
def test_scott_antisymmetric(k, n):
    for I, J in combinations(ksubsets(k, n), 2):
        if weakly_separated(I, J):
            assert scott_lambda(I, J) == -scott_lambda(J, I)


def test_frozen_order():
    assert frozen_subsets(2, 4) == [(1, 2), (2, 3), (3, 4), (1, 4)]
    assert frozen_subsets(3, 6) == [(1, 2, 3), (2, 3, 4), (3, 4, 5), (4, 5, 6), (1, 5, 6), (1, 2, 6)]
    assert interval(5, 3, 6) == (1, 5, 6)
    assert all(len(frozen_subsets(k, n)) == n for k, n in [(2, 5), (3, 7), (4, 9)])


def test_rectangles_seed_gr36():
    s = rectangles_seed(3, 6)
    subsets = s.meta["subsets"]
    assert set(subsets[: s.n_mut]) == {(1, 2, 4), (1, 2, 5), (1, 3, 4), (1, 4, 5)}
    assert list(subsets[s.n_mut :]) == frozen_subsets(3, 6)


def test_rectangles_seed_gr24():
    s = rectangles_seed(2, 4)
    assert s.meta["subsets"][0] == (1, 3) and s.n_mut == 1


@pytest.mark.parametrize("k,n", [(k, n) for n in range(4, 9) for k in range(2, 5) if k <= n - 2])
def test_rectangles_seeds_compatible(k, n):
    s = rectangles_seed(k, n)
    assert all(d > 0 for d in compatibility_diagonal(s.btilde, s.lam.rows))
    labels = s.meta["subsets"]
    assert len(set(labels)) == k * (n - k) + 1
    assert all(weakly_separated(I, J) for I, J in combinations(labels, 2))


def test_bad_params():
    with pytest.raises(InvalidParams):
        rectangles_seed(1, 3)
    with pytest.raises(InvalidParams):
        x_i_seed(2, 5, 1)  # gcd 1
    with pytest.raises(InvalidParams):
        x_i_seed(3, 6, 3)


@pytest.mark.parametrize("k,n,i", [(2, 4, 1), (3, 6, 1), (3, 6, 2), (2, 6, 1), (4, 8, 1), (4, 8, 3)])
def test_x_i_seed(k, n, i):
    s = x_i_seed(k, n, i)
    labels = s.meta["subsets"]
    assert list(labels) == x_i_labels(k, n, i)
    assert list(labels[s.n_mut :]) == frozen_subsets(k, n)
    assert all(weakly_separated(I, J) for I, J in combinations(labels, 2))
    assert compatibility_diagonal(s.btilde, s.lam.rows) == s.diagonal


def test_window_oracle_gr24():
    rng = random.Random(3)
    for _ in range(10):
        mat = random_sample(rng, 2, 4)
        before = plucker_values(mat, 2, 4)
        after = window_oracle(2, 4, 1, mat)
        assert after[(1, 3)] == before[(2, 4)]
        assert after[(1, 2)] == before[(1, 2)] and after[(3, 4)] == before[(3, 4)]


def test_window_oracle_needs_generic_sample():
    # columns 2 and 3 are parallel
    mat = [[Fraction(1), Fraction(1), Fraction(2), Fraction(0)], [Fraction(0), Fraction(1), Fraction(2), Fraction(1)]]
    with pytest.raises(NotConsecutivelyGeneric):
        window_oracle(2, 4, 1, mat)


@given(st.integers(0, 10**6))
def test_window_oracle_fixes_other_frozen(seed):
    rng = random.Random(seed)
    mat = random_sample(rng, 3, 6)
    before = plucker_values(mat, 3, 6)
    after = window_oracle(3, 6, 1, mat)
    # frozen [j, j+2] with j not congruent to 2 mod 3 are fixed
    for j in (1, 3, 4, 6):
        I = interval(j, 3, 6)
        assert after[I] == before[I]
