import random

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from qcluster.errors import ShapeMismatch
from qcluster.qseed import mutate
from qcluster.qtorus import TorusElement, normalized_from_word
from qcluster.quasihom import (
    apply_monomial,
    build_R,
    check_mutation_compat,
    check_quasi_hom,
    compose,
    mutated_R,
    proportional,
    random_quasi_hom,
    transport_monomial,
)


def apply_f(R, x: TorusElement, source, target) -> TorusElement:
    """Extend a quasi-homomorphism linearly from monomials."""
    out = TorusElement.zero(target.lam)
    for a, c in x.terms.items():
        out = out + transport_monomial(R, a, source.lam, target.lam).scale(c)
    return out


def test_build_R_shape():
    d = build_R([[1, 2]], [[1]])
    assert d.R == ((1, 0, 0), (0, 1, 0), (1, 2, 1))
    with pytest.raises(ShapeMismatch):
        build_R([[1, 2]], [[1], [2]])


def test_apply_and_compose():
    R = build_R([[1, -1]], [[-1]]).matrix()
    assert apply_monomial(R, (1, 0, 1)) == (1, 0, 0)
    assert np.array_equal(compose(R, R), np.eye(3, dtype=np.int64))


def test_identity_is_quasi_hom():
    src, _, _ = random_quasi_hom(random.Random(0), 2)
    rep = check_quasi_hom(src, src, np.eye(src.m, dtype=np.int64))
    assert rep.passed and len(rep.checks) == 5


def test_corrupted_R_is_rejected():
    src, tgt, R = random_quasi_hom(random.Random(5), 3)
    bad = R.copy()
    bad[-1, 0] += 1
    rep = check_quasi_hom(src, tgt, bad)
    assert not rep.passed
    assert not rep["R B~ = B~'"].passed
    bad = R.copy()
    bad[-1, -1] += 1
    assert not check_quasi_hom(src, tgt, bad)["R^t L' R = L"].passed


@given(st.integers(0, 10**6), st.integers(1, 3))
def test_random_pairs_satisfy_criterion(seed, n):
    src, tgt, R = random_quasi_hom(random.Random(seed), n)
    assert check_quasi_hom(src, tgt, R).passed
    for k in range(n):
        assert check_mutation_compat(src, tgt, R, k).passed


@given(st.integers(0, 10**6), st.integers(1, 3))
def test_transports_are_bar_invariant(seed, n):
    rng = random.Random(seed)
    src, tgt, R = random_quasi_hom(rng, n)
    a = [rng.randint(-2, 2) for _ in range(src.m)]
    img = transport_monomial(R, a, src.lam, tgt.lam)
    assert img.is_bar_invariant()
    assert img == TorusElement.monomial(tgt.lam, apply_monomial(R, a))


@given(st.integers(0, 10**6), st.integers(1, 3))
def test_mutation_commutes_with_f(seed, n):
    """f sends the new variable of a mutation to a frozen multiple of the target's."""
    rng = random.Random(seed)
    src, tgt, R = random_quasi_hom(rng, n, max_h=1)
    k = rng.randrange(n)
    s2, t2 = mutate(src, k), mutate(tgt, k)
    img = apply_f(R, s2.frame[k], src, tgt)
    hit = proportional(img, t2.frame[k], list(range(n, tgt.m)))
    assert hit is not None
    # the frozen factor is the frozen part of the new column of R', and
    # f(x_k') is the bar-invariant product [X^p x_k'']
    _, p = hit
    R2 = mutated_R(R, src.btilde, tgt.btilde, k)
    assert p == tuple(int(v) for v in R2[n:, k])
    assert tuple(R2[:n, k]) == tuple(int(i == k) for i in range(n))
    frozen = TorusElement.monomial(tgt.lam, (0,) * n + p)
    assert img == normalized_from_word(tgt.lam, [(frozen, 1), (t2.frame[k], 1)])
