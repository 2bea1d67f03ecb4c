import pytest

from qcluster.atlas import GrassmannAtlas, Relation, finite_type, get_atlas, symbol_str
from qcluster.grassmann import frozen_subsets, ksubsets
from qcluster.qmatrix import PluckerExpr

P = PluckerExpr.parse


@pytest.fixture(scope="module")
def gr36():
    return get_atlas(3, 6)


def test_gr36_counts(gr36):
    assert gr36.complete and gr36.n_clusters == 50
    labels = gr36.mutable_labels()
    assert len(labels) == 16
    assert {"y", "z"} <= set(labels)
    assert set(ksubsets(3, 6)) - set(frozen_subsets(3, 6)) <= set(labels)


def test_named_variables_match_expansions(gr36):
    for name in ("y", "z"):
        assert gr36.var[name] == gr36.torus_of(gr36.table.named[name])


def test_every_variable_bar_invariant_and_integral(gr36):
    assert all(x.is_bar_invariant() and x.is_integral() for x in gr36.var.values())


def test_exchange_relations_hold(gr36):
    rels = gr36.exchange_relations()
    assert len(rels) == 100
    assert gr36.verify_relations(rels).passed


def test_quasi_commutation_and_scott_relations_hold(gr36):
    rep = gr36.verify_relations(gr36.quasi_commutation_relations() + gr36.scott_relations())
    assert rep.passed


def test_corrupted_relation_is_rejected(gr36):
    bad = Relation("bad", "exchange", P("D(1,2,4)*D(1,3,5)"), P("[D(1,2,5) D(1,3,4)] + [D(1,2,3) D(1,4,5)]"))
    assert not gr36.verify_relations([bad]).passed


def test_seed_lookup(gr36):
    labels = [(1, 2, 4), (1, 2, 5), (1, 3, 4), (1, 4, 5)]
    seed = gr36.seed_for(labels)
    assert list(seed.labels[:4]) == [symbol_str(s) for s in labels]
    assert set(gr36.labels_of_seed(seed)[:4]) == set(labels)


def test_factor_recognizes_variables(gr36):
    for s, x in gr36.var.items():
        t, p, u = gr36.factor(x)
        assert (t, p, u) == (0, {}, s) or (gr36.is_frozen(s) and u is None)


def test_gr25_is_type_a2():
    atlas = GrassmannAtlas(2, 5)
    assert atlas.n_clusters == 5 and len(atlas.mutable_labels()) == 5


def test_finite_type():
    assert finite_type(2, 9) and finite_type(3, 7) and finite_type(3, 8)
    assert not finite_type(3, 9) and not finite_type(4, 8)
