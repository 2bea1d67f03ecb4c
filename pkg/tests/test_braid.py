import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from qcluster.atlas import Relation, get_atlas
from qcluster.braid import (
    BraidWord,
    BracketMonomial,
    R_sigma,
    apply_sigma,
    apply_table,
    check_sigma_quasi_hom,
    q1_shadow,
    sigma_bar,
    sigma_table,
    verify_braid_relations,
    verify_inverse,
    verify_preservation,
)
from qcluster.errors import InvalidParams, ParseError, UnknownSymbol
from qcluster.grassmann import parse_subset
from qcluster.known import GR24_SIGMA1, GR36_TABLE
from qcluster.qmatrix import PluckerExpr

P = PluckerExpr.parse


def label(text):
    return parse_subset(text) if text.startswith("D(") else text


def test_word_parsing():
    w = BraidWord.parse("s1 s2^-1 s1")
    assert str(w) == "s1 s2^-1 s1"
    assert str(w.inverse()) == "s1^-1 s2 s1^-1"
    with pytest.raises(ParseError):
        BraidWord.parse("t1")


def test_sigma_bar():
    assert sigma_bar(6, 3, 1) == {1: 2, 2: 1, 3: 3, 4: 5, 5: 4, 6: 6}
    with pytest.raises(InvalidParams):
        sigma_bar(6, 3, 3)


@pytest.mark.parametrize("k,n,i", [(2, 4, 1), (3, 6, 1), (3, 6, 2), (4, 8, 3)])
def test_R_sigma_is_involution(k, n, i):
    R = R_sigma(k, n, i).matrix()
    assert np.array_equal(R @ R, np.eye(len(R), dtype=np.int64))


def test_R_sigma_gr24():
    # the moved frozen row [23] becomes -e_23 plus its two cyclic neighbors
    L = np.array(R_sigma(2, 4, 1).L)
    assert L[:, 1].tolist() == [1, -1, 1, 0]


@pytest.mark.parametrize("x", sorted(GR24_SIGMA1))
def test_gr24_images(x):
    t = sigma_table(2, 4, 1)
    assert t[label(x)] == BracketMonomial.from_expr(P(GR24_SIGMA1[x]), get_atlas(2, 4).frozen)


@pytest.mark.parametrize("row", GR36_TABLE, ids=[r[0] for r in GR36_TABLE])
def test_gr36_table_rows(row):
    atlas = get_atlas(3, 6)
    for i in (1, 2):
        want = BracketMonomial.from_expr(P(row[i]), atlas.frozen)
        table = sigma_table(3, 6, i)
        assert table[label(row[0])] == want
        assert table.torus[label(row[0])] == atlas.torus_of(P(row[i]))


def test_sigma2_of_d135():
    assert str(apply_sigma("s2", "D(1,3,5)", 3, 6)) == "[D(3,4,5)^-1 z]"


def test_braid_word_examples():
    assert str(apply_sigma("s1 s2 s1", "D(1,4,5)", 3, 6)) == "D(3,5,6)"
    assert str(apply_sigma("s1 s1^-1", "D(1,3,5)", 3, 6)) == "D(1,3,5)"
    assert str(apply_sigma("s1", "D(2,3,4)", 3, 6)) == "[D(1,2,3) D(2,3,4)^-1 D(3,4,5)]"


def test_unknown_symbol():
    with pytest.raises(UnknownSymbol):
        apply_sigma("s1", "D(1,2,3,4)", 3, 6)


@pytest.mark.parametrize("k,n,i", [(2, 4, 1), (3, 6, 1), (3, 6, 2)])
def test_inverse_tables(k, n, i):
    assert verify_inverse(k, n, i).passed


@pytest.mark.parametrize("k,n,i", [(2, 4, 1), (3, 6, 1), (3, 6, 2)])
def test_q1_shadow(k, n, i):
    assert q1_shadow(k, n, i, samples=5).passed


@pytest.mark.parametrize("i", [1, 2])
def test_quasi_hom_criterion(i):
    rep = check_sigma_quasi_hom(3, 6, i)
    assert rep.passed


def test_braid_relation_gr36():
    rep = verify_braid_relations(3, 6)
    assert rep.passed and len(rep.checks) == 22


def test_braid_relation_needs_two_generators():
    with pytest.raises(InvalidParams):
        verify_braid_relations(2, 4)


@pytest.mark.parametrize("i,sign", [(1, 1), (2, 1), (1, -1), (2, -1)])
def test_sigma_preserves_gr36_relations(i, sign):
    atlas = get_atlas(3, 6)
    rels = atlas.exchange_relations() + atlas.quasi_commutation_relations()
    assert verify_preservation(3, 6, i, rels, sign=sign).passed


def test_preservation_rejects_invalid_relation():
    bad = Relation("bad", "plucker", P("D(1,3)*D(2,4)"), P("D(1,2)*D(3,4) + D(1,4)*D(2,3)"))
    rep = verify_preservation(2, 4, 1, [bad])
    assert not rep.passed
    assert "rejected" in str(rep.checks[0].detail)


words = st.lists(st.sampled_from(["s1", "s2", "s1^-1", "s2^-1"]), min_size=1, max_size=4).map(" ".join)


@settings(max_examples=25)
@given(words, st.sampled_from(["D(1,3,5)", "D(2,4,6)", "D(1,2,4)", "y", "z", "D(1,5,6)"]))
def test_word_then_inverse_is_identity(w, x):
    inv = str(BraidWord.parse(w).inverse())
    got = apply_sigma(inv, apply_sigma(w, x, 3, 6), 3, 6)
    assert get_atlas(3, 6).table.equal(got, P(x))


@settings(max_examples=25)
@given(words, st.sampled_from(["D(1,3,5)", "D(2,4,6)", "D(1,2,4)", "y", "z"]))
def test_images_are_bar_invariant(w, x):
    atlas = get_atlas(3, 6)
    e = apply_sigma(w, x, 3, 6)
    assert atlas.torus_of(e).is_bar_invariant()
