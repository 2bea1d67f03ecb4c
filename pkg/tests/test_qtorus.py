import pytest
from hypothesis import given
from hypothesis import strategies as st

from qcluster.errors import NotDivisible, NotSkewSymmetric
from qcluster.qcoeff import QCoeff
from qcluster.qtorus import SkewForm, TorusElement, exact_left_divide, normalized_from_word, q_ratio

F2 = SkewForm([[0, 1], [-1, 0]])
F3 = SkewForm([[0, 1, -2], [-1, 0, 1], [2, -1, 0]])


def x(i, form=F3):
    return TorusElement.gen(form, i)


def test_commutation_rule():
    a, b = x(0, F2), x(1, F2)
    assert a * b == (b * a).qshift(2)  # X1 X2 = q X2 X1
    assert str(a * b) == "q^{1/2}*X[1,1]"
    assert normalized_from_word(F2, [(a, 1), (b, 1)]) == TorusElement.monomial(F2, (1, 1))


def test_form_must_be_skew():
    with pytest.raises(NotSkewSymmetric):
        SkewForm([[0, 1], [1, 0]])


def test_parse_round_trip():
    e = x(0) * x(1) + x(2).inverse() - x(1).qshift(3)
    assert TorusElement.parse(str(e), F3) == e


def test_left_division():
    a = x(0) + x(1)
    b = x(1) * x(2) - x(0).qshift(1)
    assert exact_left_divide(a, a * b) == b
    with pytest.raises(NotDivisible):
        exact_left_divide(x(0) + x(1), x(0) + x(2))


def test_q_ratio():
    a = x(0) + x(1)
    assert q_ratio(a.qshift(3), a) == 3
    assert q_ratio(a, x(0)) is None


exps = st.tuples(st.integers(-2, 2), st.integers(-2, 2), st.integers(-2, 2))
elements = st.lists(
    st.tuples(exps, st.integers(-3, 3), st.integers(-2, 2)), min_size=1, max_size=3
).map(lambda ts: sum((TorusElement.monomial(F3, a, QCoeff.qhalf(s, c)) for a, s, c in ts if c), TorusElement.zero(F3)))


@given(elements, elements, elements)
def test_associative_and_distributive(a, b, c):
    assert (a * b) * c == a * (b * c)
    assert a * (b + c) == a * b + a * c


@given(elements, elements)
def test_bar_is_antiautomorphism(a, b):
    assert (a * b).bar() == b.bar() * a.bar()


@given(exps)
def test_monomials_are_bar_invariant(a):
    assert TorusElement.monomial(F3, a).is_bar_invariant()


@given(elements.filter(bool), elements)
def test_division_inverts_multiplication(a, b):
    assert exact_left_divide(a, a * b) == b


@given(st.permutations([(0, 1), (1, 2), (2, -1)]))
def test_normalized_product_order_free(facs):
    facs = [(x(i), k) for i, k in facs]
    base = normalized_from_word(F3, [(x(0), 1), (x(1), 2), (x(2), -1)])
    got = normalized_from_word(F3, facs)
    assert got == base and got.is_bar_invariant()
