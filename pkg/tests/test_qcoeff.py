from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from qcluster.errors import NotDivisible, ParseError, DivisionByZero
from qcluster.qcoeff import QCoeff, qpow, twice

coeffs = st.dictionaries(
    st.integers(-6, 6),
    st.one_of(st.integers(-5, 5), st.fractions(min_value=-3, max_value=3, max_denominator=4)),
    max_size=4,
).map(QCoeff)
nonzero_monomials = st.tuples(st.integers(-6, 6), st.sampled_from([1, -1, 2, Fraction(1, 3)])).map(
    lambda t: QCoeff.qhalf(*t)
)


def test_parse_and_render():
    a = QCoeff.parse("3*q^{1/2} - q^{-2}")
    assert a.terms == {1: 3, -4: -1}
    assert str(a) == "3*q^{1/2} - q^{-2}"
    assert QCoeff.parse("q") == qpow(1)
    assert QCoeff.parse("q^{-1}") * QCoeff.parse("q") == 1
    assert QCoeff.parse("1/2*q^{3/2}").terms == {3: Fraction(1, 2)}


def test_twice_exponents():
    assert twice("1/2") == 1
    assert twice(Fraction(-3, 2)) == -3
    assert twice(2) == 4


def test_bar_flips_exponents():
    assert QCoeff.parse("q^{1/2} + 2*q^{-1}").bar() == QCoeff.parse("q^{-1/2} + 2*q")


def test_exact_division():
    num = QCoeff.parse("q^2 - q^{-2}")
    den = QCoeff.parse("q - q^{-1}")
    assert num.divide_exact(den) == QCoeff.parse("q + q^{-1}")
    with pytest.raises(NotDivisible):
        QCoeff.parse("q + 1").divide_exact(QCoeff.parse("q - 1"))
    with pytest.raises(DivisionByZero):
        QCoeff.parse("q").divide_exact(QCoeff())


def test_bad_text():
    with pytest.raises(ParseError):
        QCoeff.parse("q^{1/3}")
    with pytest.raises(ParseError):
        QCoeff.parse("3*")


def test_evaluate_at_one():
    assert QCoeff.parse("3*q^{1/2} - q^{-2}").evaluate(1) == 2


@given(coeffs, coeffs, coeffs)
def test_ring_axioms(a, b, c):
    assert (a + b) * c == a * c + b * c
    assert (a * b) * c == a * (b * c)
    assert a * b == b * a
    assert a - a == 0


@given(coeffs, coeffs)
def test_bar_is_ring_involution(a, b):
    assert (a * b).bar() == a.bar() * b.bar()
    assert a.bar().bar() == a


@given(coeffs)
def test_text_round_trip(a):
    assert QCoeff.parse(str(a)) == a


@given(coeffs, coeffs.filter(bool))
def test_division_inverts_multiplication(a, b):
    assert (a * b).divide_exact(b) == a


@given(nonzero_monomials)
def test_monomial_inverse(m):
    assert m * m.inverse() == 1
