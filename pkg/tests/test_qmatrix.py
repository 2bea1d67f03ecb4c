import random
from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from qcluster.errors import ParseError, SizeMismatch, UnknownSymbol
from qcluster.grassmann import plucker_values, random_sample
from qcluster.qcoeff import QCoeff
from qcluster.qmatrix import PluckerExpr, QMatrixAlgebra, SymbolTable, algebra

P = PluckerExpr.parse


def at_one(poly, mat, n):
    """Commutative (q = 1) value of a normal-form polynomial at a matrix."""
    total = Fraction(0)
    for word, c in poly.items():
        v = c.evaluate(1)
        for g in word:
            r, col = divmod(g, n)
            v *= mat[r][col]
        total += v
    return total


def test_defining_relations():
    alg = QMatrixAlgebra(2, 2)
    x = alg.gen
    q = QCoeff.parse("q")
    # x12 x11 = q^-1 x11 x12
    assert alg.normal_form((x(1, 2), x(1, 1))) == {(x(1, 1), x(1, 2)): q.inverse()}
    # x22 x11 = x11 x22 - (q - q^-1) x12 x21
    got = alg.normal_form((x(2, 2), x(1, 1)))
    assert got == {(x(1, 1), x(2, 2)): QCoeff.const(1), (x(1, 2), x(2, 1)): -(q - q.inverse())}
    # x21 x12 = x12 x21 (no q)
    assert alg.normal_form((x(2, 1), x(1, 2))) == {(x(1, 2), x(2, 1)): QCoeff.const(1)}


def test_quantum_determinant_is_central():
    alg = QMatrixAlgebra(2, 2)
    det = alg.plucker((1, 2))
    for g in range(4):
        left = alg.mul({(g,): QCoeff.const(1)}, det)
        right = alg.mul(det, {(g,): QCoeff.const(1)})
        assert left == right


def test_minors_specialize_to_determinants():
    rng = random.Random(0)
    for k, n in [(2, 4), (3, 6)]:
        alg = algebra(k, n)
        mat = random_sample(rng, k, n)
        vals = plucker_values(mat, k, n)
        for J, v in vals.items():
            assert at_one(alg.plucker(J), mat, n) == v


def test_gr24_relations():
    t = SymbolTable(2, 4)
    assert t.equal(P("D(1,3)*D(2,4)"), P("q^{-1}*D(1,2)*D(3,4) + q*D(1,4)*D(2,3)"))
    assert t.equal(P("D(1,4)*D(2,3)"), P("D(2,3)*D(1,4)"))
    assert t.equal(P("D(1,2)*D(3,4)"), P("q^2*D(3,4)*D(1,2)"))
    # a corrupted relation is rejected
    assert not t.equal(P("D(1,3)*D(2,4)"), P("q*D(1,2)*D(3,4) + q*D(1,4)*D(2,3)"))


def test_quasi_commutation_exponents():
    alg = algebra(3, 6)
    assert alg.quasi_commutation_exponent((1, 2, 3), (1, 4, 5)) == 2
    assert alg.quasi_commutation_exponent((1, 2, 4), (1, 3, 4)) == 1
    assert alg.quasi_commutation_exponent((1, 2, 4), (1, 3, 5)) is None
    assert algebra(2, 4).quasi_commutation_exponent((1, 3), (2, 4)) is None


def test_bracket_and_inverse_frozen():
    t = SymbolTable(3, 6)
    lhs = P("[D(1,2,3) D(2,3,4)^-1 D(3,4,5)]*D(2,3,4)")
    # Λ(123,234) + Λ(345,234) = 1 - 1 = 0, and [D123 D345] = q^{-1} D123 D345
    assert t.equal(lhs, P("q^{-1}*D(1,2,3)*D(3,4,5)"))
    assert not t.equal(lhs, P("D(1,2,3)*D(3,4,5)"))


def test_expression_text():
    e = P("q^{3/2} * D(1,2,6) * D(1,5,6)^-1 * D(1,4,5) - [D(1,2,3) z]")
    assert P(str(e)) == e
    with pytest.raises(ParseError):
        P("D(1,2")
    with pytest.raises(SizeMismatch):
        algebra(3, 6).plucker((1, 2))
    with pytest.raises(UnknownSymbol):
        SymbolTable(2, 4).equal(P("D(1,2,3)"), P("D(1,2,3)"))


@given(st.integers(0, 10**6), st.sampled_from([(2, 4), (3, 6), (2, 5)]), st.integers(2, 6))
def test_rewriting_is_confluent(seed, kn, length):
    rng = random.Random(seed)
    k, n = kn
    alg = algebra(k, n)
    word = tuple(rng.randrange(k * n) for _ in range(length))
    ref = alg.normal_form(word)
    assert alg.normal_form(word, "leftmost") == ref
    assert alg.normal_form(word, "random", random.Random(seed)) == ref


@given(st.integers(0, 10**6))
def test_normal_form_is_associative(seed):
    rng = random.Random(seed)
    alg = algebra(2, 4)
    a, b, c = ({tuple(rng.randrange(8) for _ in range(rng.randint(1, 3))): QCoeff.const(1)} for _ in range(3))
    a, b, c = alg.normal_form(a), alg.normal_form(b), alg.normal_form(c)
    assert alg.mul(alg.mul(a, b), c) == alg.mul(a, alg.mul(b, c))
