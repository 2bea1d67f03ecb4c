"""Exact Laurent polynomials in ``q^{1/2}`` with rational coefficients.

Exponents are stored doubled (``q^{k/2}`` has key ``k``), so every key is an
ordinary integer and the ring is just ``Q[t, t^-1]`` with ``t = q^{1/2}``.
"""

from __future__ import annotations

from fractions import Fraction
from numbers import Rational
from typing import Iterator, Mapping, Union

from ._text import Tokens
from .errors import DivisionByZero, NotDivisible, ParseError

Number = Union[int, Fraction]


def _norm(v: Number) -> Number:
    if type(v) is Fraction and v.denominator == 1:
        return v.numerator
    return v


def twice(e: Union[int, Fraction, str]) -> int:
    """Doubled integer form of a half-integer exponent."""
    f = Fraction(e)
    d = 2 * f
    if d.denominator != 1:
        raise ParseError(f"{e} is not a half-integer")
    return d.numerator


class QCoeff:
    """Immutable element of ``Q[q^{1/2}, q^{-1/2}]``."""

    __slots__ = ("_t", "_h")

    def __init__(self, terms: Mapping[int, Number] | None = None):
        t: dict[int, Number] = {}
        if terms:
            for e, c in terms.items():
                if c:
                    t[int(e)] = _norm(Fraction(c) if not isinstance(c, int) else c)
        self._t = t
        self._h = None

    @classmethod
    def _raw(cls, t: dict[int, Number]) -> "QCoeff":
        obj = object.__new__(cls)
        obj._t = t
        obj._h = None
        return obj

    # constructors ---------------------------------------------------------
    @classmethod
    def const(cls, c: Number) -> "QCoeff":
        return cls._raw({0: _norm(c)} if c else {})

    @classmethod
    def qhalf(cls, k: int, c: Number = 1) -> "QCoeff":
        """``c * q^{k/2}``."""
        return cls._raw({k: _norm(c)} if c else {})

    @classmethod
    def coerce(cls, x: Union["QCoeff", Number]) -> "QCoeff":
        if isinstance(x, QCoeff):
            return x
        if isinstance(x, Rational):
            return cls.const(Fraction(x) if not isinstance(x, int) else x)
        raise TypeError(f"cannot coerce {type(x).__name__} to QCoeff")

    # inspection -----------------------------------------------------------
    @property
    def terms(self) -> dict[int, Number]:
        return dict(self._t)

    def items(self) -> Iterator[tuple[int, Number]]:
        return iter(self._t.items())

    def is_zero(self) -> bool:
        return not self._t

    def __bool__(self) -> bool:
        return bool(self._t)

    def __len__(self) -> int:
        return len(self._t)

    def monomial(self) -> tuple[int, Number] | None:
        """``(k, c)`` if ``self == c q^{k/2}``, else ``None``."""
        if len(self._t) != 1:
            return None
        return next(iter(self._t.items()))

    def is_integral(self) -> bool:
        return all(type(c) is int for c in self._t.values())

    def min_exp(self) -> int:
        return min(self._t)

    def max_exp(self) -> int:
        return max(self._t)

    def coefficient(self, k: int) -> Number:
        return self._t.get(k, 0)

    def evaluate(self, t: Number) -> Fraction:
        """Substitute ``q^{1/2} = t``."""
        t = Fraction(t)
        return sum((Fraction(c) * t**e for e, c in self._t.items()), Fraction(0))

    # ring structure -------------------------------------------------------
    def __add__(self, other):
        if not isinstance(other, QCoeff):
            if not isinstance(other, Rational):
                return NotImplemented
            other = QCoeff.coerce(other)
        if not other._t:
            return self
        if not self._t:
            return other
        t = dict(self._t)
        for e, c in other._t.items():
            v = t.get(e, 0) + c
            if v:
                t[e] = _norm(v)
            else:
                t.pop(e, None)
        return QCoeff._raw(t)

    __radd__ = __add__

    def __neg__(self) -> "QCoeff":
        return QCoeff._raw({e: -c for e, c in self._t.items()})

    def __sub__(self, other):
        if not isinstance(other, QCoeff):
            if not isinstance(other, Rational):
                return NotImplemented
            other = QCoeff.coerce(other)
        return self + (-other)

    def __rsub__(self, other):
        return QCoeff.coerce(other) - self

    def __mul__(self, other):
        if not isinstance(other, QCoeff):
            if not isinstance(other, Rational):
                return NotImplemented
            if not other:
                return QCoeff._raw({})
            return QCoeff._raw({e: _norm(c * other) for e, c in self._t.items()})
        a, b = self._t, other._t
        if len(a) == 1 and len(b) == 1:
            (ea, ca), = a.items()
            (eb, cb), = b.items()
            return QCoeff._raw({ea + eb: _norm(ca * cb)})
        t: dict[int, Number] = {}
        for ea, ca in a.items():
            for eb, cb in b.items():
                e = ea + eb
                t[e] = t.get(e, 0) + ca * cb
        return QCoeff._raw({e: _norm(c) for e, c in t.items() if c})

    __rmul__ = __mul__

    def shift(self, k: int) -> "QCoeff":
        """Multiply by ``q^{k/2}``."""
        if not k:
            return self
        return QCoeff._raw({e + k: c for e, c in self._t.items()})

    def __pow__(self, p: int) -> "QCoeff":
        if p < 0:
            return self.inverse() ** (-p)
        out = QCoeff.const(1)
        base = self
        while p:
            if p & 1:
                out = out * base
            base = base * base
            p >>= 1
        return out

    def inverse(self) -> "QCoeff":
        mono = self.monomial()
        if mono is None:
            if not self._t:
                raise DivisionByZero("inverse of zero")
            raise NotDivisible(f"{self} is not a unit")
        e, c = mono
        return QCoeff._raw({-e: _norm(1 / Fraction(c))})

    def bar(self) -> "QCoeff":
        """Bar involution ``q^{1/2} -> q^{-1/2}``."""
        return QCoeff._raw({-e: c for e, c in self._t.items()})

    def divide_exact(self, den: "QCoeff") -> "QCoeff":
        """Return ``c`` with ``c * den == self``; raise NotDivisible if none exists."""
        den = QCoeff.coerce(den)
        if not den._t:
            raise DivisionByZero("division by the zero coefficient")
        if not self._t:
            return self
        mono = den.monomial()
        if mono is not None:
            e, c = mono
            inv = 1 / Fraction(c)
            return QCoeff._raw({k - e: _norm(v * inv) for k, v in self._t.items()})
        # long division from the top degree; the quotient must live in
        # [min(num) - min(den), max(num) - max(den)]
        lo = self.min_exp() - den.min_exp()
        dmax = den.max_exp()
        lead = Fraction(den._t[dmax])
        rem = dict(self._t)
        quot: dict[int, Number] = {}
        while rem:
            top = max(rem)
            e = top - dmax
            if e < lo:
                raise NotDivisible(f"{self} is not divisible by {den}")
            c = _norm(Fraction(rem[top]) / lead)
            quot[e] = c
            for k, v in den._t.items():
                key = k + e
                nv = rem.get(key, 0) - c * v
                if nv:
                    rem[key] = _norm(nv)
                else:
                    rem.pop(key, None)
        return QCoeff._raw(quot)

    # comparison -----------------------------------------------------------
    def __eq__(self, other) -> bool:
        if isinstance(other, QCoeff):
            return self._t == other._t
        if isinstance(other, Rational):
            return self._t == ({0: other} if other else {})
        return NotImplemented

    def __hash__(self) -> int:
        if self._h is None:
            self._h = hash(frozenset(self._t.items()))
        return self._h

    # text -----------------------------------------------------------------
    def __str__(self) -> str:
        if not self._t:
            return "0"
        parts: list[str] = []
        for e in sorted(self._t, reverse=True):
            c = self._t[e]
            neg = c < 0
            a = -c if neg else c
            if e == 0:
                body = str(a)
            else:
                ex = Fraction(e, 2)
                mono = "q" if ex == 1 else f"q^{{{ex}}}"
                body = mono if a == 1 else f"{a}*{mono}"
            if not parts:
                parts.append(("-" if neg else "") + body)
            else:
                parts.append((" - " if neg else " + ") + body)
        return "".join(parts)

    def __repr__(self) -> str:
        return f"QCoeff({str(self)!r})"

    @classmethod
    def parse(cls, text: str) -> "QCoeff":
        """Parse e.g. ``3*q^{1/2} - q^{-2}`` or ``(q - q^{-1})*q``."""
        toks = Tokens(text)
        value = _parse_sum(toks)
        if not toks.done():
            raise ParseError(f"trailing input in {text!r}")
        return value


def qpow(e: Union[int, Fraction, str]) -> QCoeff:
    """The monomial ``q^e`` for a half-integer ``e``."""
    return QCoeff.qhalf(twice(e))


ZERO = QCoeff._raw({})
ONE = QCoeff._raw({0: 1})


def _parse_sum(toks: Tokens) -> QCoeff:
    sign = 1
    if toks.at("-") or toks.at("+"):
        sign = -1 if toks.take()[1] == "-" else 1
    total = _parse_product(toks) * sign
    while toks.at("+") or toks.at("-"):
        sign = -1 if toks.take()[1] == "-" else 1
        total = total + _parse_product(toks) * sign
    return total


def _parse_product(toks: Tokens) -> QCoeff:
    value = _parse_atom(toks)
    while toks.at("*"):
        toks.take()
        value = value * _parse_atom(toks)
    return value


def _parse_atom(toks: Tokens) -> QCoeff:
    tok = toks.peek()
    if tok is None:
        raise ParseError(f"unexpected end of input in {toks.text!r}")
    if tok == ("p", "("):
        toks.take()
        inner = _parse_sum(toks)
        toks.expect(")")
        return inner
    if tok[0] == "num":
        return QCoeff.const(toks.rational())
    if tok == ("id", "q"):
        toks.take()
        if toks.at("^"):
            toks.take()
            return qpow(toks.exponent())
        return QCoeff.qhalf(2)
    raise ParseError(f"unexpected token {tok[1]!r} in {toks.text!r}")
