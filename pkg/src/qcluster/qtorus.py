"""Based quantum torus with skew form Λ.

Monomials multiply as ``X^a X^b = q^{Λ(a,b)/2} X^{a+b}``.  Elements are
finite sums ``Σ c_a X^a`` with ``c_a`` in :class:`~qcluster.qcoeff.QCoeff`.
Exponent vectors are plain integer tuples.
"""

from __future__ import annotations

from fractions import Fraction
from itertools import combinations
from typing import Iterable, Sequence, Union

from ._text import Tokens
from .errors import (
    DivisionByZero,
    NotDivisible,
    NotInvertible,
    NotQuasiCommuting,
    NotSkewSymmetric,
    ParseError,
    RankMismatch,
)
from .qcoeff import ONE, ZERO, QCoeff, _parse_atom as _parse_scalar_atom

ExpVec = tuple[int, ...]

__all__ = [
    "SkewForm",
    "TorusElement",
    "monomial_mul",
    "normalized_from_word",
    "exact_left_divide",
    "q_ratio",
]


class SkewForm:
    """Integer skew-symmetric matrix Λ, used as a bilinear form on exponents."""

    __slots__ = ("rows", "rank", "_sparse")

    def __init__(self, matrix: Iterable[Iterable[int]]):
        rows = tuple(tuple(int(v) for v in r) for r in matrix)
        m = len(rows)
        for r in rows:
            if len(r) != m:
                raise NotSkewSymmetric("Λ must be square")
        for i in range(m):
            for j in range(i, m):
                if rows[i][j] != -rows[j][i]:
                    raise NotSkewSymmetric(f"λ[{i}][{j}] = {rows[i][j]} but λ[{j}][{i}] = {rows[j][i]}")
        self.rows = rows
        self.rank = m
        self._sparse = tuple(tuple((j, v) for j, v in enumerate(r) if v) for r in rows)

    @classmethod
    def zero(cls, m: int) -> "SkewForm":
        return cls([[0] * m for _ in range(m)])

    def __call__(self, a: Sequence[int], b: Sequence[int]) -> int:
        """``Λ(a, b) = aᵀ Λ b``."""
        if len(a) != self.rank or len(b) != self.rank:
            raise RankMismatch(f"expected vectors of length {self.rank}")
        total = 0
        sp = self._sparse
        for i, ai in enumerate(a):
            if ai:
                s = 0
                for j, v in sp[i]:
                    bj = b[j]
                    if bj:
                        s += v * bj
                total += ai * s
        return total

    def entry(self, i: int, j: int) -> int:
        return self.rows[i][j]

    def as_lists(self) -> list[list[int]]:
        return [list(r) for r in self.rows]

    def __eq__(self, other) -> bool:
        return isinstance(other, SkewForm) and self.rows == other.rows

    def __hash__(self) -> int:
        return hash(self.rows)

    def __repr__(self) -> str:
        return f"SkewForm({self.as_lists()})"


def _add(a: ExpVec, b: ExpVec) -> ExpVec:
    return tuple(x + y for x, y in zip(a, b))


def _sub(a: ExpVec, b: ExpVec) -> ExpVec:
    return tuple(x - y for x, y in zip(a, b))


def monomial_mul(form: SkewForm, a: Sequence[int], b: Sequence[int]) -> tuple[Fraction, ExpVec]:
    """Return ``(Λ(a,b)/2, a+b)`` so that ``X^a X^b = q^{Λ(a,b)/2} X^{a+b}``."""
    if len(a) != len(b):
        raise RankMismatch("exponent vectors of different length")
    return Fraction(form(a, b), 2), _add(tuple(a), tuple(b))


class TorusElement:
    """Immutable element of the quantum torus attached to ``form``."""

    __slots__ = ("form", "terms", "_h")

    def __init__(self, form: SkewForm, terms: dict[ExpVec, QCoeff] | None = None):
        self.form = form
        clean: dict[ExpVec, QCoeff] = {}
        for a, c in (terms or {}).items():
            a = tuple(int(x) for x in a)
            if len(a) != form.rank:
                raise RankMismatch(f"exponent {a} has length {len(a)}, torus rank is {form.rank}")
            c = QCoeff.coerce(c)
            if c:
                clean[a] = c
        self.terms = clean
        self._h = None

    @classmethod
    def _raw(cls, form: SkewForm, terms: dict[ExpVec, QCoeff]) -> "TorusElement":
        obj = object.__new__(cls)
        obj.form = form
        obj.terms = terms
        obj._h = None
        return obj

    # constructors ---------------------------------------------------------
    @classmethod
    def monomial(cls, form: SkewForm, a: Sequence[int], coeff: Union[QCoeff, int] = 1) -> "TorusElement":
        a = tuple(a)
        if len(a) != form.rank:
            raise RankMismatch(f"exponent {a} has length {len(a)}, torus rank is {form.rank}")
        c = QCoeff.coerce(coeff)
        return cls._raw(form, {a: c} if c else {})

    @classmethod
    def gen(cls, form: SkewForm, i: int) -> "TorusElement":
        """The generator ``X^{e_i}`` (0-based ``i``)."""
        e = [0] * form.rank
        e[i] = 1
        return cls._raw(form, {tuple(e): ONE})

    @classmethod
    def one(cls, form: SkewForm) -> "TorusElement":
        return cls._raw(form, {(0,) * form.rank: ONE})

    @classmethod
    def zero(cls, form: SkewForm) -> "TorusElement":
        return cls._raw(form, {})

    # inspection -----------------------------------------------------------
    @property
    def rank(self) -> int:
        return self.form.rank

    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self) -> bool:
        return bool(self.terms)

    def __len__(self) -> int:
        return len(self.terms)

    def as_monomial(self) -> tuple[ExpVec, QCoeff] | None:
        if len(self.terms) != 1:
            return None
        return next(iter(self.terms.items()))

    def leading(self) -> tuple[ExpVec, QCoeff]:
        """Lex-largest exponent and its coefficient."""
        a = max(self.terms)
        return a, self.terms[a]

    def is_bar_invariant(self) -> bool:
        return all(c == c.bar() for c in self.terms.values())

    def is_integral(self) -> bool:
        return all(c.is_integral() for c in self.terms.values())

    def evaluate(self, values: Sequence[Fraction], t: Fraction | int = 1) -> Fraction:
        """Substitute ``X^{e_i} -> values[i]`` and ``q^{1/2} -> t`` (commutative shadow)."""
        total = Fraction(0)
        for a, c in self.terms.items():
            v = c.evaluate(t)
            for x, e in zip(values, a):
                if e:
                    v *= Fraction(x) ** e
            total += v
        return total

    # arithmetic -----------------------------------------------------------
    def _check(self, other: "TorusElement") -> None:
        if other.form is not self.form and other.form != self.form:
            raise RankMismatch("torus elements over different forms")

    def _coerce(self, other) -> "TorusElement | None":
        if isinstance(other, TorusElement):
            self._check(other)
            return other
        if isinstance(other, (QCoeff, int, Fraction)):
            return TorusElement.monomial(self.form, (0,) * self.rank, other)
        return None

    def __add__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        t = dict(self.terms)
        for a, c in other.terms.items():
            v = t.get(a, ZERO) + c
            if v:
                t[a] = v
            else:
                t.pop(a, None)
        return TorusElement._raw(self.form, t)

    __radd__ = __add__

    def __neg__(self) -> "TorusElement":
        return TorusElement._raw(self.form, {a: -c for a, c in self.terms.items()})

    def __sub__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return other - self

    def scale(self, c: Union[QCoeff, int]) -> "TorusElement":
        c = QCoeff.coerce(c)
        if not c:
            return TorusElement._raw(self.form, {})
        return TorusElement._raw(self.form, {a: v * c for a, v in self.terms.items()})

    def qshift(self, k: int) -> "TorusElement":
        """Multiply by ``q^{k/2}``."""
        if not k:
            return self
        return TorusElement._raw(self.form, {a: c.shift(k) for a, c in self.terms.items()})

    def __mul__(self, other):
        if isinstance(other, (QCoeff, int, Fraction)):
            return self.scale(other)
        if not isinstance(other, TorusElement):
            return NotImplemented
        self._check(other)
        form = self.form
        out: dict[ExpVec, QCoeff] = {}
        for a, ca in self.terms.items():
            for b, cb in other.terms.items():
                s = _add(a, b)
                c = (ca * cb).shift(form(a, b))
                v = out.get(s)
                out[s] = c if v is None else v + c
        return TorusElement._raw(form, {a: c for a, c in out.items() if c})

    def __rmul__(self, other):
        if isinstance(other, (QCoeff, int, Fraction)):
            return self.scale(other)
        return NotImplemented

    def __pow__(self, k: int) -> "TorusElement":
        if k < 0:
            return self.inverse() ** (-k)
        out = TorusElement.one(self.form)
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def inverse(self) -> "TorusElement":
        """Inverse of a unit ``c X^a`` (``c`` a monomial in ``q^{1/2}``)."""
        mono = self.as_monomial()
        if mono is None or mono[1].monomial() is None:
            raise NotInvertible(f"{self} is not a monomial unit of the torus")
        a, c = mono
        return TorusElement._raw(self.form, {tuple(-x for x in a): c.inverse()})

    def bar(self) -> "TorusElement":
        return TorusElement._raw(self.form, {a: c.bar() for a, c in self.terms.items()})

    # comparison -----------------------------------------------------------
    def __eq__(self, other) -> bool:
        if isinstance(other, TorusElement):
            return self.form == other.form and self.terms == other.terms
        if isinstance(other, (QCoeff, int, Fraction)):
            return self == self._coerce(other)
        return NotImplemented

    def __hash__(self) -> int:
        if self._h is None:
            self._h = hash(frozenset(self.terms.items()))
        return self._h

    def key(self) -> frozenset:
        """Hashable canonical form (ignores the form)."""
        return frozenset(self.terms.items())

    # text -----------------------------------------------------------------
    def __str__(self) -> str:
        if not self.terms:
            return "0"
        out: list[str] = []
        for a in sorted(self.terms, reverse=True):
            c = self.terms[a]
            mono = "X[" + ",".join(str(x) for x in a) + "]"
            neg = False
            if c.monomial() is not None:
                e, v = c.monomial()
                if v < 0:
                    neg, c = True, -c
                body = mono if c == 1 else f"{c}*{mono}"
            else:
                body = f"({c})*{mono}"
            if not out:
                out.append(("-" if neg else "") + body)
            else:
                out.append((" - " if neg else " + ") + body)
        return "".join(out)

    def __repr__(self) -> str:
        return f"TorusElement({str(self)!r})"

    @classmethod
    def parse(cls, text: str, form: SkewForm) -> "TorusElement":
        """Parse the form produced by ``str``, e.g. ``q^{1/2}*X[1,0,-2] - X[0,1,0]``."""
        toks = Tokens(text)
        value = _parse_sum(toks, form)
        if not toks.done():
            raise ParseError(f"trailing input in {text!r}")
        return value


def _parse_sum(toks: Tokens, form: SkewForm) -> TorusElement:
    sign = 1
    if toks.at("-") or toks.at("+"):
        sign = -1 if toks.take()[1] == "-" else 1
    total = _parse_product(toks, form).scale(sign)
    while toks.at("+") or toks.at("-"):
        sign = -1 if toks.take()[1] == "-" else 1
        total = total + _parse_product(toks, form).scale(sign)
    return total


def _parse_product(toks: Tokens, form: SkewForm) -> TorusElement:
    value = _parse_atom(toks, form)
    while toks.at("*"):
        toks.take()
        value = value * _parse_atom(toks, form)
    return value


def _parse_atom(toks: Tokens, form: SkewForm) -> TorusElement:
    if toks.peek() == ("id", "X"):
        toks.take()
        toks.expect("[")
        entries = [toks.int_()]
        while toks.at(","):
            toks.take()
            entries.append(toks.int_())
        toks.expect("]")
        return TorusElement.monomial(form, entries)
    return TorusElement.monomial(form, (0,) * form.rank, _parse_scalar_atom(toks))


# ---------------------------------------------------------------------------
# q-commutation, normalized products, division


def q_ratio(u: TorusElement, v: TorusElement) -> int | None:
    """Return ``k`` with ``u = q^{k/2} v``, or ``None`` if no such power exists."""
    if u.terms.keys() != v.terms.keys():
        return None
    if not u.terms:
        return 0
    a = next(iter(u.terms))
    try:
        r = u.terms[a].divide_exact(v.terms[a])
    except NotDivisible:
        return None
    mono = r.monomial()
    if mono is None or mono[1] != 1:
        return None
    k = mono[0]
    for b, c in u.terms.items():
        if c != v.terms[b].shift(k):
            return None
    return k


def commutation_twice(x: TorusElement, y: TorusElement) -> int:
    """``k`` with ``x y = q^{k/2} y x``; raises NotQuasiCommuting otherwise."""
    mx, my = x.as_monomial(), y.as_monomial()
    if mx is not None and my is not None:
        return 2 * x.form(mx[0], my[0])
    k = q_ratio(x * y, y * x)
    if k is None:
        raise NotQuasiCommuting(f"{x} and {y} do not q-commute")
    return k


Factor = Union[TorusElement, Sequence[int]]


def normalized_from_word(
    form: SkewForm,
    factors: Sequence[tuple[Factor, int]],
    commutation: Sequence[Sequence[int]] | None = None,
) -> TorusElement:
    """Bar-invariant normalized product ``[f_1^{k_1} ... f_r^{k_r}]``.

    Equals ``q^{-1/2 Σ_{i<j} k_i k_j c_ij} f_1^{k_1} ... f_r^{k_r}`` where
    ``f_i f_j = q^{c_ij} f_j f_i``.  The exponents ``c_ij`` are read from
    ``commutation`` when given, otherwise discovered by multiplying.
    Negative exponents are only allowed on monomial units.
    """
    elems: list[TorusElement] = []
    pows: list[int] = []
    for f, k in factors:
        if not isinstance(f, TorusElement):
            f = TorusElement.monomial(form, f)
        elif f.form != form:
            raise RankMismatch("factor over a different torus")
        if k:
            elems.append(f)
            pows.append(int(k))
    if not elems:
        return TorusElement.one(form)
    # twice the prefactor exponent: -(1/2) Σ k_i k_j c_ij with c_ij = cc/2
    acc = 0
    for i, j in combinations(range(len(elems)), 2):
        if commutation is not None:
            cc = 2 * commutation[i][j]
        else:
            cc = commutation_twice(elems[i], elems[j])
        acc += pows[i] * pows[j] * cc
    if acc % 2:
        raise NotQuasiCommuting("normalization exponent is not a half-integer")
    out = TorusElement.one(form)
    for f, k in zip(elems, pows):
        out = out * f**k
    return out.qshift(-acc // 2)


def exact_left_divide(divisor: TorusElement, dividend: TorusElement) -> TorusElement:
    """Return ``Y`` with ``divisor * Y == dividend``; raise NotDivisible if none exists."""
    if not divisor.terms:
        raise DivisionByZero("division by zero torus element")
    divisor._check(dividend)
    form = divisor.form
    if not dividend.terms:
        return dividend
    mono = divisor.as_monomial()
    if mono is not None and mono[1].monomial() is not None:
        return divisor.inverse() * dividend
    m = form.rank
    lo = [min(a[j] for a in dividend.terms) - min(a[j] for a in divisor.terms) for j in range(m)]
    hi = [max(a[j] for a in dividend.terms) - max(a[j] for a in divisor.terms) for j in range(m)]
    da, dc = divisor.leading()
    rem = dict(dividend.terms)
    quot: dict[ExpVec, QCoeff] = {}
    while rem:
        b = max(rem)
        e = _sub(b, da)
        if any(e[j] < lo[j] or e[j] > hi[j] for j in range(m)):
            raise NotDivisible(f"{dividend} is not left-divisible by {divisor}")
        try:
            c = rem[b].divide_exact(dc.shift(form(da, e)))
        except NotDivisible:
            raise NotDivisible(f"{dividend} is not left-divisible by {divisor}") from None
        quot[e] = c
        for a, ca in divisor.terms.items():
            s = _add(a, e)
            v = rem.get(s, ZERO) - (ca * c).shift(form(a, e))
            if v:
                rem[s] = v
            else:
                rem.pop(s, None)
    return TorusElement._raw(form, quot)
