"""Quantum matrix algebra C_q[M(k,n)] as a rewriting system, and Plücker expressions.

This module is the independent oracle: it knows nothing about seeds or tori.
Generators ``x_{ij}`` are encoded as ``(i-1)*n + (j-1)``; a word is normal
when its letters are sorted ascending.  Reversed adjacent pairs ``a g``
(``a > g``) are rewritten with the four defining relations

* same row or same column:        ``a g = q^{-1} g a``
* ``i < r, j > l`` for ``g=(i,j), a=(r,l)``: ``a g = g a``
* ``i < r, j < l``:                 ``a g = g a - (q - q^{-1}) x_{il} x_{rj}``

Elements of the localized quantum Grassmannian are written as
:class:`PluckerExpr`: sums of ordered words in Plücker symbols ``D(J)``,
named cluster variables (expanded through a symbol table), normalized
brackets ``[...]`` and inverses of frozen (cyclic interval) symbols.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from functools import lru_cache
from itertools import combinations, permutations
from typing import Iterable, Mapping, Sequence, Union

from ._text import Tokens
from .errors import (
    NotInvertible,
    NotQuasiCommuting,
    ParseError,
    SizeMismatch,
    UnknownSymbol,
)
from .grassmann import KSubset, frozen_subsets, scott_lambda, subset_str, weakly_separated
from .qcoeff import ONE, ZERO, QCoeff, _parse_atom as _parse_scalar_atom, twice

Word = tuple[int, ...]
NCPoly = dict[Word, QCoeff]

Q_MINUS_QINV = QCoeff({2: 1, -2: -1})
QINV = QCoeff.qhalf(-2)

__all__ = [
    "QMatrixAlgebra",
    "algebra",
    "PluckerExpr",
    "SymbolTable",
    "ncpoly_str",
]


def _acc(target: NCPoly, word: Word, c: QCoeff) -> None:
    v = target.get(word)
    v = c if v is None else v + c
    if v:
        target[word] = v
    else:
        target.pop(word, None)


def _inversions(p: Sequence[int]) -> int:
    return sum(1 for a, b in combinations(range(len(p)), 2) if p[a] > p[b])


class QMatrixAlgebra:
    """Normal forms in C_q[M(k,n)], with memoized letter insertion."""

    def __init__(self, k: int, n: int):
        self.k = k
        self.n = n
        self._ins: dict[tuple[Word, int], NCPoly] = {}
        self._words: dict[tuple[KSubset, ...], NCPoly] = {(): {(): ONE}}

    # generators -----------------------------------------------------------
    def gen(self, i: int, j: int) -> int:
        """Letter for ``x_{ij}`` (1-based)."""
        return (i - 1) * self.n + (j - 1)

    def ij(self, letter: int) -> tuple[int, int]:
        r, c = divmod(letter, self.n)
        return r + 1, c + 1

    # rewriting ------------------------------------------------------------
    def insert(self, word: Word, g: int) -> NCPoly:
        """Normal form of ``word * g`` for a normal ``word``."""
        if not word or word[-1] <= g:
            return {word + (g,): ONE}
        key = (word, g)
        hit = self._ins.get(key)
        if hit is not None:
            return hit
        n = self.n
        a = word[-1]
        prefix = word[:-1]
        r, l = divmod(a, n)
        i, j = divmod(g, n)
        out: NCPoly = {}
        coeff = QINV if (i == r or j == l) else ONE
        for w, cw in self.insert(prefix, g).items():
            c = cw * coeff
            for w2, c2 in self.insert(w, a).items():
                _acc(out, w2, c * c2)
        if i < r and j < l:
            low, high = i * n + l, r * n + j
            for w, cw in self.insert(prefix, low).items():
                c = -(cw * Q_MINUS_QINV)
                for w2, c2 in self.insert(w, high).items():
                    _acc(out, w2, c * c2)
        self._ins[key] = out
        return out

    def insert_poly(self, p: Mapping[Word, QCoeff], g: int) -> NCPoly:
        out: NCPoly = {}
        for w, c in p.items():
            for w2, c2 in self.insert(w, g).items():
                _acc(out, w2, c * c2)
        return out

    def mul(self, p: Mapping[Word, QCoeff], r: Mapping[Word, QCoeff]) -> NCPoly:
        out: NCPoly = {}
        for w, c in r.items():
            cur: Mapping[Word, QCoeff] = p
            for g in w:
                cur = self.insert_poly(cur, g)
            for w2, c2 in cur.items():
                _acc(out, w2, c2 * c)
        return out

    def normal_form(
        self,
        p: Mapping[Word, Union[QCoeff, int]] | Word,
        strategy: str = "insert",
        rng: random.Random | None = None,
    ) -> NCPoly:
        """Normal form of a sum of raw words.

        ``strategy`` is ``"insert"`` (memoized letter insertion, the default),
        ``"leftmost"`` (rewrite the first reversed adjacent pair) or
        ``"random"`` (rewrite a random reversed pair); the last two exist to
        test confluence.
        """
        if isinstance(p, tuple):
            p = {p: ONE}
        items = {tuple(w): QCoeff.coerce(c) for w, c in p.items()}
        if strategy == "insert":
            out: NCPoly = {}
            for w, c in items.items():
                cur: NCPoly = {(): ONE}
                for g in w:
                    cur = self.insert_poly(cur, g)
                for w2, c2 in cur.items():
                    _acc(out, w2, c * c2)
            return out
        if strategy not in ("leftmost", "random"):
            raise ValueError(f"unknown strategy {strategy!r}")
        rng = rng or random.Random(0)
        cur = {}
        for w, c in items.items():
            _acc(cur, w, c)
        while True:
            bad = [w for w in cur if any(w[t] > w[t + 1] for t in range(len(w) - 1))]
            if not bad:
                return cur
            w = min(bad) if strategy == "leftmost" else rng.choice(sorted(bad))
            spots = [t for t in range(len(w) - 1) if w[t] > w[t + 1]]
            t = spots[0] if strategy == "leftmost" else rng.choice(spots)
            c = cur.pop(w)
            for w2, c2 in self._swap(w, t).items():
                _acc(cur, w2, c * c2)

    def _swap(self, w: Word, t: int) -> NCPoly:
        """One rewriting step at the reversed pair ``w[t] > w[t+1]``."""
        n = self.n
        a, g = w[t], w[t + 1]
        r, l = divmod(a, n)
        i, j = divmod(g, n)
        head, tail = w[:t], w[t + 2 :]
        out: NCPoly = {}
        coeff = QINV if (i == r or j == l) else ONE
        _acc(out, head + (g, a) + tail, coeff)
        if i < r and j < l:
            _acc(out, head + (i * n + l, r * n + j) + tail, -Q_MINUS_QINV)
        return out

    # minors ---------------------------------------------------------------
    def quantum_minor(self, rows: Sequence[int], cols: Sequence[int]) -> NCPoly:
        """``Σ_σ (-q)^{ℓ(σ)} x_{i_1 j_σ(1)} ... x_{i_l j_σ(l)}`` in normal form."""
        rows, cols = tuple(rows), tuple(cols)
        if len(rows) != len(cols):
            raise SizeMismatch(f"{len(rows)} rows but {len(cols)} columns")
        raw: dict[Word, QCoeff] = {}
        for perm in permutations(range(len(cols))):
            ell = _inversions(perm)
            c = QCoeff.qhalf(2 * ell, (-1) ** ell)
            word = tuple(self.gen(rows[t], cols[perm[t]]) for t in range(len(rows)))
            _acc(raw, word, c)
        return self.normal_form(raw)

    def plucker(self, J: Sequence[int]) -> NCPoly:
        J = tuple(J)
        if len(J) != self.k:
            raise SizeMismatch(f"{J} is not a {self.k}-subset")
        return self.plucker_word((J,))

    def plucker_word(self, symbols: Sequence[KSubset]) -> NCPoly:
        """Normal form of the ordered product ``Δ^{J_1} ... Δ^{J_r}`` (memoized on prefixes)."""
        key = tuple(tuple(J) for J in symbols)
        hit = self._words.get(key)
        if hit is not None:
            return hit
        prev = self.plucker_word(key[:-1])
        last = key[-1]
        if len(last) != self.k:
            raise SizeMismatch(f"{last} is not a {self.k}-subset")
        minor = self._words.get((last,))
        if minor is None:
            minor = self.quantum_minor(range(1, self.k + 1), last)
            self._words[(last,)] = minor
        out = self.mul(prev, minor)
        self._words[key] = out
        return out

    def quasi_commutation_exponent(self, I: Sequence[int], J: Sequence[int]) -> int | None:
        """``c`` with ``Δ^I Δ^J = q^c Δ^J Δ^I``, or ``None`` if they do not q-commute."""
        I, J = tuple(I), tuple(J)
        k = poly_ratio(self.plucker_word((I, J)), self.plucker_word((J, I)))
        if k is None or k % 2:
            return None
        return k // 2

    def clear_cache(self) -> None:
        self._ins.clear()
        self._words = {(): {(): ONE}}


@lru_cache(maxsize=None)
def algebra(k: int, n: int) -> QMatrixAlgebra:
    """Shared algebra instance (and caches) for ``M(k,n)``."""
    return QMatrixAlgebra(k, n)


def poly_ratio(p: Mapping[Word, QCoeff], r: Mapping[Word, QCoeff]) -> int | None:
    """``t`` with ``p = q^{t/2} r`` or ``None``."""
    if p.keys() != r.keys():
        return None
    if not p:
        return 0
    w = next(iter(p))
    try:
        ratio = p[w].divide_exact(r[w])
    except ArithmeticError:
        return None
    mono = ratio.monomial()
    if mono is None or mono[1] != 1:
        return None
    t = mono[0]
    if all(p[u] == r[u].shift(t) for u in p):
        return t
    return None


def ncpoly_str(p: Mapping[Word, QCoeff], n: int) -> str:
    if not p:
        return "0"
    parts = []
    for w in sorted(p):
        mono = "*".join(f"x{g // n + 1}{g % n + 1}" for g in w) or "1"
        parts.append(f"({p[w]})*{mono}")
    return " + ".join(parts)


# ---------------------------------------------------------------------------
# Plücker expressions

Symbol = Union[KSubset, str]
Block = tuple[tuple[Symbol, int], ...]  # length 1: plain factor; longer: normalized bracket
Term = tuple[QCoeff, tuple[Block, ...]]


def _sym_str(s: Symbol) -> str:
    return s if isinstance(s, str) else subset_str(s)


def _pow_str(s: Symbol, e: int) -> str:
    base = _sym_str(s)
    return base if e == 1 else f"{base}^{e}"


@dataclass(frozen=True)
class PluckerExpr:
    """``Σ c_t · (ordered product of factors and brackets)`` over Plücker and named symbols."""

    terms: tuple[Term, ...] = ()

    # constructors ---------------------------------------------------------
    @classmethod
    def symbol(cls, s: Symbol, e: int = 1) -> "PluckerExpr":
        if not isinstance(s, str):
            s = tuple(s)
        return cls(((ONE, (((s, e),),)),))

    @classmethod
    def bracket(cls, factors: Sequence[tuple[Symbol, int]], coeff: Union[QCoeff, int] = 1) -> "PluckerExpr":
        fs = tuple((s if isinstance(s, str) else tuple(s), int(e)) for s, e in factors if e)
        return cls(((QCoeff.coerce(coeff), (fs,) if fs else ()),))

    @classmethod
    def scalar(cls, c: Union[QCoeff, int]) -> "PluckerExpr":
        c = QCoeff.coerce(c)
        return cls(((c, ()),) if c else ())

    # algebra --------------------------------------------------------------
    def __add__(self, other: "PluckerExpr") -> "PluckerExpr":
        return PluckerExpr(self.terms + other.terms)

    def __neg__(self) -> "PluckerExpr":
        return PluckerExpr(tuple((-c, w) for c, w in self.terms))

    def __sub__(self, other: "PluckerExpr") -> "PluckerExpr":
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, (QCoeff, int)):
            return self.scale(other)
        if not isinstance(other, PluckerExpr):
            return NotImplemented
        return PluckerExpr(tuple((c1 * c2, w1 + w2) for c1, w1 in self.terms for c2, w2 in other.terms))

    def __rmul__(self, other):
        if isinstance(other, (QCoeff, int)):
            return self.scale(other)
        return NotImplemented

    def scale(self, c: Union[QCoeff, int]) -> "PluckerExpr":
        c = QCoeff.coerce(c)
        return PluckerExpr(tuple((c * t, w) for t, w in self.terms))

    def simplify(self) -> "PluckerExpr":
        """Merge terms with identical factor words; drop zeros."""
        acc: dict = {}
        order = []
        for c, w in self.terms:
            if w not in acc:
                acc[w] = ZERO
                order.append(w)
            acc[w] = acc[w] + c
        return PluckerExpr(tuple((acc[w], w) for w in order if acc[w]))

    def symbols(self) -> set[Symbol]:
        return {s for _, w in self.terms for b in w for s, _ in b}

    def as_monomial(self) -> tuple[QCoeff, tuple[Block, ...]] | None:
        if len(self.terms) != 1:
            return None
        return self.terms[0]

    # text -----------------------------------------------------------------
    def __str__(self) -> str:
        if not self.terms:
            return "0"
        out = []
        for c, w in self.terms:
            parts = []
            for b in w:
                if len(b) == 1:
                    parts.append(_pow_str(*b[0]))
                else:
                    parts.append("[" + " ".join(_pow_str(s, e) for s, e in b) + "]")
            neg = False
            mono = c.monomial()
            if mono is not None and mono[1] < 0:
                neg, c = True, -c
            if c == 1 and parts:
                body = "*".join(parts)
            else:
                cs = str(c) if c.monomial() is not None else f"({c})"
                body = "*".join([cs] + parts)
            if not out:
                out.append(("-" if neg else "") + body)
            else:
                out.append((" - " if neg else " + ") + body)
        return "".join(out)

    @classmethod
    def parse(cls, text: str) -> "PluckerExpr":
        """Parse e.g. ``q^{3/2}*D(1,2,6)*D(1,5,6)^-1 - [D(1,2,3) D(2,3,4)^-1 D(3,4,5)] + y``."""
        toks = Tokens(text)
        expr = _parse_expr(toks)
        if not toks.done():
            raise ParseError(f"trailing input in {text!r}")
        return expr


def _parse_expr(toks: Tokens) -> PluckerExpr:
    sign = 1
    if toks.at("-") or toks.at("+"):
        sign = -1 if toks.take()[1] == "-" else 1
    total = _parse_term(toks).scale(sign)
    while toks.at("+") or toks.at("-"):
        sign = -1 if toks.take()[1] == "-" else 1
        total = total + _parse_term(toks).scale(sign)
    return total


def _starts_factor(toks: Tokens) -> bool:
    tok = toks.peek()
    if tok is None:
        return False
    return tok[0] in ("num", "id") or tok[1] in ("[", "(")


def _parse_term(toks: Tokens) -> PluckerExpr:
    coeff = ONE
    blocks: list[Block] = []
    while True:
        tok = toks.peek()
        if tok is None:
            break
        if tok == ("p", "["):
            toks.take()
            inner: list[tuple[Symbol, int]] = []
            while not toks.at("]"):
                if toks.at("*"):
                    toks.take()
                    continue
                inner.extend(_parse_symbol_power(toks))
            toks.expect("]")
            blocks.append(tuple(inner))
        elif tok[0] == "id" and tok[1] != "q":
            blocks.append(tuple(_parse_symbol_power(toks)))
        elif tok[0] == "num" or tok[1] == "(" or tok == ("id", "q"):
            coeff = coeff * _parse_scalar_atom(toks)
        else:
            raise ParseError(f"unexpected token {tok[1]!r} in {toks.text!r}")
        if toks.at("*"):
            toks.take()
            continue
        if not _starts_factor(toks):
            break
    return PluckerExpr(((coeff, tuple(blocks)),))


def _parse_symbol_power(toks: Tokens) -> list[tuple[Symbol, int]]:
    kind, name = toks.take()
    if kind != "id":
        raise ParseError(f"expected a symbol, got {name!r} in {toks.text!r}")
    if name == "D":
        toks.expect("(")
        vals = [toks.int_()]
        while toks.at(","):
            toks.take()
            vals.append(toks.int_())
        toks.expect(")")
        sym: Symbol = tuple(vals)
    else:
        sym = name
    e = 1
    if toks.at("^"):
        toks.take()
        ex = toks.exponent()
        if ex.denominator != 1:
            raise ParseError(f"fractional power of {name} in {toks.text!r}")
        e = int(ex)
    return [(sym, e)]


# ---------------------------------------------------------------------------
# evaluation context


@dataclass
class SymbolTable:
    """Everything needed to turn a PluckerExpr into quantum-matrix normal form.

    ``named`` maps variable names to pure Plücker expressions (no inverses).
    """

    k: int
    n: int
    named: dict[str, PluckerExpr] = field(default_factory=dict)
    _comm: dict = field(default_factory=dict, repr=False)

    def __post_init__(self):
        self.frozen = frozen_subsets(self.k, self.n)
        self.frozen_index = {F: t for t, F in enumerate(self.frozen)}
        self.alg = algebra(self.k, self.n)

    def is_frozen(self, s: Symbol) -> bool:
        return not isinstance(s, str) and s in self.frozen_index

    def check_symbol(self, s: Symbol) -> None:
        if isinstance(s, str):
            if s not in self.named:
                raise UnknownSymbol(f"unknown variable {s!r}")
        elif len(s) != self.k or any(not 1 <= x <= self.n for x in s) or list(s) != sorted(set(s)):
            raise UnknownSymbol(f"{subset_str(s)} is not a {self.k}-subset of [1,{self.n}]")

    # q-commutation exponents between symbols ---------------------------------
    def commutation(self, a: Symbol, b: Symbol) -> int:
        """``c`` with ``a b = q^c b a``."""
        key = (a, b)
        hit = self._comm.get(key)
        if hit is not None:
            return hit
        c = self._commutation(a, b)
        self._comm[key] = c
        self._comm[(b, a)] = -c
        return c

    def _commutation(self, a: Symbol, b: Symbol) -> int:
        if a == b:
            return 0
        if not isinstance(a, str) and not isinstance(b, str) and weakly_separated(a, b):
            return scott_lambda(a, b)
        if self.is_frozen(a) and isinstance(b, str):
            return self._frozen_vs(a, self.named[b])
        if self.is_frozen(b) and isinstance(a, str):
            return -self._frozen_vs(b, self.named[a])
        pa = self.numerator(PluckerExpr.symbol(a) * PluckerExpr.symbol(b))
        pb = self.numerator(PluckerExpr.symbol(b) * PluckerExpr.symbol(a))
        t = poly_ratio(pa, pb)
        if t is None or t % 2:
            raise NotQuasiCommuting(f"{_sym_str(a)} and {_sym_str(b)} do not q-commute")
        return t // 2

    def _frozen_vs(self, F: KSubset, e: PluckerExpr) -> int:
        vals = set()
        for _, w in e.terms:
            vals.add(sum(scott_lambda(F, s) * p for b in w for s, p in b))
        if len(vals) != 1:
            raise NotQuasiCommuting(f"{subset_str(F)} does not q-commute with {e}")
        return vals.pop()

    # flattening -----------------------------------------------------------
    def flatten(self, e: PluckerExpr) -> list[tuple[QCoeff, tuple[tuple[Symbol, int], ...]]]:
        """Expand brackets (normalization prefactors) and named variables.

        Returns terms whose words contain Plücker symbols only; negative
        powers are allowed only on frozen symbols.
        """
        out = []
        for c, blocks in e.terms:
            shift = 0  # twice the q-exponent
            word: list[tuple[Symbol, int]] = []
            for b in blocks:
                for s, p in b:
                    self.check_symbol(s)
                    if p < 0 and not self.is_frozen(s):
                        raise NotInvertible(f"{_sym_str(s)} is not a frozen variable and cannot be inverted")
                if len(b) > 1:
                    for (s1, p1), (s2, p2) in combinations(b, 2):
                        shift -= p1 * p2 * self.commutation(s1, s2)
                word.extend(b)
            partial = [(c.shift(shift), ())]
            for s, p in word:
                if isinstance(s, str):
                    expansion = self.flatten(self.named[s])
                    for _ in range(p):
                        partial = [(c1 * c2, w1 + w2) for c1, w1 in partial for c2, w2 in expansion]
                else:
                    partial = [(c1, w1 + ((s, p),)) for c1, w1 in partial]
            out.extend(partial)
        return out

    def numerator(self, e: PluckerExpr) -> NCPoly:
        num, _ = self.to_ncpoly(e)
        return num

    def to_ncpoly(self, e: PluckerExpr) -> tuple[NCPoly, tuple[int, ...]]:
        """``(N, v)`` with ``e = N · X^{-v}`` and ``N`` in normal form.

        Frozen letters q-commute with every Plücker coordinate, so in each
        term they are moved to the right end and merged into a single frozen
        monomial.  ``v`` is chosen so that every term keeps a nonnegative
        frozen part and no frozen factor is common to all terms (entries of
        ``v`` may be negative when one is).
        """
        nf = len(self.frozen)
        prepared = []
        for c, word in self.flatten(e):
            shift = 0
            letters: list[KSubset] = []
            net = [0] * nf
            pending: list[tuple[KSubset, int]] = []  # frozen powers seen so far, in order
            for s, p in word:
                if self.is_frozen(s):
                    pending.append((s, p))
                    continue
                for _ in range(p):
                    # F^e s = q^{e λ(F,s)} s F^e
                    for F, m in pending:
                        shift += 2 * m * scott_lambda(F, s)
                    letters.append(s)
            # ordered product of the frozen powers is q^{h/2} X^{net}
            h = 0
            for (F1, m1), (F2, m2) in combinations(pending, 2):
                h += m1 * m2 * scott_lambda(F1, F2)
            for F, m in pending:
                net[self.frozen_index[F]] += m
            prepared.append((c.shift(shift + h), tuple(letters), tuple(net)))
        if not prepared:
            return {}, (0,) * nf
        top = tuple(max(-t[2][i] for t in prepared) for i in range(nf))
        num: NCPoly = {}
        for c, letters, net in prepared:
            # X^{net} = q^{Λ(u, top)/2} X^{u} X^{-top} with u = net + top >= 0;
            # X^{u} = q^{-(1/2)Σ_{s<t} u_s u_t λ_st} F^u ordered
            u = [a + b for a, b in zip(net, top)]
            t2 = 0
            for s in range(nf):
                if not u[s]:
                    continue
                for t in range(nf):
                    if top[t]:
                        t2 += u[s] * top[t] * scott_lambda(self.frozen[s], self.frozen[t])
            for s, t in combinations(range(nf), 2):
                if u[s] and u[t]:
                    t2 -= u[s] * u[t] * scott_lambda(self.frozen[s], self.frozen[t])
            full = letters + tuple(F for s, F in enumerate(self.frozen) for _ in range(u[s]))
            coeff = c.shift(t2)
            for w, cw in self.alg.plucker_word(full).items():
                _acc(num, w, coeff * cw)
        return num, top

    def equal(self, a: PluckerExpr, b: PluckerExpr) -> bool:
        num, _ = self.to_ncpoly(a - b)
        return not num

    def evaluate(self, e: PluckerExpr, values: Mapping[KSubset, object], t=1):
        """Commutative shadow: substitute ``q^{1/2} -> t`` and ``Δ^J -> values[J]``."""
        from fractions import Fraction

        total = Fraction(0)
        for c, word in self.flatten(e):
            v = c.evaluate(t)
            for s, p in word:
                v *= Fraction(values[s]) ** p
            total += v
        return total


def expr_equal(a: PluckerExpr, b: PluckerExpr, table: SymbolTable) -> bool:
    return table.equal(a, b)


def plucker_to_ncpoly(e: PluckerExpr, table: SymbolTable) -> tuple[NCPoly, tuple[int, ...]]:
    return table.to_ncpoly(e)
