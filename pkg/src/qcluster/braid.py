"""Braid group action σ_i on C_q[Gr(k,n)].

σ_i is given on the cluster x(i) and the frozen variables: a mutable
``Δ^I`` goes to ``Δ^{σ̄_i(I)}``, a frozen ``Δ^{[j,j+k-1]}`` with
``j ≡ i+1 (mod d)`` goes to ``[Δ^{[j-1,j+k-2]} (Δ^{[j,j+k-1]})^{-1} Δ^{[j+1,j+k]}]``
and the other frozen variables are fixed.  Images of all other cluster
variables are obtained by replaying mutations from x(i) in the ambient
torus with the images substituted; each result is then factored as
``q^{t/2} [F^p u]`` (frozen monomial times one cluster variable).
"""

from __future__ import annotations

import random
import re
from collections import deque
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations
from math import gcd
from typing import Mapping, Sequence

import numpy as np

from .atlas import GrassmannAtlas, Relation, get_atlas, symbol_str
from .errors import (
    FactorizationFailed,
    FrameFormMismatch,
    InvalidParams,
    NotBijective,
    NotInvertible,
    ParseError,
    UnknownSymbol,
)
from .grassmann import (
    KSubset,
    frozen_subsets,
    interval,
    plucker_values,
    random_sample,
    window_oracle,
    x_i_seed,
)
from .qcoeff import QCoeff
from .qmatrix import PluckerExpr, Symbol
from .qseed import QuantumSeed, cluster_key, mutate
from .qtorus import TorusElement, commutation_twice, exact_left_divide, normalized_from_word
from .quasihom import QuasiHomData, build_R, check_mutation_compat, check_quasi_hom
from .report import Report

__all__ = [
    "BraidGenerator",
    "BraidWord",
    "BracketMonomial",
    "SigmaTable",
    "sigma_bar",
    "R_sigma",
    "sigma_base_images",
    "extend_sigma_table",
    "sigma_table",
    "invert_sigma",
    "apply_table",
    "apply_sigma",
    "sigma_image_seed",
    "check_sigma_quasi_hom",
    "verify_preservation",
    "verify_braid_relations",
    "verify_inverse",
    "q1_shadow",
    "verify_commuting_sampled",
]


# ---------------------------------------------------------------------------
# braid words


@dataclass(frozen=True)
class BraidGenerator:
    i: int
    sign: int = 1

    def __post_init__(self):
        if self.sign not in (1, -1):
            raise InvalidParams(f"sign must be ±1, got {self.sign}")

    def inverse(self) -> "BraidGenerator":
        return BraidGenerator(self.i, -self.sign)

    def __str__(self) -> str:
        return f"s{self.i}" + ("" if self.sign == 1 else "^-1")


@dataclass(frozen=True)
class BraidWord:
    """A product of generators, written left to right; the rightmost acts first."""

    gens: tuple[BraidGenerator, ...] = ()

    _TOKEN = re.compile(r"s(\d+)(\^(-?1))?$")

    @classmethod
    def parse(cls, text: str) -> "BraidWord":
        gens = []
        for tok in text.replace("*", " ").split():
            m = cls._TOKEN.match(tok)
            if not m:
                raise ParseError(f"bad braid generator {tok!r} in {text!r}")
            gens.append(BraidGenerator(int(m.group(1)), int(m.group(3) or 1)))
        return cls(tuple(gens))

    def inverse(self) -> "BraidWord":
        return BraidWord(tuple(g.inverse() for g in reversed(self.gens)))

    def __str__(self) -> str:
        return " ".join(map(str, self.gens)) or "1"


# ---------------------------------------------------------------------------
# bracket monomials q^{t/2} [F^p u]


@dataclass(frozen=True)
class BracketMonomial:
    """``q^{twice_q/2} [∏ F^{p_F} · u]`` with frozen ``F`` and at most one variable ``u``."""

    twice_q: int
    frozen: tuple[tuple[KSubset, int], ...]
    var: Symbol | None

    @classmethod
    def make(cls, twice_q: int, frozen: Mapping[KSubset, int], var: Symbol | None) -> "BracketMonomial":
        return cls(twice_q, tuple(sorted((F, e) for F, e in frozen.items() if e)), var)

    @classmethod
    def from_expr(cls, e: PluckerExpr, frozen: Sequence[KSubset]) -> "BracketMonomial":
        """Read a single bracket (or plain symbol) with a monomial coefficient."""
        mono = e.as_monomial()
        if mono is None:
            raise FactorizationFailed(f"{e} is not a single term")
        c, blocks = mono
        cm = c.monomial()
        if cm is None or cm[1] != 1:
            raise FactorizationFailed(f"coefficient of {e} is not a power of q^(1/2)")
        fz = set(frozen)
        pf: dict[KSubset, int] = {}
        var = None
        if len(blocks) > 1 and any(len(b) > 1 for b in blocks):
            raise FactorizationFailed(f"{e} is not a single bracket")
        for b in blocks:
            for s, p in b:
                if not isinstance(s, str) and s in fz:
                    pf[s] = pf.get(s, 0) + p
                elif var is None and p == 1:
                    var = s
                else:
                    raise FactorizationFailed(f"{e} has more than one non-frozen factor")
        return cls.make(cm[0], pf, var)

    def factors(self) -> list[tuple[Symbol, int]]:
        out: list[tuple[Symbol, int]] = list(self.frozen)
        if self.var is not None:
            out.append((self.var, 1))
        return out

    def to_expr(self) -> PluckerExpr:
        facs = self.factors()
        c = QCoeff.qhalf(self.twice_q)
        if not facs:
            return PluckerExpr.scalar(c)
        if len(facs) == 1:
            s, p = facs[0]
            return PluckerExpr.symbol(s, p).scale(c)
        return PluckerExpr.bracket(facs, c)

    def __str__(self) -> str:
        return str(self.to_expr())


# ---------------------------------------------------------------------------
# combinatorial data


def _check_i(k: int, n: int, i: int) -> int:
    d = gcd(k, n)
    if d < 2 or not 1 <= i <= d - 1:
        raise InvalidParams(f"need gcd(k,n) >= 2 and 1 <= i <= gcd-1, got k={k}, n={n}, i={i}")
    return d


def sigma_bar(n: int, d: int, i: int) -> dict[int, int]:
    """``∏_j (jd+i, jd+i+1)`` as a map on ``1..n``."""
    if d < 2 or n % d or not 1 <= i <= d - 1:
        raise InvalidParams(f"need d | n, d >= 2 and 1 <= i <= d-1, got n={n}, d={d}, i={i}")
    perm = {a: a for a in range(1, n + 1)}
    for j in range(n // d):
        a = j * d + i
        perm[a], perm[a + 1] = a + 1, a
    return perm


def _apply_perm(perm: Mapping[int, int], I: KSubset) -> KSubset:
    return tuple(sorted(perm[a] for a in I))


def _moved_frozen(k: int, n: int, i: int) -> list[int]:
    """1-based indices ``j`` of frozen intervals ``[j, j+k-1]`` with ``j ≡ i+1 (mod d)``."""
    d = _check_i(k, n, i)
    return [j for j in range(1, n + 1) if (j - i - 1) % d == 0]


def R_sigma(k: int, n: int, i: int) -> QuasiHomData:
    """``R = [[I, 0], [0, L]]``; column ``j`` of ``L`` is ``e_{j-1} - e_j + e_{j+1}`` for moved frozen ``j``."""
    n_mut = (k - 1) * (n - k - 1)
    L = np.eye(n, dtype=np.int64)
    for j in _moved_frozen(k, n, i):
        c = j - 1
        L[c, c] = -1
        L[(c - 1) % n, c] = 1
        L[(c + 1) % n, c] = 1
    return build_R(np.zeros((n, n_mut), dtype=np.int64), L, n_mut)


# ---------------------------------------------------------------------------
# σ tables


@dataclass
class SigmaTable:
    """Images of cluster variables under σ_i (``sign = 1``) or σ_i^{-1} (``sign = -1``)."""

    k: int
    n: int
    i: int
    sign: int
    images: dict[Symbol, BracketMonomial] = field(default_factory=dict)
    torus: dict[Symbol, TorusElement] = field(default_factory=dict)
    stats: dict = field(default_factory=dict)

    @property
    def generator(self) -> BraidGenerator:
        return BraidGenerator(self.i, self.sign)

    def __getitem__(self, s: Symbol) -> BracketMonomial:
        try:
            return self.images[s]
        except KeyError:
            raise UnknownSymbol(f"no image of {symbol_str(s)} under {self.generator}") from None

    def __contains__(self, s: Symbol) -> bool:
        return s in self.images

    def expr(self, s: Symbol) -> PluckerExpr:
        return self[s].to_expr()

    def rows(self) -> list[tuple[str, str]]:
        return [(symbol_str(s), str(b)) for s, b in sorted(self.images.items(), key=lambda kv: _sort_key(kv[0]))]


def _sort_key(s: Symbol):
    return (1, s, ()) if isinstance(s, str) else (0, "", s)


def _frozen_image(k: int, n: int, j: int) -> BracketMonomial:
    return BracketMonomial.make(
        0, {interval(j - 1 if j > 1 else n, k, n): 1, interval(j, k, n): -1, interval(j % n + 1, k, n): 1}, None
    )


def sigma_base_images(k: int, n: int, i: int, atlas: GrassmannAtlas | None = None) -> SigmaTable:
    """σ_i on the labels of x(i) and on the frozen variables."""
    d = _check_i(k, n, i)
    atlas = atlas or get_atlas(k, n)
    perm = sigma_bar(n, d, i)
    seed = x_i_seed(k, n, i)
    table = SigmaTable(k, n, i, 1)
    moved = set(_moved_frozen(k, n, i))
    for j, F in enumerate(frozen_subsets(k, n), start=1):
        img = _frozen_image(k, n, j) if j in moved else BracketMonomial.make(0, {F: 1}, None)
        table.images[F] = img
        table.torus[F] = atlas.torus_of(img.to_expr())
    for I in seed.meta["subsets"][: seed.n_mut]:
        J = _apply_perm(perm, I)
        table.images[I] = BracketMonomial.make(0, {}, J)
        table.torus[I] = atlas.var[J]
    return table


def extend_sigma_table(
    k: int,
    n: int,
    i: int,
    targets: Sequence[Symbol] | None = None,
    atlas: GrassmannAtlas | None = None,
    check: bool = True,
    max_seeds: int = 10_000,
) -> SigmaTable:
    """σ_i on every cluster variable reachable from x(i), by mutation replay.

    ``σ(x'_r) = σ(x_r)^{-1} (q^{Λ(e_r,[b_r]_+)/2}[σ(x)^{[b_r]_+}] + q^{Λ(e_r,[-b_r]_+)/2}[σ(x)^{[-b_r]_+}])``
    is evaluated in the ambient torus by exact division.  With ``check`` the
    images in each visited cluster are tested to q-commute as prescribed by
    Λ, and variables reached along different paths must get the same image.

    Over an atlas restricted to Plücker clusters (infinite types) the search
    only passes through Plücker clusters, and images whose cluster-variable
    factor is not a Plücker coordinate are listed in ``stats["unfactored"]``
    instead of raising.
    """
    atlas = atlas or get_atlas(k, n)
    table = sigma_base_images(k, n, i, atlas)
    root = x_i_seed(k, n, i)
    labels0 = list(root.meta["subsets"])
    images0 = [table.torus[s] for s in labels0]
    partial = atlas.plucker_only
    wanted = set(targets) if targets is not None else (set(atlas.var) if partial else None)
    seen = {cluster_key(root)}
    queue = deque([(root, labels0, images0)])
    n_replays = n_consistent = 0
    while queue and len(seen) < max_seeds:
        if wanted is not None and wanted <= set(table.torus):
            break
        seed, labels, images = queue.popleft()
        for r in range(seed.n_mut):
            new = mutate(seed, r, check=False)
            key = cluster_key(new)
            label = atlas.label_of.get(new.frame[r].key())
            if label is None:
                if partial:
                    continue
                raise UnknownSymbol(f"variable {new.frame[r]} is not in the atlas")
            b = seed.column(r)
            pos = [max(v, 0) for v in b]
            neg = [max(-v, 0) for v in b]
            er = [int(t == r) for t in range(seed.m)]
            rhs = _bracket(images, pos, seed).qshift(seed.lam(er, pos))
            rhs = rhs + _bracket(images, neg, seed).qshift(seed.lam(er, neg))
            img = exact_left_divide(images[r], rhs)
            n_replays += 1
            if label in table.torus:
                if table.torus[label] != img:
                    raise FactorizationFailed(f"two mutation paths give different images of {symbol_str(label)}")
                n_consistent += 1
            else:
                table.torus[label] = img
            if key in seen:
                continue
            seen.add(key)
            new_images = list(images)
            new_images[r] = img
            new_labels = list(labels)
            new_labels[r] = label
            if check:
                _check_commutation(new, new_images, r)
            queue.append((new, new_labels, new_images))
    unfactored = []
    for s, elem in table.torus.items():
        if s in table.images:
            continue
        try:
            t, p, u = atlas.factor(elem)
        except FactorizationFailed:
            if not partial:
                raise
            unfactored.append(s)
            continue
        table.images[s] = BracketMonomial.make(t, p, u)
    missing = [s for s in wanted or () if s not in table.torus]
    if missing and targets is not None:
        raise UnknownSymbol(f"not reached from x({i}): {[symbol_str(s) for s in missing]}")
    table.stats = {"replays": n_replays, "path_consistency_checks": n_consistent, "clusters": len(seen)}
    if partial:
        table.stats["unreached"] = [symbol_str(s) for s in missing]
        table.stats["unfactored"] = [symbol_str(s) for s in unfactored]
    return table


def _bracket(images: Sequence[TorusElement], exps: Sequence[int], seed: QuantumSeed) -> TorusElement:
    idx = [t for t, a in enumerate(exps) if a]
    if not idx:
        return TorusElement.one(images[0].form)
    comm = [[seed.lam.rows[a][b] for b in idx] for a in idx]
    return normalized_from_word(images[0].form, [(images[t], exps[t]) for t in idx], commutation=comm)


def _check_commutation(seed: QuantumSeed, images: Sequence[TorusElement], r: int) -> None:
    for t in range(seed.m):
        if t == r:
            continue
        c = commutation_twice(images[r], images[t])
        if c != 2 * seed.lam.rows[r][t]:
            raise FrameFormMismatch(
                f"images at positions {r}, {t} q-commute with exponent {c}/2, expected {seed.lam.rows[r][t]}"
            )


def invert_sigma(table: SigmaTable, atlas: GrassmannAtlas | None = None) -> SigmaTable:
    """The table of σ_i^{-1}, solved from ``σ(u) = q^{t/2}[F^p v]``.

    On frozen monomials σ acts by the matrix ``L`` of :func:`R_sigma`; with
    ``M = L^{-1}`` one gets ``σ^{-1}(v) = q^{-t/2}[F^{-Mp} u]``.
    """
    atlas = atlas or get_atlas(table.k, table.n)
    frozen = frozen_subsets(table.k, table.n)
    L = np.array(R_sigma(table.k, table.n, table.i).L, dtype=np.int64)
    M = np.rint(np.linalg.inv(L)).astype(np.int64)
    if not np.array_equal(L @ M, np.eye(len(frozen), dtype=np.int64)):
        raise NotInvertible("frozen part of σ is not unimodular")
    for j, F in enumerate(frozen):
        want = BracketMonomial.make(0, {G: int(L[t, j]) for t, G in enumerate(frozen)}, None)
        if table[F] != want:
            raise FactorizationFailed(f"σ({symbol_str(F)}) = {table[F]} does not match the frozen matrix")
    out = SigmaTable(table.k, table.n, table.i, -table.sign)
    for j, F in enumerate(frozen):
        out.images[F] = BracketMonomial.make(0, {G: int(M[t, j]) for t, G in enumerate(frozen)}, None)
    preimage: dict[Symbol, Symbol] = {}
    for u, img in table.images.items():
        if img.var is None:
            continue
        if img.var in preimage:
            raise NotBijective(f"{symbol_str(img.var)} is hit by both {symbol_str(preimage[img.var])} and {symbol_str(u)}")
        preimage[img.var] = u
        p = np.zeros(len(frozen), dtype=np.int64)
        for F, e in img.frozen:
            p[frozen.index(F)] = e
        mp = M @ p
        out.images[img.var] = BracketMonomial.make(
            -img.twice_q, {G: -int(mp[t]) for t, G in enumerate(frozen)}, u
        )
    missing = [s for s in table.images if s not in out.images]
    if missing:
        raise NotBijective(f"no preimage for {[symbol_str(s) for s in missing]}")
    for s, img in out.images.items():
        out.torus[s] = atlas.torus_of(img.to_expr())
    return out


_TABLES: dict[tuple[int, int, int, int], SigmaTable] = {}


def sigma_table(k: int, n: int, i: int, sign: int = 1) -> SigmaTable:
    """Cached full table of σ_i^{sign}."""
    key = (k, n, i, sign)
    if key not in _TABLES:
        if sign == 1:
            _TABLES[key] = extend_sigma_table(k, n, i)
        else:
            _TABLES[key] = invert_sigma(sigma_table(k, n, i, 1))
    return _TABLES[key]


# ---------------------------------------------------------------------------
# applying σ to expressions


def _image_block(table: SigmaTable, block) -> tuple[int, dict[Symbol, int]]:
    """Flattened image of a normalized block ``[∏ s^p]``: ``(twice_q, exponents)``."""
    shift = 0
    exps: dict[Symbol, int] = {}
    for s, p in block:
        img = table[s]
        if p < 0 and img.var is not None:
            raise NotInvertible(f"σ({symbol_str(s)}) = {img} is not a frozen monomial and cannot be inverted")
        shift += p * img.twice_q
        for F, e in img.frozen:
            exps[F] = exps.get(F, 0) + p * e
        if img.var is not None:
            exps[img.var] = exps.get(img.var, 0) + p
    return shift, {s: e for s, e in exps.items() if e}


def apply_table(table: SigmaTable, e: PluckerExpr) -> PluckerExpr:
    """σ on a Plücker expression: linear, multiplicative, ``σ([∏ x^a]) = [∏ σ(x)^a]``."""
    out = PluckerExpr()
    for c, blocks in e.terms:
        coeff = c
        new_blocks = []
        for b in blocks:
            shift, exps = _image_block(table, b)
            coeff = coeff.shift(shift)
            if exps:
                new_blocks.append(tuple(sorted(exps.items(), key=lambda kv: _sort_key(kv[0]))))
        out = out + PluckerExpr(((coeff, tuple(new_blocks)),))
    return out.simplify()


def apply_sigma(word: BraidWord | str, e: PluckerExpr | str, k: int, n: int) -> PluckerExpr:
    """Apply a braid word (rightmost generator first)."""
    if isinstance(word, str):
        word = BraidWord.parse(word)
    if isinstance(e, str):
        e = PluckerExpr.parse(e)
    for g in reversed(word.gens):
        e = apply_table(sigma_table(k, n, g.i, g.sign), e)
    return e


# ---------------------------------------------------------------------------
# verification


def sigma_image_seed(k: int, n: int, i: int, atlas: GrassmannAtlas | None = None) -> QuantumSeed:
    """The seed whose mutable variables are ``Δ^{σ̄_i(I)}`` for the mutable labels of x(i)."""
    atlas = atlas or get_atlas(k, n)
    d = _check_i(k, n, i)
    perm = sigma_bar(n, d, i)
    src = x_i_seed(k, n, i)
    return atlas.seed_for([_apply_perm(perm, I) for I in src.meta["subsets"][: src.n_mut]])


def check_sigma_quasi_hom(k: int, n: int, i: int, atlas: GrassmannAtlas | None = None) -> Report:
    """R_sigma against x(i) and its image seed, R² = I, and compatibility with every mutation."""
    src = x_i_seed(k, n, i)
    tgt = sigma_image_seed(k, n, i, atlas)
    Rd = R_sigma(k, n, i)
    R = Rd.matrix()
    rep = Report(f"σ_{i} as a quasi-homomorphism on Gr({k},{n})")
    rep.add("R^2 = I", np.array_equal(R @ R, np.eye(R.shape[0], dtype=np.int64)))
    rep.extend(check_quasi_hom(src, tgt, R))
    for r in range(src.n_mut):
        sub = check_mutation_compat(src, tgt, R, r)
        rep.add(f"mutation at {src.labels[r]}", sub.passed, [c.name for c in sub.failures()] or None, "mutation")
    return rep


def verify_preservation(
    k: int,
    n: int,
    i: int,
    relations: Sequence[Relation],
    sign: int = 1,
    jobs: int = 1,
) -> Report:
    """Check each relation with the oracle, then check its image under σ_i^{sign}."""
    atlas = get_atlas(k, n)
    table = sigma_table(k, n, i, sign)
    rep = Report(f"{table.generator} preserves relations in Gr({k},{n})")
    items = [(r.name, r.category, r.lhs, r.rhs) for r in relations]
    results = _map_jobs(_preserve_one, [(k, n, i, sign, it) for it in items], jobs)
    for (name, cat, lhs, rhs), (valid, kept, detail) in zip(items, results):
        if not valid:
            rep.add(name, False, "relation rejected by the oracle before applying σ", cat)
        else:
            rep.add(name, kept, detail, cat)
    return rep


def _preserve_one(args):
    k, n, i, sign, (name, cat, lhs, rhs) = args
    atlas = get_atlas(k, n)
    table = sigma_table(k, n, i, sign)
    if not atlas.table.equal(lhs, rhs):
        return False, False, None
    a, b = apply_table(table, lhs), apply_table(table, rhs)
    return True, atlas.table.equal(a, b), f"{a} = {b}"


def _map_jobs(fn, items, jobs: int):
    if jobs <= 1 or len(items) < 2:
        return [fn(x) for x in items]
    from concurrent.futures import ProcessPoolExecutor

    with ProcessPoolExecutor(max_workers=jobs) as ex:
        return list(ex.map(fn, items, chunksize=max(1, len(items) // (4 * jobs))))


def verify_braid_relations(k: int, n: int, symbols: Sequence[Symbol] | None = None, jobs: int = 1) -> Report:
    """σ_iσ_jσ_i = σ_jσ_iσ_j for ``|i-j| = 1`` and σ_iσ_j = σ_jσ_i for ``|i-j| > 1``."""
    d = gcd(k, n)
    if d < 3:
        raise InvalidParams(f"braid relations need gcd(k,n) >= 3, got {d}")
    atlas = get_atlas(k, n)
    if symbols is None:
        symbols = sorted(set(atlas.var) & set(_plucker_and_named(atlas)), key=_sort_key)
    rep = Report(f"braid relations in Gr({k},{n})")
    pairs = [(a, b) for a in range(1, d) for b in range(a + 1, d)]
    tasks = []
    for a, b in pairs:
        if b - a == 1:
            w1, w2 = f"s{a} s{b} s{a}", f"s{b} s{a} s{b}"
        else:
            w1, w2 = f"s{a} s{b}", f"s{b} s{a}"
        for s in symbols:
            tasks.append((k, n, w1, w2, s))
    for (_, _, w1, w2, s), (same, equal, detail) in zip(tasks, _map_jobs(_braid_one, tasks, jobs)):
        rep.add(f"{w1} = {w2} on {symbol_str(s)}", same and equal, detail, "braid")
    return rep


def _plucker_and_named(atlas: GrassmannAtlas) -> list[Symbol]:
    return [s for s in atlas.var if not isinstance(s, str) or s in atlas.table.named]


def _braid_one(args):
    k, n, w1, w2, s = args
    x = PluckerExpr.symbol(s)
    a = apply_sigma(w1, x, k, n)
    b = apply_sigma(w2, x, k, n)
    same = str(a) == str(b)
    equal = get_atlas(k, n).table.equal(a, b)
    return same, equal, {"lhs": str(a), "rhs": str(b), "structural": same, "oracle": equal}


def verify_inverse(k: int, n: int, i: int) -> Report:
    """σ_i^{-1}σ_i and σ_iσ_i^{-1} fix every tabulated variable."""
    fwd, bwd = sigma_table(k, n, i, 1), sigma_table(k, n, i, -1)
    rep = Report(f"σ_{i} and its inverse on Gr({k},{n})")
    atlas = get_atlas(k, n)
    for s in sorted(fwd.images, key=_sort_key):
        x = PluckerExpr.symbol(s)
        for name, a in (("inv∘σ", apply_table(bwd, apply_table(fwd, x))), ("σ∘inv", apply_table(fwd, apply_table(bwd, x)))):
            rep.add(f"{name} {symbol_str(s)}", atlas.table.equal(a, x), str(a), "inverse")
    return rep


def _rational_sample(rng: random.Random, k: int, n: int) -> list[list[Fraction]]:
    while True:
        mat = [[Fraction(rng.randint(-9, 9), rng.randint(1, 9)) for _ in range(n)] for _ in range(k)]
        if all(plucker_values(mat, k, n).values()):
            return mat


def q1_shadow(k: int, n: int, i: int, samples: int = 5, rng_seed: int = 0, rational: bool = False) -> Report:
    """Compare σ_i^{±1} images at q = 1 with the window map on random matrices.

    ``σ(v)`` evaluated at the Plücker values of ``M`` must equal ``v``
    evaluated at the window image of ``M``; for σ^{-1} the roles swap.
    """
    atlas = get_atlas(k, n)
    fwd, bwd = sigma_table(k, n, i, 1), sigma_table(k, n, i, -1)
    rng = random.Random(rng_seed)
    rep = Report(f"q=1 shadow of σ_{i} on Gr({k},{n})")
    ev = atlas.table.evaluate
    for t in range(samples):
        mat = _rational_sample(rng, k, n) if rational else random_sample(rng, k, n, -9, 9)
        before = plucker_values(mat, k, n)
        after = window_oracle(k, n, i, mat)
        bad_f, bad_b = [], []
        for s in fwd.images:
            x = PluckerExpr.symbol(s)
            if ev(fwd.expr(s), before) != ev(x, after):
                bad_f.append(symbol_str(s))
            if ev(bwd.expr(s), after) != ev(x, before):
                bad_b.append(symbol_str(s))
        rep.add(f"sample {t}: σ", not bad_f, bad_f or None, "q=1")
        rep.add(f"sample {t}: σ^-1", not bad_b, bad_b or None, "q=1")
    return rep


def verify_commuting_sampled(
    k: int, n: int, i: int, j: int, samples: int = 6, rng_seed: int = 0
) -> Report:
    """σ_iσ_j = σ_jσ_i (``|i-j| > 1``) on randomly chosen Plücker coordinates.

    Meant for infinite types, where the σ tables cover only the Plücker
    coordinates reached through Plücker clusters.  Coordinates are drawn in
    random order; those whose composite image needs an untabulated variable
    are counted but not checked, until ``samples`` coordinates are checked.
    """
    d = gcd(k, n)
    if abs(i - j) < 2 or max(i, j) >= d:
        raise InvalidParams(f"need |i-j| >= 2 and i, j < gcd(k,n) = {d}")
    atlas = get_atlas(k, n)
    rng = random.Random(rng_seed)
    labels = sorted((s for s in atlas.var if not isinstance(s, str)), key=_sort_key)
    rng.shuffle(labels)
    w1, w2 = f"s{i} s{j}", f"s{j} s{i}"
    checked, uncomputable = [], []
    for s in labels:
        if len(checked) == samples:
            break
        try:
            a = apply_sigma(w1, PluckerExpr.symbol(s), k, n)
            b = apply_sigma(w2, PluckerExpr.symbol(s), k, n)
        except UnknownSymbol:
            uncomputable.append(symbol_str(s))
            continue
        checked.append((s, a, b))
    rep = Report(f"{w1} = {w2} on {len(checked)} sampled Plücker coordinates of Gr({k},{n})")
    rep.add(
        f"{samples} computable coordinates found",
        len(checked) == samples,
        {"drawn": len(checked) + len(uncomputable), "not computable": uncomputable},
        "coverage",
    )
    for s, a, b in sorted(checked, key=lambda t: _sort_key(t[0])):
        equal = str(a) == str(b) or atlas.table.equal(a, b)
        rep.add(f"{w1} = {w2} on {symbol_str(s)}", equal, {"lhs": str(a), "rhs": str(b)}, "braid")
    return rep
