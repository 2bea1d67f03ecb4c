"""Labeled exchange graph of C_q[Gr(k,n)] (finite type, desk scale).

Starting from the rectangles seed, every cluster is enumerated with its
variables written in the ambient torus of that seed.  Each new variable is
labeled by its commutative shadow (value at ``q = 1`` on a random matrix):
a Plücker coordinate, a named variable with known Plücker expansion, or a
fresh name.  Every exchange relation is then rewritten in these labels so
the quantum-matrix oracle can confirm it independently.
"""

from __future__ import annotations

import random
from collections import deque
from dataclasses import dataclass
from functools import lru_cache
from itertools import combinations
from typing import Iterable, Mapping, Sequence

from .errors import AmbientMismatch, FactorizationFailed, UnknownSymbol
from .grassmann import (
    KSubset,
    frozen_subsets,
    ksubsets,
    plucker_values,
    random_sample,
    rectangles_seed,
    scott_lambda,
    subset_str,
    weakly_separated,
)
from .qcoeff import QCoeff
from .qmatrix import PluckerExpr, Symbol, SymbolTable
from .qseed import ExchangeGraph, QuantumSeed, cluster_key, enumerate_exchange_graph, mutate, new_seed
from .qtorus import TorusElement, normalized_from_word, q_ratio
from .quasihom import proportional
from .report import Report

__all__ = ["GrassmannAtlas", "Relation", "symbol_str", "permute_seed", "known_named", "get_atlas", "finite_type"]

# Non-Plücker cluster variables with their Plücker expansions.
_KNOWN_NAMED = {
    (3, 6): {
        "y": "q^{-3/2}*D(1,2,4)*D(3,5,6) - q^{-5/2}*D(1,2,3)*D(4,5,6)",
        "z": "q^{-1/2}*D(1,4,5)*D(2,3,6) - q^{-5/2}*D(1,2,3)*D(4,5,6)",
    },
}


def known_named(k: int, n: int) -> dict[str, PluckerExpr]:
    return {name: PluckerExpr.parse(text) for name, text in _KNOWN_NAMED.get((k, n), {}).items()}


def symbol_str(s: Symbol) -> str:
    return s if isinstance(s, str) else subset_str(s)


@dataclass(frozen=True)
class Relation:
    """``lhs = rhs`` in the localized quantum Grassmannian."""

    name: str
    category: str  # "exchange", "quasi-commutation", "plucker", ...
    lhs: PluckerExpr
    rhs: PluckerExpr

    def __str__(self) -> str:
        return f"{self.lhs} = {self.rhs}"


def permute_seed(seed: QuantumSeed, order: Sequence[int]) -> QuantumSeed:
    """Reorder a seed's variables; ``order[new] = old``.  Mutable stay first."""
    n = seed.n_mut
    if sorted(order[:n]) != list(range(n)):
        raise AmbientMismatch("a permutation must keep mutable positions first")
    bt = [[seed.btilde[r][c] for c in order[:n]] for r in order]
    lam = [[seed.lam.rows[r][c] for c in order] for r in order]
    frame = [seed.frame[i] for i in order]
    labels = [seed.labels[i] for i in order]
    return new_seed(labels, bt, lam, frame, seed.ambient, dict(seed.meta))


class GrassmannAtlas:
    """All clusters of C_q[Gr(k,n)] reachable within ``max_seeds``, with labels."""

    def __init__(
        self,
        k: int,
        n: int,
        named: Mapping[str, PluckerExpr] | None = None,
        max_seeds: int = 10_000,
        rng_seed: int = 0,
        plucker_only: bool = False,
    ):
        self.k, self.n = k, n
        self.plucker_only = plucker_only
        self.root = rectangles_seed(k, n)
        self.ambient = self.root.ambient
        self.n_mut = self.root.n_mut
        self.frozen = frozen_subsets(k, n)
        self.frozen_positions = list(range(self.n_mut, self.root.m))
        self.table = SymbolTable(k, n, known_named(k, n) if named is None else dict(named))
        mat = random_sample(random.Random(rng_seed), k, n, -1000, 1000, distinct=True)
        self.values = plucker_values(mat, k, n)
        self.frame_values = [self.values[I] for I in self.root.meta["subsets"]]
        if plucker_only:
            self.graph = self._explore_plucker(max_seeds)
        else:
            self.graph = enumerate_exchange_graph(self.root, max_seeds)
        named_values = {name: self.table.evaluate(PluckerExpr.symbol(name), self.values) for name in self.table.named}

        self.label_of: dict[frozenset, Symbol] = {}
        self.var: dict[Symbol, TorusElement] = {}
        fresh = 0
        for key, elem in sorted(self.graph.variables.items(), key=lambda kv: str(kv[1])):
            v = elem.evaluate(self.frame_values)
            hits: list[Symbol] = [J for J, x in self.values.items() if x == v]
            hits += [name for name, x in named_values.items() if x == v]
            if len(hits) > 1:
                raise FactorizationFailed(f"ambiguous q=1 value for {elem}: {hits}")
            if hits:
                label = hits[0]
            else:
                fresh += 1
                label = f"v{fresh}"
            if label in self.var:
                raise FactorizationFailed(f"two different torus elements share the label {symbol_str(label)}")
            self.label_of[key] = label
            self.var[label] = elem
        for pos, F in zip(self.frozen_positions, self.frozen):
            g = TorusElement.gen(self.ambient, pos)
            self.label_of[g.key()] = F
            self.var[F] = g

        self.seed_labels: dict[frozenset, tuple[Symbol, ...]] = {}
        self.by_labelset: dict[frozenset, frozenset] = {}
        for key, seed in self.graph.seeds.items():
            labels = tuple(self.label_of[x.key()] for x in seed.frame)
            self.seed_labels[key] = labels
            self.by_labelset[frozenset(labels[: self.n_mut])] = key
        self._proj_index: dict[frozenset, list[Symbol]] | None = None

    def _explore_plucker(self, max_seeds: int) -> ExchangeGraph:
        """Breadth-first search through clusters made of Plücker coordinates only.

        Used for infinite types: stops once every Plücker coordinate has been
        seen or ``max_seeds`` clusters have been visited.
        """
        by_value = {v: J for J, v in self.values.items()}
        root = cluster_key(self.root)
        seeds = {root: self.root}
        parent: dict = {root: None}
        variables = {x.key(): x for x in self.root.frame[: self.n_mut]}
        found = set(self.root.meta["subsets"])
        edges: set = set()
        queue = deque([root])
        total = len(self.values)
        while queue and len(found) < total and len(seeds) < max_seeds:
            key = queue.popleft()
            seed = seeds[key]
            for r in range(self.n_mut):
                t = mutate(seed, r)
                J = by_value.get(t.frame[r].evaluate(self.frame_values))
                if J is None:
                    continue
                tk = cluster_key(t)
                edges.add((key, tk) if hash(key) <= hash(tk) else (tk, key))
                if tk in seeds:
                    continue
                seeds[tk] = t
                parent[tk] = (key, r)
                variables.setdefault(t.frame[r].key(), t.frame[r])
                found.add(J)
                queue.append(tk)
                if len(seeds) >= max_seeds:
                    break
        return ExchangeGraph(root, seeds, variables, parent, edges)

    @property
    def complete(self) -> bool:
        """Whether every Plücker coordinate has a torus form."""
        return all(J in self.var for J in self.values)

    # lookups --------------------------------------------------------------
    @property
    def n_clusters(self) -> int:
        return len(self.graph.seeds)

    def mutable_labels(self) -> list[Symbol]:
        fz = set(self.frozen)
        return [s for s in self.var if s not in fz]

    def is_frozen(self, s: Symbol) -> bool:
        return not isinstance(s, str) and s in set(self.frozen)

    def seed_for(self, labels: Iterable[Symbol]) -> QuantumSeed:
        """The seed whose mutable labels are ``labels``, reordered to match their order."""
        labels = list(labels)
        key = self.by_labelset.get(frozenset(labels))
        if key is None:
            raise UnknownSymbol(f"no cluster with labels {[symbol_str(s) for s in labels]}")
        seed = self.graph.seeds[key]
        current = self.seed_labels[key]
        order = [current.index(s) for s in labels] + list(range(self.n_mut, seed.m))
        out = permute_seed(seed, order)
        return _relabel(out, [symbol_str(s) for s in labels] + [subset_str(F) for F in self.frozen])

    def labels_of_seed(self, seed: QuantumSeed) -> tuple[Symbol, ...]:
        return tuple(self.label_of[x.key()] for x in seed.frame)

    # expressions in the torus --------------------------------------------
    def torus_of(self, e: PluckerExpr) -> TorusElement:
        """Evaluate a Plücker expression in the ambient torus using the labeled variables."""
        total = TorusElement.zero(self.ambient)
        for c, blocks in e.terms:
            term = TorusElement.one(self.ambient).scale(c)
            for b in blocks:
                factors = []
                for s, p in b:
                    if s in self.var:
                        factors.append((self.var[s], p))
                    elif isinstance(s, str) and s in self.table.named:
                        if p < 0:
                            raise UnknownSymbol(f"cannot invert {s}")
                        factors.append((self.torus_of(self.table.named[s]), p))
                    else:
                        raise UnknownSymbol(f"{symbol_str(s)} is not a cluster variable of the atlas")
                if len(factors) == 1:
                    f, p = factors[0]
                    term = term * f**p
                else:
                    term = term * normalized_from_word(self.ambient, factors)
            total = total + term
        return total

    def factor(self, x: TorusElement) -> tuple[int, dict[KSubset, int], Symbol | None]:
        """Write ``x = q^{t/2} [F^p u]`` with ``u`` a labeled variable (or 1).

        Returns ``(t, p, u)``; ``t`` is 0 for bar-invariant ``x``.
        """
        fz = self.frozen_positions
        mono = x.as_monomial()
        candidates: list[Symbol | None] = []
        if mono is not None and all(v == 0 for i, v in enumerate(mono[0]) if i < self.n_mut):
            candidates.append(None)
        candidates += self._candidates(x)
        for u in candidates:
            base = TorusElement.one(self.ambient) if u is None else self.var[u]
            hit = proportional(x, base, fz)
            if hit is None:
                continue
            _, pf = hit
            p = {F: e for F, e in zip(self.frozen, pf) if e}
            factors = [(self.var[F], e) for F, e in p.items()]
            if u is not None:
                factors.append((base, 1))
            bracket = normalized_from_word(self.ambient, factors) if factors else TorusElement.one(self.ambient)
            t = q_ratio(x, bracket)
            if t is None:
                continue
            return t, p, u
        raise FactorizationFailed(f"{x} is not a frozen monomial times a cluster variable")

    def _candidates(self, x: TorusElement) -> list[Symbol]:
        if self._proj_index is None:
            idx: dict[frozenset, list[Symbol]] = {}
            for s, elem in self.var.items():
                if self.is_frozen(s):
                    continue
                idx.setdefault(self._proj(elem), []).append(s)
            self._proj_index = idx
        return list(self._proj_index.get(self._proj(x), []))

    def _proj(self, x: TorusElement) -> frozenset:
        n = self.n_mut
        return frozenset((a[:n], len(x)) for a in x.terms)

    # relations ------------------------------------------------------------
    def exchange_relations(self) -> list[Relation]:
        """One exchange relation per edge of the exchange graph."""
        out: list[Relation] = []
        seen: set = set()
        for key, seed in self.graph.seeds.items():
            labels = self.seed_labels[key]
            for k in range(self.n_mut):
                other = self._mutated_label(seed, k)
                if other is None:
                    continue
                ident = frozenset([labels[k], other]), frozenset(labels[: k] + labels[k + 1 :])
                if ident in seen:
                    continue
                seen.add(ident)
                out.append(self._exchange_relation(seed, labels, k, other))
        return out

    def _mutated_label(self, seed: QuantumSeed, k: int) -> Symbol | None:
        return self.label_of.get(mutate(seed, k, check=False).frame[k].key())

    def _exchange_relation(self, seed: QuantumSeed, labels: Sequence[Symbol], k: int, new: Symbol) -> Relation:
        b = seed.column(k)
        pos = [max(v, 0) for v in b]
        neg = [max(-v, 0) for v in b]
        ek = [int(i == k) for i in range(seed.m)]
        rhs = PluckerExpr()
        for vec in (pos, neg):
            shift = seed.lam(ek, vec)
            rhs = rhs + PluckerExpr.bracket([(labels[i], v) for i, v in enumerate(vec) if v], QCoeff.qhalf(shift))
        lhs = PluckerExpr.symbol(labels[k]) * PluckerExpr.symbol(new)
        name = f"{symbol_str(labels[k])}*{symbol_str(new)}"
        return Relation(name, "exchange", lhs, rhs)

    def quasi_commutation_relations(self) -> list[Relation]:
        """``a b = q^λ b a`` for every pair of variables sharing a cluster."""
        out: dict[frozenset, Relation] = {}
        for key, seed in self.graph.seeds.items():
            labels = self.seed_labels[key]
            for i, j in combinations(range(seed.m), 2):
                if i >= self.n_mut and j >= self.n_mut:
                    continue
                pair = frozenset([labels[i], labels[j]])
                if pair in out:
                    continue
                c = seed.lam.rows[i][j]
                a, b = PluckerExpr.symbol(labels[i]), PluckerExpr.symbol(labels[j])
                out[pair] = Relation(
                    f"{symbol_str(labels[i])},{symbol_str(labels[j])}",
                    "quasi-commutation",
                    a * b,
                    (b * a).scale(QCoeff.qhalf(2 * c)),
                )
        return list(out.values())

    def scott_relations(self) -> list[Relation]:
        """``Δ^I Δ^J = q^{λ(I,J)} Δ^J Δ^I`` for every weakly separated pair of k-subsets."""
        out = []
        for I, J in combinations(ksubsets(self.k, self.n), 2):
            if not weakly_separated(I, J):
                continue
            a, b = PluckerExpr.symbol(I), PluckerExpr.symbol(J)
            out.append(
                Relation(
                    f"{subset_str(I)},{subset_str(J)}",
                    "quasi-commutation",
                    a * b,
                    (b * a).scale(QCoeff.qhalf(2 * scott_lambda(I, J))),
                )
            )
        return out

    def verify_relations(self, relations: Sequence[Relation]) -> Report:
        rep = Report(f"oracle check of {len(relations)} relations in Gr({self.k},{self.n})")
        for r in relations:
            rep.add(r.name, self.table.equal(r.lhs, r.rhs), str(r), r.category)
        return rep


def _relabel(seed: QuantumSeed, labels: Sequence[str]) -> QuantumSeed:
    return QuantumSeed(tuple(labels), seed.btilde, seed.lam, seed.frame, seed.ambient, seed.diagonal, seed.meta)


@lru_cache(maxsize=None)
def finite_type(k: int, n: int) -> bool:
    """Whether C_q[Gr(k,n)] has finitely many clusters."""
    small = min(k, n - k)
    return small <= 2 or (small == 3 and n <= 8)


def get_atlas(k: int, n: int, max_seeds: int = 10_000, plucker_only: bool | None = None) -> GrassmannAtlas:
    """Shared atlas for ``(k, n)``; infinite types get the Plücker-cluster search."""
    if plucker_only is None:
        plucker_only = not finite_type(k, n)
    return _cached_atlas(k, n, max_seeds, plucker_only)


@lru_cache(maxsize=None)
def _cached_atlas(k: int, n: int, max_seeds: int, plucker_only: bool) -> GrassmannAtlas:
    return GrassmannAtlas(k, n, max_seeds=max_seeds, plucker_only=plucker_only)


get_atlas.cache_clear = _cached_atlas.cache_clear  # type: ignore[attr-defined]
