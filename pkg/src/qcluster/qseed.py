"""Quantum seeds: compatible pairs, mutation, ŷ-variables and exchange graphs.

A seed keeps its cluster as a *frame*: every variable is a
:class:`~qcluster.qtorus.TorusElement` over one fixed ambient torus (the
torus of the initial seed).  Mutation therefore never leaves the ambient
torus; the new variable is found by exact left division, which succeeds by
the quantum Laurent phenomenon.

Indices in this module are 0-based.  The first ``n_mut`` rows/columns are
mutable, the rest frozen.
"""

from __future__ import annotations

import json
import random
from collections import deque
from dataclasses import dataclass, field
from typing import Sequence

from .errors import (
    BoundExceeded,
    FrameFormMismatch,
    IncompatiblePair,
    IndexOutOfRange,
    NotQuasiCommuting,
    ShapeMismatch,
)
from .qtorus import SkewForm, TorusElement, commutation_twice, exact_left_divide, normalized_from_word

Matrix = tuple[tuple[int, ...], ...]

__all__ = [
    "QuantumSeed",
    "new_seed",
    "mutate",
    "mutate_matrices",
    "compatibility_diagonal",
    "yhat",
    "YHat",
    "cluster_key",
    "ExchangeGraph",
    "enumerate_exchange_graph",
    "random_compatible_pair",
    "seed_to_dict",
    "seed_from_dict",
    "dump_seed",
    "load_seed",
]


def _mat(rows: Sequence[Sequence[int]]) -> Matrix:
    return tuple(tuple(int(v) for v in r) for r in rows)


def _pos(v: Sequence[int]) -> tuple[int, ...]:
    return tuple(x if x > 0 else 0 for x in v)


def _neg(v: Sequence[int]) -> tuple[int, ...]:
    return tuple(-x if x < 0 else 0 for x in v)


def compatibility_diagonal(btilde: Matrix, lam: Matrix) -> tuple[int, ...]:
    """Return the diagonal of ``D`` when ``B̃ᵀΛ = (D | 0)`` with ``D`` positive.

    Raises IncompatiblePair otherwise.
    """
    m = len(lam)
    n = len(btilde[0]) if btilde else 0
    if len(btilde) != m:
        raise ShapeMismatch(f"B̃ has {len(btilde)} rows, Λ is {m}×{m}")
    diag = []
    for j in range(n):
        for c in range(m):
            v = sum(btilde[r][j] * lam[r][c] for r in range(m))
            if c == j:
                if v <= 0:
                    raise IncompatiblePair(f"(B̃ᵀΛ)[{j}][{j}] = {v} is not positive")
                diag.append(v)
            elif v:
                raise IncompatiblePair(f"(B̃ᵀΛ)[{j}][{c}] = {v}, expected 0")
    return tuple(diag)


@dataclass(frozen=True, eq=False)
class QuantumSeed:
    labels: tuple[str, ...]
    btilde: Matrix
    lam: SkewForm
    frame: tuple[TorusElement, ...]
    ambient: SkewForm
    diagonal: tuple[int, ...]
    meta: dict = field(default_factory=dict, compare=False)

    @property
    def m(self) -> int:
        return len(self.btilde)

    @property
    def n_mut(self) -> int:
        return len(self.btilde[0]) if self.btilde else 0

    def column(self, k: int) -> tuple[int, ...]:
        return tuple(r[k] for r in self.btilde)

    def exchange_matrix(self) -> Matrix:
        return self.btilde[: self.n_mut]

    def index(self, label: str) -> int:
        return self.labels.index(label)

    def same_data(self, other: "QuantumSeed") -> bool:
        """Equality of (B̃, Λ, frame), ignoring display labels."""
        return (
            self.btilde == other.btilde
            and self.lam == other.lam
            and all(a == b for a, b in zip(self.frame, other.frame))
        )

    def __eq__(self, other) -> bool:
        if not isinstance(other, QuantumSeed):
            return NotImplemented
        return self.labels == other.labels and self.same_data(other)

    def __hash__(self) -> int:
        return hash((self.labels, self.btilde, self.lam))

    def eval(self, exps: Sequence[int]) -> TorusElement:
        """Normalized product ``[∏ x_i^{a_i}]`` over the frame."""
        facs = [(self.frame[i], a) for i, a in enumerate(exps) if a]
        idx = [i for i, a in enumerate(exps) if a]
        comm = [[self.lam.rows[i][j] for j in idx] for i in idx]
        return normalized_from_word(self.ambient, facs, commutation=comm)


def new_seed(
    labels: Sequence[str],
    btilde: Sequence[Sequence[int]],
    lam: Sequence[Sequence[int]] | SkewForm,
    frame: Sequence[TorusElement] | None = None,
    ambient: SkewForm | None = None,
    meta: dict | None = None,
) -> QuantumSeed:
    """Validate and build a seed.  With no frame, installs ``x_i = X^{e_i}``."""
    bt = _mat(btilde)
    form = lam if isinstance(lam, SkewForm) else SkewForm(lam)
    m = form.rank
    if len(bt) != m:
        raise ShapeMismatch(f"B̃ has {len(bt)} rows but Λ has rank {m}")
    if len(labels) != m:
        raise ShapeMismatch(f"{len(labels)} labels for {m} variables")
    n = len(bt[0]) if bt else 0
    if any(len(r) != n for r in bt) or n > m:
        raise ShapeMismatch("B̃ must be an m×n matrix with n ≤ m")
    diag = compatibility_diagonal(bt, form.rows)
    if frame is None:
        amb = form
        fr = tuple(TorusElement.gen(form, i) for i in range(m))
    else:
        amb = ambient if ambient is not None else frame[0].form
        fr = tuple(frame)
        if len(fr) != m:
            raise FrameFormMismatch(f"frame has {len(fr)} elements, expected {m}")
        _validate_frame(fr, form, amb, n)
    return QuantumSeed(tuple(labels), bt, form, fr, amb, diag, dict(meta or {}))


def _validate_frame(frame: Sequence[TorusElement], form: SkewForm, amb: SkewForm, n: int) -> None:
    for i, x in enumerate(frame):
        if x.form != amb:
            raise FrameFormMismatch(f"frame element {i} lives in a different torus")
        if not x.is_bar_invariant():
            raise FrameFormMismatch(f"frame element {i} is not bar-invariant")
        if i >= n and x.as_monomial() is None:
            raise FrameFormMismatch(f"frozen frame element {i} is not a monomial")
    for i in range(len(frame)):
        for j in range(i + 1, len(frame)):
            _check_pair(frame, form, i, j)


def _check_pair(frame, form: SkewForm, i: int, j: int) -> None:
    try:
        c = commutation_twice(frame[i], frame[j])
    except NotQuasiCommuting:
        raise FrameFormMismatch(f"frame elements {i}, {j} do not q-commute") from None
    if c != 2 * form.rows[i][j]:
        raise FrameFormMismatch(
            f"frame elements {i}, {j} q-commute with exponent {c / 2}, but λ = {form.rows[i][j]}"
        )


def mutate_matrices(btilde: Matrix, lam: Matrix, k: int) -> tuple[Matrix, Matrix]:
    """Mutate the compatible pair ``(B̃, Λ)`` in direction ``k``.

    ``Λ' = EᵀΛE`` with ``E`` the identity except column ``k``, which is
    ``[b_k]_+`` off the diagonal and ``-1`` on it.  Entrywise, for ``j ≠ k``
    ``λ'_jk = -λ_jk + Σ_l λ_jl [b_lk]_+`` and the other entries are kept.
    """
    m = len(btilde)
    n = len(btilde[0])
    if not 0 <= k < n:
        raise IndexOutOfRange(f"direction {k} outside 0..{n - 1}")
    b = btilde
    nb = []
    for i in range(m):
        row = []
        for j in range(n):
            if i == k or j == k:
                row.append(-b[i][j])
            else:
                bik, bkj = b[i][k], b[k][j]
                row.append(b[i][j] + max(-bik, 0) * bkj + bik * max(bkj, 0))
        nb.append(tuple(row))
    col = [max(b[l][k], 0) for l in range(m)]
    nl = [list(r) for r in lam]
    for j in range(m):
        if j == k:
            continue
        v = -lam[j][k] + sum(lam[j][l] * col[l] for l in range(m) if col[l])
        nl[j][k] = v
        nl[k][j] = -v
    return tuple(nb), _mat(nl)


def _flip_label(s: str) -> str:
    return s[:-1] if s.endswith("'") else s + "'"


def mutate(seed: QuantumSeed, k: int, label: str | None = None, check: bool = True) -> QuantumSeed:
    """Mutate ``seed`` in mutable direction ``k`` (0-based).

    The new variable is ``x_k^{-1}(q^{Λ(e_k,[b_k]_+)/2}[x^{[b_k]_+}] +
    q^{Λ(e_k,[-b_k]_+)/2}[x^{[-b_k]_+}])``, computed in the ambient torus.
    With ``check`` the new element's q-commutation with the rest of the
    frame is compared against the mutated Λ.
    """
    if not 0 <= k < seed.n_mut:
        raise IndexOutOfRange(f"direction {k} outside 0..{seed.n_mut - 1}")
    bk = seed.column(k)
    p, n = _pos(bk), _neg(bk)
    ek = tuple(1 if i == k else 0 for i in range(seed.m))
    rhs = seed.eval(p).qshift(seed.lam(ek, p)) + seed.eval(n).qshift(seed.lam(ek, n))
    new_var = exact_left_divide(seed.frame[k], rhs)
    nb, nl = mutate_matrices(seed.btilde, seed.lam.rows, k)
    diag = compatibility_diagonal(nb, nl)
    if diag != seed.diagonal:
        raise IncompatiblePair(f"mutation changed D from {seed.diagonal} to {diag}")
    form = SkewForm(nl)
    frame = list(seed.frame)
    frame[k] = new_var
    if check:
        if not new_var.is_bar_invariant():
            raise FrameFormMismatch("mutated variable is not bar-invariant")
        for j in range(seed.m):
            if j != k:
                _check_pair(frame, form, k, j)
    labels = list(seed.labels)
    labels[k] = label if label is not None else _flip_label(labels[k])
    return QuantumSeed(tuple(labels), nb, form, tuple(frame), seed.ambient, diag, dict(seed.meta))


# ---------------------------------------------------------------------------
# ŷ-variables


@dataclass(frozen=True)
class YHat:
    """``ŷ = num · den^{-1}`` with q-commuting ``num``, ``den`` in the ambient torus.

    ``num = [x^{[b]_+}]`` and ``den = [x^{[-b]_+}]``; compatibility forces
    ``Λ([b]_+, [-b]_+) = 0`` so the two factors commute and the fraction is
    the normalized monomial ``[x^b]``.
    """

    num: TorusElement
    den: TorusElement

    def inverse(self) -> "YHat":
        return YHat(self.den, self.num)

    def as_element(self) -> TorusElement:
        """The torus element, available when ``den`` is a monomial unit."""
        return self.num * self.den.inverse()

    def __eq__(self, other) -> bool:
        if not isinstance(other, YHat):
            return NotImplemented
        if self.num == other.num and self.den == other.den:
            return True
        # a b^{-1} = c d^{-1}  <=>  a b^{-1} d = c; with b d = q^{s/2} d b this is a d = q^{s/2} c b
        s = commutation_twice(self.den, other.den)
        return self.num * other.den == (other.num * self.den).qshift(s)

    def __hash__(self) -> int:
        return hash((self.num, self.den))


def yhat(seed: QuantumSeed, i: int) -> YHat:
    """The ŷ-variable ``X^{b_i}`` of direction ``i``, evaluated through the frame."""
    if not 0 <= i < seed.n_mut:
        raise IndexOutOfRange(f"direction {i} outside 0..{seed.n_mut - 1}")
    b = seed.column(i)
    return YHat(seed.eval(_pos(b)), seed.eval(_neg(b)))


# ---------------------------------------------------------------------------
# exchange graph


def cluster_key(seed: QuantumSeed) -> frozenset:
    return frozenset(x.key() for x in seed.frame[: seed.n_mut])


@dataclass
class ExchangeGraph:
    root: frozenset
    seeds: dict[frozenset, QuantumSeed]
    variables: dict[frozenset, TorusElement]
    parent: dict[frozenset, tuple[frozenset, int] | None]
    edges: set[tuple[frozenset, frozenset]]

    @property
    def n_clusters(self) -> int:
        return len(self.seeds)

    def path_to(self, key: frozenset) -> list[int]:
        """Mutation directions leading from the root to ``key`` along the tree."""
        out: list[int] = []
        while self.parent[key] is not None:
            prev, k = self.parent[key]
            out.append(k)
            key = prev
        return out[::-1]


def enumerate_exchange_graph(seed: QuantumSeed, max_seeds: int = 10_000, check: bool = True) -> ExchangeGraph:
    """Breadth-first closure of ``seed`` under mutation, deduplicated by cluster."""
    if max_seeds < 1:
        raise ValueError("max_seeds must be at least 1")
    root = cluster_key(seed)
    seeds = {root: seed}
    parent: dict = {root: None}
    variables = {x.key(): x for x in seed.frame[: seed.n_mut]}
    edges: set = set()
    queue = deque([root])
    while queue:
        key = queue.popleft()
        s = seeds[key]
        for k in range(s.n_mut):
            t = mutate(s, k, check=check)
            tk = cluster_key(t)
            edges.add((key, tk) if hash(key) <= hash(tk) else (tk, key))
            if tk in seeds:
                continue
            if len(seeds) >= max_seeds:
                raise BoundExceeded(f"more than {max_seeds} clusters")
            seeds[tk] = t
            parent[tk] = (key, k)
            variables.setdefault(t.frame[k].key(), t.frame[k])
            queue.append(tk)
    return ExchangeGraph(root, seeds, variables, parent, edges)


# ---------------------------------------------------------------------------
# random valid seeds (property tests)


def _unimodular(rng: random.Random, size: int, steps: int) -> tuple[list[list[int]], list[list[int]]]:
    """Random ``U`` in GL(size, Z) together with ``U^{-1}``."""
    u = [[int(i == j) for j in range(size)] for i in range(size)]
    v = [[int(i == j) for j in range(size)] for i in range(size)]
    for _ in range(steps if size > 1 else 0):
        i, j = rng.sample(range(size), 2)
        c = rng.choice((-1, 1))
        # U <- (I + c E_ij) U ; U^{-1} <- U^{-1} (I - c E_ij)
        u[i] = [a + c * b for a, b in zip(u[i], u[j])]
        for r in v:
            r[j] -= c * r[i]
    return u, v


def random_compatible_pair(
    rng: random.Random,
    n_mut: int,
    max_entry: int = 1,
    symmetrizer: Sequence[int] = (1, 2),
    mix_steps: int = 0,
) -> tuple[Matrix, Matrix, tuple[int, ...]]:
    """A random compatible pair ``(B̃, Λ)`` with ``m = 2 n_mut``.

    ``B`` is skew-symmetrizable with ``DB = S``; then ``B̃ = [B; I]`` and
    ``Λ = [[0, -D], [D, -DB]]`` satisfy ``B̃ᵀΛ = (D | 0)``.  With
    ``mix_steps`` the frozen coordinates are further changed by a random
    unimodular matrix, which keeps compatibility.
    """
    n = n_mut
    d = [rng.choice(tuple(symmetrizer)) for _ in range(n)]
    b = [[0] * n for _ in range(n)]
    for i in range(n):
        for j in range(i + 1, n):
            t = rng.randint(-max_entry, max_entry)
            b[i][j] = d[j] * t
            b[j][i] = -d[i] * t
    m = 2 * n
    bt = [row[:] for row in b] + [[int(i == j) for j in range(n)] for i in range(n)]
    lam = [[0] * m for _ in range(m)]
    for i in range(n):
        lam[i][n + i] = -d[i]
        lam[n + i][i] = d[i]
        for j in range(n):
            lam[n + i][n + j] = -d[i] * b[i][j]
    if mix_steps:
        u, uinv = _unimodular(rng, n, mix_steps)
        # B̃' = R B̃, Λ' = R^{-T} Λ R^{-1} with R = diag(I, U)
        low = [[sum(u[i][l] * bt[n + l][j] for l in range(n)) for j in range(n)] for i in range(n)]
        bt = bt[:n] + low
        rinv = [[int(i == j) for j in range(m)] for i in range(m)]
        for i in range(n):
            for j in range(n):
                rinv[n + i][n + j] = uinv[i][j]
        tmp = [[sum(lam[i][l] * rinv[l][j] for l in range(m)) for j in range(m)] for i in range(m)]
        lam = [[sum(rinv[l][i] * tmp[l][j] for l in range(m)) for j in range(m)] for i in range(m)]
    return _mat(bt), _mat(lam), tuple(d)


# ---------------------------------------------------------------------------
# JSON seed files


def _json_meta(meta: dict) -> dict:
    out = {}
    for key, v in meta.items():
        if key in ("subsets", "cells"):
            out[key] = [list(x) for x in v]
        elif isinstance(v, (int, str, float, bool)) or v is None:
            out[key] = v
    return out


def seed_to_dict(seed: QuantumSeed) -> dict:
    """``{labels, btilde, lambda[, ambient, frame], meta}``; the frame is omitted when it is the identity."""
    d: dict = {
        "labels": list(seed.labels),
        "btilde": [list(r) for r in seed.btilde],
        "lambda": [list(r) for r in seed.lam.rows],
    }
    identity = seed.ambient == seed.lam and all(
        x == TorusElement.gen(seed.ambient, i) for i, x in enumerate(seed.frame)
    )
    if not identity:
        d["ambient"] = [list(r) for r in seed.ambient.rows]
        d["frame"] = [str(x) for x in seed.frame]
    meta = _json_meta(seed.meta)
    if meta:
        d["meta"] = meta
    return d


def seed_from_dict(d: dict) -> QuantumSeed:
    try:
        labels, bt, lam = d["labels"], d["btilde"], d["lambda"]
    except KeyError as exc:
        raise ShapeMismatch(f"seed file lacks the field {exc.args[0]!r}") from None
    meta = dict(d.get("meta", {}))
    for key in ("subsets", "cells"):
        if key in meta:
            meta[key] = tuple(tuple(x) for x in meta[key])
    frame = None
    ambient = None
    if "frame" in d:
        ambient = SkewForm(d.get("ambient", lam))
        frame = [TorusElement.parse(t, ambient) for t in d["frame"]]
    return new_seed(labels, bt, lam, frame, ambient, meta)


def dump_seed(seed: QuantumSeed, path) -> None:
    with open(path, "w") as fh:
        json.dump(seed_to_dict(seed), fh, indent=1)
        fh.write("\n")


def load_seed(path) -> QuantumSeed:
    with open(path) as fh:
        return seed_from_dict(json.load(fh))
