"""Quantum quasi-homomorphisms given by an integer matrix R.

A quasi-homomorphism sends ``x_i -> X'^{r_i}`` where ``r_i`` is the i-th
column of ``R = [[I, 0], [H, L]]``.  The checks here verify the matrix
criterion (``B = B'``, block shape, ``R B̃ = B̃'``, ``Rᵀ Λ' R = Λ``) and the
ŷ-condition by explicit torus multiplication.
"""

from __future__ import annotations

from dataclasses import dataclass
import random
from typing import Sequence

import numpy as np

from .errors import ShapeMismatch
from .qseed import QuantumSeed, _unimodular, mutate_matrices, new_seed, random_compatible_pair
from .qtorus import SkewForm, TorusElement, q_ratio
from .report import Report

__all__ = [
    "QuasiHomData",
    "build_R",
    "apply_monomial",
    "transport_monomial",
    "check_quasi_hom",
    "mutated_R",
    "check_mutation_compat",
    "proportional",
    "compose",
    "random_quasi_hom",
]


@dataclass(frozen=True)
class QuasiHomData:
    H: tuple[tuple[int, ...], ...]
    L: tuple[tuple[int, ...], ...]
    R: tuple[tuple[int, ...], ...]
    n_mut: int

    def matrix(self) -> np.ndarray:
        return np.array(self.R, dtype=np.int64)


def _tup(a) -> tuple[tuple[int, ...], ...]:
    return tuple(tuple(int(v) for v in row) for row in np.asarray(a))


def build_R(H: Sequence[Sequence[int]], L: Sequence[Sequence[int]], n_mut: int | None = None) -> QuasiHomData:
    """Assemble ``R = [[I_n, 0], [H, L]]``; ``H`` is (m'-n)×n, ``L`` is (m'-n)×(m-n)."""
    H = np.array(H, dtype=np.int64)
    L = np.array(L, dtype=np.int64)
    if H.ndim != 2 or L.ndim != 2:
        if n_mut is None:
            raise ShapeMismatch("H and L must be matrices")
        H = H.reshape(L.shape[0] if L.ndim == 2 else 0, n_mut)
    n = H.shape[1] if n_mut is None else n_mut
    if H.shape[1] != n or H.shape[0] != L.shape[0]:
        raise ShapeMismatch(f"H is {H.shape}, L is {L.shape}, n_mut = {n}")
    top = np.hstack([np.eye(n, dtype=np.int64), np.zeros((n, L.shape[1]), dtype=np.int64)])
    bottom = np.hstack([H, L])
    return QuasiHomData(_tup(H), _tup(L), _tup(np.vstack([top, bottom])), n)


def _R(R) -> np.ndarray:
    if isinstance(R, QuasiHomData):
        return R.matrix()
    return np.array(R, dtype=np.int64)


def apply_monomial(R, a: Sequence[int]) -> tuple[int, ...]:
    """``R a``, the exponent of ``f(X^a)``."""
    M = _R(R)
    a = np.array(a, dtype=np.int64)
    if M.shape[1] != a.shape[0]:
        raise ShapeMismatch(f"R has {M.shape[1]} columns, vector has length {a.shape[0]}")
    return tuple(int(v) for v in M @ a)


def compose(R1, R2) -> np.ndarray:
    """Matrix of ``f1 ∘ f2`` (apply ``R2`` first)."""
    return _R(R1) @ _R(R2)


def transport_monomial(R, a: Sequence[int], source: SkewForm, target: SkewForm) -> TorusElement:
    """``f(X^a) = q^{-1/2 Σ_{i<j} a_i a_j λ_ij} f(x_1)^{a_1} ... f(x_m)^{a_m}`` by torus products."""
    M = _R(R)
    acc = 0
    idx = [i for i, v in enumerate(a) if v]
    for s, i in enumerate(idx):
        for j in idx[s + 1 :]:
            acc += a[i] * a[j] * source.rows[i][j]
    out = TorusElement.one(target)
    for i in idx:
        out = out * TorusElement.monomial(target, tuple(int(v) for v in M[:, i])) ** int(a[i])
    return out.qshift(-acc)


def _diff_entries(A: np.ndarray, B: np.ndarray, limit: int = 8) -> list:
    bad = np.argwhere(A != B)
    return [(int(i), int(j), int(A[i, j]), int(B[i, j])) for i, j in bad[:limit]]


def check_quasi_hom(source: QuantumSeed, target: QuantumSeed, R) -> Report:
    """Per-condition verification of the quasi-homomorphism criterion."""
    M = _R(R)
    n = source.n_mut
    if target.n_mut != n:
        raise ShapeMismatch(f"source has {n} mutable variables, target {target.n_mut}")
    m, mp = source.m, target.m
    if M.shape != (mp, m):
        raise ShapeMismatch(f"R is {M.shape}, expected {(mp, m)}")
    Bt = np.array(source.btilde, dtype=np.int64)
    Btp = np.array(target.btilde, dtype=np.int64)
    Lam = np.array(source.lam.rows, dtype=np.int64)
    Lamp = np.array(target.lam.rows, dtype=np.int64)
    rep = Report("quasi-homomorphism criterion")

    rep.add("B = B'", np.array_equal(Bt[:n], Btp[:n]), _diff_entries(Bt[:n], Btp[:n]))
    top_ok = np.array_equal(M[:n, :n], np.eye(n, dtype=np.int64)) and not M[:n, n:].any()
    rep.add("R block shape", top_ok, None if top_ok else M[:n].tolist())
    RB = M @ Bt
    rep.add("R B~ = B~'", np.array_equal(RB, Btp), _diff_entries(RB, Btp))
    RLR = M.T @ Lamp @ M
    rep.add("R^t L' R = L", np.array_equal(RLR, Lam), _diff_entries(RLR, Lam))

    bad = []
    for i in range(n):
        b = [int(v) for v in Bt[:, i]]
        img = transport_monomial(M, b, source.lam, target.lam)
        want = TorusElement.monomial(target.lam, tuple(int(v) for v in Btp[:, i]))
        if img != want:
            bad.append({"direction": i, "image": str(img), "expected": str(want)})
    rep.add("f(yhat_i) = yhat'_i", not bad, bad or None)
    return rep


def mutated_R(R, source_btilde, target_btilde, k: int) -> np.ndarray:
    """R' after mutating both seeds in direction ``k``.

    Column ``k`` becomes ``e'_k + R[b_k]_+ - [b'_k]_+ - h̃_k``; the other
    columns are unchanged.  ``h̃_k`` is the frozen part of ``r_k``; it
    vanishes when ``H = 0``.
    """
    M = _R(R).copy()
    n = len(source_btilde[0])
    b = np.array([r[k] for r in source_btilde], dtype=np.int64)
    bp = np.array([r[k] for r in target_btilde], dtype=np.int64)
    hk = M[:, k].copy()
    hk[:n] = 0
    ek = np.zeros(M.shape[0], dtype=np.int64)
    ek[k] = 1
    M[:, k] = ek + _R(R) @ np.maximum(b, 0) - np.maximum(bp, 0) - hk
    return M


def _matrix_seed(seed: QuantumSeed, k: int) -> QuantumSeed:
    nb, nl = mutate_matrices(seed.btilde, seed.lam.rows, k)
    return new_seed(seed.labels, nb, nl)


def check_mutation_compat(source: QuantumSeed, target: QuantumSeed, R, k: int) -> Report:
    """Mutate both seeds at ``k``, form R', and re-run :func:`check_quasi_hom`."""
    s2 = _matrix_seed(source, k)
    t2 = _matrix_seed(target, k)
    R2 = mutated_R(R, source.btilde, target.btilde, k)
    rep = check_quasi_hom(s2, t2, R2)
    rep.title = f"quasi-homomorphism after mutation at {k}"
    return rep


def proportional(x: TorusElement, y: TorusElement, frozen_indices: Sequence[int]) -> tuple[int, tuple[int, ...]] | None:
    """``(ℓ, p)`` with ``x = q^{ℓ/2} X^p y``, ``p`` supported on ``frozen_indices``.

    ``p`` is returned restricted to the frozen coordinates (in the order of
    ``frozen_indices``).  Returns ``None`` when no such pair exists.
    """
    if not y:
        raise ValueError("proportional: y must be nonzero")
    if len(x) != len(y) or not x:
        return None
    p = tuple(a - b for a, b in zip(x.leading()[0], y.leading()[0]))
    fz = set(frozen_indices)
    if any(v for i, v in enumerate(p) if i not in fz):
        return None
    shifted = TorusElement.monomial(y.form, p) * y
    ell = q_ratio(x, shifted)
    if ell is None:
        return None
    return ell, tuple(p[i] for i in frozen_indices)


def random_quasi_hom(
    rng: random.Random, n_mut: int, max_h: int = 2, mix_steps: int = 4
) -> tuple[QuantumSeed, QuantumSeed, np.ndarray]:
    """A random seed pair related by ``R = [[I, 0], [H, U]]`` with ``U`` unimodular.

    The target is ``B̃' = R B̃``, ``Λ' = R^{-T} Λ R^{-1}``, so the criterion
    holds by construction.
    """
    n = n_mut
    bt, lam, _ = random_compatible_pair(rng, n, mix_steps=rng.randint(0, mix_steps))
    H = np.array([[rng.randint(-max_h, max_h) for _ in range(n)] for _ in range(n)], dtype=np.int64)
    U, Ui = (np.array(a, dtype=np.int64) for a in _unimodular(rng, n, rng.randint(0, mix_steps)))
    R = build_R(H, U, n).matrix()
    Rinv = build_R(-Ui @ H, Ui, n).matrix()
    bt2 = R @ np.array(bt, dtype=np.int64)
    lam2 = Rinv.T @ np.array(lam, dtype=np.int64) @ Rinv
    labels = [f"x{t}" for t in range(2 * n)]
    return new_seed(labels, bt, lam), new_seed(labels, bt2.tolist(), lam2.tolist()), R
