"""Grassmannian combinatorics and the standard quantum seeds of C_q[Gr(k,n)].

k-subsets are increasing tuples of integers in ``1..n``.  Seeds list the
mutable labels first (grid cells ordered by column ``a`` descending, then row
``b`` ascending) and then the ``n`` frozen cyclic intervals in the order
``[1,k], [2,k+1], ..., [n, n+k-1]``.
"""

from __future__ import annotations

import random
from fractions import Fraction
from itertools import combinations
from math import gcd
from typing import Iterable, Sequence

from .errors import (
    AmbientMismatch,
    IncompatiblePair,
    InvalidParams,
    NotConsecutivelyGeneric,
    NotWeaklySeparated,
)
from .qseed import QuantumSeed, mutate, new_seed
from .qtorus import SkewForm

KSubset = tuple[int, ...]

__all__ = [
    "KSubset",
    "subset_str",
    "parse_subset",
    "ksubsets",
    "interval",
    "frozen_subsets",
    "weakly_separated",
    "scott_lambda",
    "rect_label",
    "rectangles_cells",
    "rectangles_arrows",
    "rectangles_seed",
    "x_i_labels",
    "x_i_seed",
    "scott_matrix",
    "plucker_values",
    "random_sample",
    "window_map",
    "window_oracle",
    "det",
]


def subset_str(I: Iterable[int]) -> str:
    return "D(" + ",".join(str(x) for x in I) + ")"


def parse_subset(text: str) -> KSubset:
    """``D(1,2,4)``, ``(1,2,4)``, ``1,2,4`` or the compact ``124`` (n < 10)."""
    s = text.strip()
    if s.startswith("D"):
        s = s[1:]
    s = s.strip("()[]{} ")
    if "," in s:
        return tuple(sorted(int(x) for x in s.split(",")))
    return tuple(sorted(int(ch) for ch in s))


def ksubsets(k: int, n: int) -> list[KSubset]:
    return list(combinations(range(1, n + 1), k))


def _check_params(k: int, n: int) -> None:
    if not (2 <= k <= n - 2):
        raise InvalidParams(f"need 2 <= k <= n-2, got k={k}, n={n}")


def interval(j: int, k: int, n: int) -> KSubset:
    """The cyclic interval ``[j, j+k-1]`` read mod ``n`` (values in 1..n)."""
    return tuple(sorted((j - 1 + t) % n + 1 for t in range(k)))


def frozen_subsets(k: int, n: int) -> list[KSubset]:
    return [interval(j, k, n) for j in range(1, n + 1)]


def _split(I: KSubset, J: KSubset):
    A = sorted(set(I) - set(J))
    B = sorted(set(J) - set(I))
    return A, B


def _cond(A: list[int], B: list[int]) -> tuple[int, int] | None:
    """If no element of ``B`` lies strictly between min(A) and max(A), return (#below, #above)."""
    lo, hi = A[0], A[-1]
    below = sum(1 for b in B if b < lo)
    above = sum(1 for b in B if b > hi)
    if below + above != len(B):
        return None
    return below, above


def weakly_separated(I: Sequence[int], J: Sequence[int], n: int | None = None) -> bool:
    I, J = tuple(I), tuple(J)
    if len(I) != len(J):
        raise AmbientMismatch(f"{I} and {J} have different sizes")
    if n is not None and any(not 1 <= x <= n for x in I + J):
        raise AmbientMismatch(f"{I}, {J} not inside [1,{n}]")
    A, B = _split(I, J)
    if not A:
        return True
    return _cond(A, B) is not None or _cond(B, A) is not None


def scott_lambda(I: Sequence[int], J: Sequence[int]) -> int:
    """Exponent ``c`` with ``Δ^I Δ^J = q^c Δ^J Δ^I`` for weakly separated I, J."""
    I, J = tuple(I), tuple(J)
    if len(I) != len(J):
        raise AmbientMismatch(f"{I} and {J} have different sizes")
    A, B = _split(I, J)
    if not A:
        return 0
    c1 = _cond(A, B)  # J - I split around I - J
    if c1 is not None:
        below, above = c1
        return above - below
    c2 = _cond(B, A)  # I - J split around J - I
    if c2 is not None:
        below, above = c2
        return below - above
    raise NotWeaklySeparated(f"{subset_str(I)} and {subset_str(J)} are not weakly separated")


def scott_matrix(labels: Sequence[KSubset]) -> list[list[int]]:
    return [[scott_lambda(I, J) for J in labels] for I in labels]


# ---------------------------------------------------------------------------
# rectangles seed


def rect_label(a: int, b: int, k: int, n: int) -> KSubset:
    """``[1,a] ∪ [a+b+1, b+k]``."""
    return tuple(sorted(set(range(1, a + 1)) | set(range(a + b + 1, b + k + 1))))


def rectangles_cells(k: int, n: int) -> tuple[list[tuple[int, int]], list[tuple[int, int]]]:
    """Grid cells ``(a, b)`` of the mutable and frozen labels, in seed order."""
    _check_params(k, n)
    mutable = [(a, b) for a in range(k - 1, 0, -1) for b in range(1, n - k)]
    frozen = []
    for j in range(1, n + 1):
        if j <= n - k + 1:
            frozen.append((0, j - 1))
        else:
            frozen.append((j + k - 1 - n, n - k))
    return mutable, frozen


def rectangles_arrows(k: int, n: int) -> list[tuple[tuple[int, int], tuple[int, int]]]:
    """Arrows of the grid quiver between cells (frozen-to-frozen arrows included)."""
    _check_params(k, n)
    mutable, frozen = rectangles_cells(k, n)
    cells = set(mutable) | set(frozen)
    mset = set(mutable)
    arrows = []
    for (a, b) in sorted(cells):
        if b >= 2 and a <= k - 2 and (a + 1, b - 1) in cells:
            arrows.append(((a, b), (a + 1, b - 1)))
        if (a, b) in mset:
            arrows.append(((a, b), (a, b + 1)))
            arrows.append(((a, b), (a - 1, b)))
    arrows.append(((0, 0), (k - 1, 1)))
    return arrows


def _seed_from_labels(
    k: int, n: int, subsets: Sequence[KSubset], btilde: list[list[int]], meta_extra: dict | None = None
) -> QuantumSeed:
    lam = scott_matrix(subsets)
    meta = {"k": k, "n": n, "subsets": tuple(subsets)}
    meta.update(meta_extra or {})
    return new_seed([subset_str(I) for I in subsets], btilde, lam, meta=meta)


def rectangles_seed(k: int, n: int) -> QuantumSeed:
    """The rectangles seed with identity frame and Λ from Scott's exponents."""
    mutable, frozen = rectangles_cells(k, n)
    cells = mutable + frozen
    pos = {c: i for i, c in enumerate(cells)}
    nm = len(mutable)
    m = len(cells)
    bt = [[0] * nm for _ in range(m)]
    for src, dst in rectangles_arrows(k, n):
        i, j = pos[src], pos[dst]
        # arrow src -> dst: b[dst][src] = +1, b[src][dst] = -1
        if i < nm:
            bt[j][i] += 1
        if j < nm:
            bt[i][j] -= 1
    subsets = [rect_label(a, b, k, n) for a, b in cells]
    try:
        return _seed_from_labels(k, n, subsets, bt, {"cells": tuple(cells)})
    except IncompatiblePair:
        flipped = [[-v for v in r] for r in bt]
        return _seed_from_labels(k, n, subsets, flipped, {"cells": tuple(cells)})


# ---------------------------------------------------------------------------
# the modified cluster x(i)


def _check_xi(k: int, n: int, i: int) -> int:
    _check_params(k, n)
    d = gcd(k, n)
    if d < 2 or not 1 <= i <= d - 1:
        raise InvalidParams(f"need gcd(k,n) >= 2 and 1 <= i <= gcd-1, got k={k}, n={n}, i={i}")
    return d


def x_i_labels(k: int, n: int, i: int) -> list[KSubset]:
    """Labels of x(i): cells with ``a+b ≡ i (mod d)`` get ``[1,a-1] ∪ {a+b} ∪ [a+b+2, b+k+1]``."""
    d = _check_xi(k, n, i)
    mutable, frozen = rectangles_cells(k, n)
    out = []
    for a, b in mutable:
        if (a + b - i) % d == 0:
            s = set(range(1, a)) | {a + b} | set(range(a + b + 2, b + k + 2))
            out.append(tuple(sorted(s)))
        else:
            out.append(rect_label(a, b, k, n))
    return out + [rect_label(a, b, k, n) for a, b in frozen]


def plucker_values(matrix: Sequence[Sequence[Fraction]], k: int, n: int) -> dict[KSubset, Fraction]:
    """All maximal minors of a k×n matrix (columns indexed 1..n)."""
    cols = [[Fraction(matrix[r][c]) for r in range(k)] for c in range(n)]
    return {J: det([cols[j - 1] for j in J]) for J in ksubsets(k, n)}


def random_sample(
    rng: random.Random, k: int, n: int, lo: int = -9, hi: int = 9, distinct: bool = False
) -> list[list[Fraction]]:
    """Random integer k×n matrix (rows) with all maximal minors nonzero.

    With ``distinct`` the minors are also pairwise distinct, so a value
    identifies its Plücker coordinate.
    """
    while True:
        mat = [[Fraction(rng.randint(lo, hi)) for _ in range(n)] for _ in range(k)]
        vals = plucker_values(mat, k, n)
        if all(vals.values()) and (not distinct or len(set(vals.values())) == len(vals)):
            return mat


def label_by_values(elem, frame_values: Sequence[Fraction], table: dict[KSubset, Fraction]) -> KSubset | None:
    """Identify a torus element as a Plücker coordinate by its q=1 value."""
    v = elem.evaluate(frame_values)
    hits = [J for J, x in table.items() if x == v]
    return hits[0] if len(hits) == 1 else None


def x_i_seed(k: int, n: int, i: int, rng_seed: int = 0, max_steps: int = 200) -> QuantumSeed:
    """The seed of x(i), reached from the rectangles seed by mutation.

    Positions whose label differs from the target are mutated greedily,
    keeping a mutation only if the new variable is (at q=1) the Plücker
    coordinate required at that position.  The resulting Λ is cross-checked
    against Scott's exponents for the new labels.
    """
    target = x_i_labels(k, n, i)
    seed = rectangles_seed(k, n)
    subsets = list(seed.meta["subsets"])
    rng = random.Random(rng_seed)
    mat = random_sample(rng, k, n, -1000, 1000, distinct=True)
    table = plucker_values(mat, k, n)
    frame_values = [table[I] for I in subsets]
    want = set(target[: seed.n_mut])
    steps = 0
    while subsets[: seed.n_mut] != target[: seed.n_mut]:
        progressed = False
        for p in range(seed.n_mut):
            if subsets[p] == target[p]:
                continue
            trial = mutate(seed, p)
            J = label_by_values(trial.frame[p], frame_values, table)
            steps += 1
            if J is not None and J in want and J not in subsets:
                seed = trial
                subsets[p] = J
                progressed = True
            if steps > max_steps:
                raise InvalidParams(f"x({i}) not reached from the rectangles seed in {max_steps} steps")
        if not progressed:
            raise InvalidParams(f"x({i}) not reached by single-position mutations")
    lam = scott_matrix(subsets)
    if [list(r) for r in seed.lam.rows] != lam:
        raise IncompatiblePair("Λ after mutation disagrees with Scott's exponents for the x(i) labels")
    for I, J in combinations(subsets, 2):
        if not weakly_separated(I, J):
            raise NotWeaklySeparated(f"x({i}) labels {I}, {J} are not weakly separated")
    meta = dict(seed.meta)
    meta["subsets"] = tuple(subsets)
    meta["xi"] = i
    return QuantumSeed(
        tuple(subset_str(I) for I in subsets),
        seed.btilde,
        seed.lam,
        seed.frame,
        seed.ambient,
        seed.diagonal,
        meta,
    )


# ---------------------------------------------------------------------------
# q=1 window maps


def det(cols: Sequence[Sequence[Fraction]]) -> Fraction:
    """Exact determinant of the square matrix with the given columns."""
    a = [list(map(Fraction, c)) for c in cols]
    size = len(a)
    sign = 1
    out = Fraction(1)
    for c in range(size):
        piv = next((r for r in range(c, size) if a[r][c]), None)
        if piv is None:
            return Fraction(0)
        if piv != c:
            a[c], a[piv] = a[piv], a[c]
            sign = -sign
        p = a[c][c]
        out *= p
        for r in range(c + 1, size):
            f = a[r][c] / p
            if f:
                for t in range(c, size):
                    a[r][t] -= f * a[c][t]
    return sign * out


def window_map(k: int, n: int, i: int, vectors: Sequence[Sequence[Fraction]]) -> list[list[Fraction]]:
    """Apply the window map to ``n`` column vectors of length ``k``.

    Each window ``v_{jd+1}, ..., v_{jd+d}`` has its entries ``i, i+1``
    replaced by ``v_{i+1}, w`` with
    ``w = det(v_i, v_{i+2}, ..., v_{i+k}) / det(v_{i+1}, ..., v_{i+k}) v_{i+1} - v_i``
    (indices shifted by ``jd`` and read mod ``n``).
    """
    d = _check_xi(k, n, i)
    v = [[Fraction(x) for x in vec] for vec in vectors]
    if len(v) != n or any(len(x) != k for x in v):
        raise InvalidParams("need n vectors of length k")

    def at(t: int) -> list[Fraction]:
        return v[(t - 1) % n]

    out = [vec[:] for vec in v]
    for j in range(n // d):
        s = i + j * d
        den = det([at(t) for t in range(s + 1, s + k + 1)])
        if den == 0:
            raise NotConsecutivelyGeneric(f"det(v_{s + 1}, ..., v_{s + k}) vanishes")
        num = det([at(s)] + [at(t) for t in range(s + 2, s + k + 1)])
        alpha = num / den
        w = [alpha * x - y for x, y in zip(at(s + 1), at(s))]
        out[(s - 1) % n] = at(s + 1)[:]
        out[s % n] = w
    return out


def window_oracle(k: int, n: int, i: int, sample: Sequence[Sequence[Fraction]]) -> dict[KSubset, Fraction]:
    """Plücker coordinates of the window-map image of a k×n sample matrix (rows)."""
    vectors = [[Fraction(sample[r][c]) for r in range(k)] for c in range(n)]
    image = window_map(k, n, i, vectors)
    mat = [[image[c][r] for c in range(n)] for r in range(k)]
    return plucker_values(mat, k, n)
