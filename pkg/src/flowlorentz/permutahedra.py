"""Lattice points of Minkowski sums of scaled coordinate simplices, and the
M-convex exchange axiom."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Hashable, Optional, Tuple

import numpy as np

Point = Tuple[int, ...]


@dataclass(frozen=True)
class SimplexSum:
    """``sum(scale * Delta_support)`` inside the coordinate space on ``ambient``."""

    ambient: Tuple[Hashable, ...]
    summands: Tuple[Tuple[int, Tuple[Hashable, ...]], ...]

    def __post_init__(self):
        amb = set(self.ambient)
        for scale, support in self.summands:
            if scale < 0:
                raise ValueError("scales must be nonnegative")
            if scale and not support:
                raise ValueError("a positively scaled summand needs a nonempty support")
            if not set(support) <= amb:
                raise ValueError(f"support {support} leaves the ambient index set")


@dataclass(frozen=True)
class LatticePointSet:
    ambient: Tuple[Hashable, ...]
    points: Tuple[Point, ...]

    def __len__(self):
        return len(self.points)

    def __contains__(self, p):
        return tuple(p) in set(self.points)


def lattice_points(s: SimplexSum) -> LatticePointSet:
    """Integer points of the sum, built as an iterated sumset: each unit of
    scale adds one coordinate vector from the summand's support."""
    index = {k: pos for pos, k in enumerate(s.ambient)}
    dim = len(s.ambient)
    current = {(0,) * dim}
    for scale, support in s.summands:
        cols = [index[k] for k in support]
        for _ in range(scale):
            nxt = set()
            for p in current:
                for c in cols:
                    q = list(p)
                    q[c] += 1
                    nxt.add(tuple(q))
            current = nxt
    return LatticePointSet(tuple(s.ambient), tuple(sorted(current)))


@dataclass(frozen=True)
class ExchangeWitness:
    """A pair violating the exchange axiom at index ``i`` (0-based)."""

    alpha: Point
    beta: Point
    i: int


def is_m_convex(points, chunk: int = 64) -> Tuple[bool, Optional[ExchangeWitness]]:
    """Check the symmetric exchange axiom on every ordered pair.

    For each ``alpha, beta`` and each ``i`` with ``alpha_i > beta_i`` some ``j``
    must satisfy ``alpha_j < beta_j`` with ``alpha - e_i + e_j`` and
    ``beta - e_j + e_i`` both in the set.  Vectorised over pairs.
    """
    pts = points.points if isinstance(points, LatticePointSet) else points
    pts = sorted({tuple(int(x) for x in p) for p in pts})
    if len(pts) <= 1:
        return True, None
    P = np.array(pts, dtype=np.int64)
    if (P < 0).any():
        raise ValueError("points must be nonnegative")
    N, n = P.shape
    members = set(pts)
    # X[p, i, j]: is P[p] - e_i + e_j in the set?
    X = np.zeros((N, n, n), dtype=bool)
    for p, alpha in enumerate(pts):
        for i in range(n):
            if alpha[i] == 0:
                continue
            for j in range(n):
                q = list(alpha)
                q[i] -= 1
                q[j] += 1
                X[p, i, j] = tuple(q) in members
    XT = X.transpose(0, 2, 1)  # XT[b, i, j] = X[b, j, i]
    for start in range(0, N, chunk):
        A = P[start : start + chunk]
        D = A[:, None, :] - P[None, :, :]  # (c, N, n)
        need = D > 0
        less = D < 0
        # ok[a, b, i] = any_j less[a,b,j] & X[a,i,j] & X[b,j,i]
        ok = np.einsum(
            "abj,aij,bij->abi",
            less.astype(np.int32),
            X[start : start + chunk].astype(np.int32),
            XT.astype(np.int32),
        ) > 0
        bad = need & ~ok
        if bad.any():
            a, b, i = map(int, np.argwhere(bad)[0])
            return False, ExchangeWitness(pts[start + a], pts[b], i)
    return True, None
