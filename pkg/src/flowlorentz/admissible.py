"""Polytope/projection pairs at lattice-point level: a set of nonnegative
integer points in ``Z^m`` projected onto its first ``n`` coordinates."""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from typing import Sequence, Tuple

import numpy as np

from .kostant import enumerate_flows
from .multigraph import Multigraph, sink_structure
from .polyalg import Polynomial, coefficient_shift

Point = Tuple[int, ...]


@dataclass(frozen=True)
class AdmissiblePair:
    ambient_dim: int
    proj_dim: int
    lattice_points: Tuple[Point, ...]

    def __post_init__(self):
        pts = tuple(sorted({tuple(int(x) for x in p) for p in self.lattice_points}))
        object.__setattr__(self, "lattice_points", pts)
        if not 0 <= self.proj_dim <= self.ambient_dim:
            raise ValueError("need 0 <= n <= m")
        for p in pts:
            if len(p) != self.ambient_dim:
                raise ValueError(f"point {p} is not in Z^{self.ambient_dim}")
            if min(p, default=0) < 0:
                raise ValueError(f"point {p} leaves the nonnegative orthant")

    @property
    def variables(self):
        return [f"x_{i}" for i in range(1, self.proj_dim + 1)]


def sigma_projected(p: AdmissiblePair) -> Polynomial:
    counts = Counter(q[: p.proj_dim] for q in p.lattice_points)
    return Polynomial(p.variables, counts)


def derived_pair(p: AdmissiblePair, i: int) -> AdmissiblePair:
    """Points with coordinate ``i`` (1-based) at least 1, shifted down by ``e_i``."""
    if not 1 <= i <= p.proj_dim:
        raise ValueError(f"i must lie in [1, {p.proj_dim}]")
    pts = []
    for q in p.lattice_points:
        if q[i - 1] >= 1:
            r = list(q)
            r[i - 1] -= 1
            pts.append(tuple(r))
    return AdmissiblePair(p.ambient_dim, p.proj_dim, tuple(pts))


def derivative_identity_check(p: AdmissiblePair, i: int) -> bool:
    """Coefficient shift of the projected transform equals the transform of the
    derived pair."""
    return coefficient_shift(sigma_projected(p), i - 1) == sigma_projected(derived_pair(p, i))


def flow_pair(g: Multigraph, a: Sequence[int]) -> AdmissiblePair:
    """Integer ``a``-flows with sink-edge coordinates moved to the front."""
    sink = sink_structure(g)
    front = [sink.positions[e] for e in sink.S]
    rest = [c for c in range(len(g.edges)) if c not in set(front)]
    order = front + rest
    pts = tuple(tuple(f[c] for c in order) for f in enumerate_flows(g, a))
    return AdmissiblePair(len(g.edges), len(front), pts)


def hull_lattice_points(vertices) -> Tuple[Point, ...]:
    """Integer points of the convex hull of full-dimensional integer points."""
    from scipy.spatial import ConvexHull

    V = np.asarray(vertices, dtype=float)
    hull = ConvexHull(V)
    lo = V.min(axis=0).astype(int)
    hi = V.max(axis=0).astype(int)
    grid = np.stack(np.meshgrid(*[np.arange(a, b + 1) for a, b in zip(lo, hi)], indexing="ij"), -1)
    grid = grid.reshape(-1, V.shape[1])
    # small tolerance: facet equations are floating point
    inside = (grid @ hull.equations[:, :-1].T + hull.equations[:, -1] <= 1e-9).all(axis=1)
    return tuple(tuple(int(x) for x in q) for q in grid[inside])


def random_lattice_polytope(rng: np.random.Generator, m: int, n: int, box: int = 4, npts: int = 6) -> AdmissiblePair:
    """Convex hull of random integer points in ``[0, box]^m`` (resampled until
    full dimensional)."""
    while True:
        V = rng.integers(0, box + 1, size=(max(npts, m + 1), m))
        if np.linalg.matrix_rank(V[1:] - V[0]) == m:
            return AdmissiblePair(m, n, hull_lattice_points(V))


def format_pair(p: AdmissiblePair) -> str:
    lines = [f"{p.ambient_dim} {p.proj_dim}"] + [" ".join(map(str, q)) for q in p.lattice_points]
    return "\n".join(lines) + "\n"


def parse_pair(text: str) -> AdmissiblePair:
    rows = [line.split() for line in text.splitlines() if line.strip()]
    if not rows or len(rows[0]) != 2:
        raise ValueError("header must be 'm n'")
    m, n = int(rows[0][0]), int(rows[0][1])
    return AdmissiblePair(m, n, tuple(tuple(int(x) for x in r) for r in rows[1:]))
