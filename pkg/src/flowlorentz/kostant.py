"""Kostant partition functions and integer flows on multigraphs.

``kostant`` is a dynamic program over the vertices in increasing order: the
state is the residual netflow of the vertices not yet processed, and the
supply of the current vertex is split over its out-neighbours (parallel
edges are folded into a binomial factor).  ``count_flows_naive`` is an
independent box enumeration kept only for cross-checks.
"""

from __future__ import annotations

import itertools
from functools import lru_cache
from math import comb
from typing import Dict, Iterator, List, Sequence, Tuple

import numpy as np

from .multigraph import Multigraph, incidence_matrix

Flow = Tuple[int, ...]


def compositions(total: int, parts: int) -> Iterator[Tuple[int, ...]]:
    """Weak compositions of ``total`` into ``parts`` nonnegative integers."""
    if parts == 0:
        if total == 0:
            yield ()
        return
    if parts == 1:
        yield (total,)
        return
    for first in range(total, -1, -1):
        for rest in compositions(total - first, parts - 1):
            yield (first,) + rest


class _Counter:
    def __init__(self, g: Multigraph):
        self.size = g.n_plus_1
        self.targets: List[List[Tuple[int, int]]] = []
        for v in range(1, g.n_plus_1 + 1):
            mult: Dict[int, int] = {}
            for i, j in g.edges:
                if i == v:
                    mult[j] = mult.get(j, 0) + 1
            self.targets.append(sorted(mult.items()))
        # memo is a plain dict: values are deterministic, so concurrent writes are benign
        self.memo: Dict[Tuple[int, Tuple[int, ...]], int] = {}

    def count(self, v: int, state: Tuple[int, ...]) -> int:
        key = (v, state)
        hit = self.memo.get(key)
        if hit is not None:
            return hit
        s, rest = state[0], state[1:]
        targets = self.targets[v - 1]
        if s < 0 or (s > 0 and not targets):
            result = 0
        elif not rest:
            result = 1 if s == 0 else 0
        elif s == 0:
            result = self.count(v + 1, rest)
        else:
            result = 0
            for split in compositions(s, len(targets)):
                weight = 1
                nxt = list(rest)
                for (j, m), c in zip(targets, split):
                    if c:
                        weight *= comb(c + m - 1, m - 1)
                        nxt[j - v - 1] += c
                sub = self.count(v + 1, tuple(nxt))
                if sub:
                    result += weight * sub
        self.memo[key] = result
        return result


@lru_cache(maxsize=256)
def _counter(g: Multigraph) -> _Counter:
    return _Counter(g)


def _check_netflow(g: Multigraph, a: Sequence[int]) -> Tuple[int, ...]:
    a = tuple(int(x) for x in a)
    if len(a) != g.n_plus_1:
        raise ValueError(f"netflow has length {len(a)}, graph has {g.n_plus_1} vertices")
    return a


def kostant(g: Multigraph, a: Sequence[int]) -> int:
    """Number of nonnegative integer flows on ``g`` with netflow ``a`` (0 if infeasible)."""
    a = _check_netflow(g, a)
    if sum(a) != 0:
        return 0
    return _counter(g).count(1, a)


def enumerate_flows(g: Multigraph, a: Sequence[int]) -> List[Flow]:
    """All integer ``a``-flows, as tuples of edge values in edge-id order."""
    a = _check_netflow(g, a)
    if sum(a) != 0:
        return []
    counter = _counter(g)
    out_edges = [g.out_edges(v) for v in range(1, g.n_plus_1 + 1)]
    heads = [j for _, j in g.edges]
    flows: List[Flow] = []
    values = [0] * len(g.edges)

    def walk(v: int, state: Tuple[int, ...]) -> None:
        if counter.count(v, state) == 0:
            return
        s, rest = state[0], state[1:]
        if not rest:
            flows.append(tuple(values))
            return
        cols = out_edges[v - 1]
        for split in compositions(s, len(cols)):
            nxt = list(rest)
            for col, c in zip(cols, split):
                values[col] = c
                nxt[heads[col] - v - 1] += c
            walk(v + 1, tuple(nxt))
        for col in cols:
            values[col] = 0

    walk(1, a)
    return flows


def count_flows_naive(g: Multigraph, a: Sequence[int]) -> int:
    """Box enumeration: every edge value in ``[0, sum of positive a_i]``.
    Exponential in the edge count; tiny graphs only."""
    a = np.array(_check_netflow(g, a))
    if a.sum() != 0:
        return 0
    bound = int(a[a > 0].sum())
    m = incidence_matrix(g)
    return sum(
        1
        for f in itertools.product(range(bound + 1), repeat=len(g.edges))
        if np.array_equal(m @ np.array(f, dtype=np.int64), a)
    )


def flow_netflow(g: Multigraph, f: Sequence[int]) -> Tuple[int, ...]:
    return tuple(int(v) for v in incidence_matrix(g) @ np.asarray(f, dtype=np.int64))


def unit_flow_vertices(g: Multigraph, i: int) -> List[Flow]:
    """0/1 flows along each increasing path from ``i`` to the sink."""
    if not 1 <= i <= g.n:
        raise ValueError(f"source must lie in [1, {g.n}]")
    out_edges = [g.out_edges(v) for v in range(1, g.n_plus_1 + 1)]
    paths: List[Flow] = []
    used: List[int] = []

    def dfs(v: int) -> None:
        if v == g.sink:
            f = [0] * len(g.edges)
            for col in used:
                f[col] = 1
            paths.append(tuple(f))
            return
        for col in out_edges[v - 1]:
            used.append(col)
            dfs(g.edges[col][1])
            used.pop()

    dfs(i)
    return paths


def sumset(a: set, b: set) -> set:
    return {tuple(x + y for x, y in zip(p, q)) for p in a for q in b}


def minkowski_lattice_check(g: Multigraph, a: Sequence[int]) -> bool:
    """Do the integer ``a``-flows equal the iterated sumset of the unit-flow
    polytopes' lattice points, ``a_i`` copies for each source ``i``?"""
    a = _check_netflow(g, a)
    if any(x < 0 for x in a[:-1]) or a[-1] > 0:
        raise ValueError("netflow must be nonnegative on [n] and nonpositive at the sink")
    acc = {(0,) * len(g.edges)}
    for i in range(1, g.n + 1):
        if a[i - 1] == 0:
            continue
        unit = [0] * g.n_plus_1
        unit[i - 1], unit[-1] = 1, -1
        summand = set(enumerate_flows(g, unit))
        for _ in range(a[i - 1]):
            acc = sumset(acc, summand)
    return acc == set(enumerate_flows(g, a))


def rational_feasible(g: Multigraph, a: Sequence[int]) -> bool:
    """Is the real flow polytope nonempty?  An LP feasibility test, kept
    independent of the integer machinery above."""
    from scipy.optimize import linprog

    a = _check_netflow(g, a)
    if sum(a) != 0:
        return False
    if not g.edges:
        return all(x == 0 for x in a)
    res = linprog(
        np.zeros(len(g.edges)),
        A_eq=incidence_matrix(g).astype(float),
        b_eq=np.array(a, dtype=float),
        bounds=[(0, None)] * len(g.edges),
        method="highs",
    )
    return res.status == 0
