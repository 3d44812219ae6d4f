"""Loopless directed multigraphs on ``[n+1]`` and the graph surgeries used
throughout the package.

Vertices are 1-based.  Every edge points from its smaller to its larger
endpoint.  Parallel edges are stored as repeated pairs; the k-th occurrence
of ``(i, j)`` in insertion order is the edge id ``(i, j, k)``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Dict, List, Sequence, Tuple

import numpy as np

Edge = Tuple[int, int]
EdgeId = Tuple[int, int, int]


@dataclass(frozen=True)
class Multigraph:
    n_plus_1: int
    edges: Tuple[Edge, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "edges", tuple((int(i), int(j)) for i, j in self.edges))
        if self.n_plus_1 < 1:
            raise ValueError("a graph needs at least one vertex")
        for i, j in self.edges:
            if not 1 <= i < j <= self.n_plus_1:
                raise ValueError(f"edge ({i},{j}) is not oriented small->large inside [{self.n_plus_1}]")

    @property
    def n(self) -> int:
        return self.n_plus_1 - 1

    @property
    def sink(self) -> int:
        return self.n_plus_1

    @property
    def edge_ids(self) -> List[EdgeId]:
        seen: Dict[Edge, int] = {}
        ids = []
        for e in self.edges:
            seen[e] = seen.get(e, 0) + 1
            ids.append((e[0], e[1], seen[e]))
        return ids

    def multiplicity(self, i: int, j: int) -> int:
        return sum(1 for e in self.edges if e == (i, j))

    def outdegree(self, i: int) -> int:
        return sum(1 for t, _ in self.edges if t == i)

    def out_edges(self, i: int) -> List[int]:
        """Positions (into ``edges``) of the edges leaving ``i``."""
        return [p for p, (t, _) in enumerate(self.edges) if t == i]

    @property
    def has_unique_sink(self) -> bool:
        return all(self.outdegree(i) >= 1 for i in range(1, self.n_plus_1))

    def require_unique_sink(self) -> None:
        bad = [i for i in range(1, self.n_plus_1) if self.outdegree(i) == 0]
        if bad:
            raise ValueError(f"vertices {bad} have outdegree 0; vertex {self.sink} must be the unique sink")

    def restrict(self) -> "Multigraph":
        """``G|_[n]``: drop the sink and every edge into it."""
        return Multigraph(self.n, tuple(e for e in self.edges if e[1] != self.sink))


def incidence_matrix(g: Multigraph) -> np.ndarray:
    m = np.zeros((g.n_plus_1, len(g.edges)), dtype=np.int64)
    for col, (i, j) in enumerate(g.edges):
        m[i - 1, col] = 1
        m[j - 1, col] = -1
    return m


def transitive_closure(g: Multigraph) -> set:
    succ: Dict[int, set] = {v: set() for v in range(1, g.n_plus_1 + 1)}
    for i, j in g.edges:
        succ[i].add(j)
    # edges only go forward, so a reverse sweep sees every successor finished
    reach: Dict[int, set] = {}
    for v in range(g.n_plus_1, 0, -1):
        r = set(succ[v])
        for w in succ[v]:
            r |= reach[w]
        reach[v] = r
    return {(i, j) for i, js in reach.items() for j in js}


@dataclass(frozen=True)
class SinkStructure:
    """Edges into the sink and the vertices feeding it, with per-vertex
    reachability refinements.  ``S`` is sorted by ``(tail, k)``; ``I[i]`` lists
    the sink edges leaving ``i``.  ``positions`` maps each sink edge id to its
    column in the owning graph's edge list."""

    n: int
    S: Tuple[EdgeId, ...]
    T: Tuple[int, ...]
    S_i: Dict[int, Tuple[EdgeId, ...]]
    T_i: Dict[int, Tuple[int, ...]]
    I: Dict[int, Tuple[EdgeId, ...]]
    positions: Dict[EdgeId, int] = field(default_factory=dict)


def sink_structure(g: Multigraph) -> SinkStructure:
    sink = g.sink
    ids = g.edge_ids
    positions = {e: p for p, e in enumerate(ids) if e[1] == sink}
    S = tuple(sorted(positions))
    T = tuple(sorted({e[0] for e in S}))
    I = {i: tuple(e for e in S if e[0] == i) for i in range(1, g.n + 1)}
    closure = transitive_closure(g)
    T_i, S_i = {}, {}
    for i in range(1, g.n + 1):
        # i itself counts as reachable from i (the path may leave at i)
        T_i[i] = tuple(j for j in T if j == i or (i, j) in closure)
        S_i[i] = tuple(e for e in S if e[0] in T_i[i])
    return SinkStructure(g.n, S, T, S_i, T_i, I, positions)


@dataclass(frozen=True)
class ExtensionRecord:
    """Vertex renaming produced by :func:`extension`.

    ``ex_vertex[i]`` is the index of ``i^ex`` in the extended graph and
    ``sink_edge[i]`` the edge id ``(i^ex, sink, 1)`` matched with ``i`` in T_G.
    """

    original: Multigraph
    ex_vertex: Dict[int, int]
    sink_edge: Dict[int, EdgeId]
    sink: int


def extension(g: Multigraph) -> Tuple[Multigraph, ExtensionRecord]:
    """Reroute every sink edge ``(i, sink)`` through a fresh vertex ``i^ex``.

    The new vertices are numbered ``n+1, n+2, ...`` in increasing order of
    ``i``; the sink moves to the end.
    """
    g.require_unique_sink()
    T = sink_structure(g).T
    n = g.n
    ex_vertex = {i: n + 1 + r for r, i in enumerate(T)}
    new_sink = n + len(T) + 1
    edges = [(i, ex_vertex[i]) if j == g.sink else (i, j) for i, j in g.edges]
    edges += [(ex_vertex[i], new_sink) for i in T]
    sink_edge = {i: (ex_vertex[i], new_sink, 1) for i in T}
    return Multigraph(new_sink, tuple(edges)), ExtensionRecord(g, ex_vertex, sink_edge, new_sink)


def contract_extension(gex: Multigraph, record: ExtensionRecord) -> Multigraph:
    """Undo :func:`extension` by contracting every ``(i^ex, sink)`` edge."""
    back = {v: i for i, v in record.ex_vertex.items()}
    n_plus_1 = gex.n_plus_1 - len(back)
    edges = []
    for i, j in gex.edges:
        if i in back:
            continue
        edges.append((i, n_plus_1) if j in back else (i, j))
    return Multigraph(n_plus_1, tuple(edges))


def extend_netflow(g: Multigraph, a: Sequence[int]) -> Tuple[int, ...]:
    """Netflow on ``G^ex``: ``a|_[n]``, zeros on the new vertices, then the sink entry."""
    T = sink_structure(g).T
    return tuple(a[: g.n]) + (0,) * len(T) + (a[g.n],)


def simplify_at_sink(g: Multigraph) -> Multigraph:
    """``G^-``: keep only the first edge from each vertex into the sink."""
    kept = set()
    edges = []
    for i, j in g.edges:
        if j == g.sink:
            if i in kept:
                continue
            kept.add(i)
        edges.append((i, j))
    return Multigraph(g.n_plus_1, tuple(edges))


def flip(h: Multigraph) -> Multigraph:
    """Relabel ``i -> m+1-i`` on ``[m]`` and reverse every edge."""
    m = h.n_plus_1
    return Multigraph(m, tuple((m + 1 - j, m + 1 - i) for i, j in h.edges))


def flip_restriction(g: Multigraph) -> Multigraph:
    """``G^r`` on ``[n]``.  May have several sinks; only used as a Kostant argument."""
    return flip(g.restrict())


@dataclass(frozen=True)
class ProofGraph:
    graph: Multigraph
    N: int
    z_tilde: Tuple[int, ...]
    o_tilde: Tuple[int, ...]


def proof_graph(g: Multigraph, z: Sequence[int]) -> ProofGraph:
    """Pad ``G^r`` with ``-min(z)`` extra vertices before a new sink, joined to
    everything below them by forward edges."""
    n = g.n
    z = tuple(int(v) for v in z)
    if len(z) != n:
        raise ValueError(f"z must have length {n}")
    if sum(z) != -2:
        raise ValueError(f"z must sum to -2, got {sum(z)}")
    zmin = min(z)
    N = n - zmin
    edges = list(flip_restriction(g).edges)
    for i in range(1, N + 1):
        for j in range(max(i + 1, n + 1), N + 2):
            edges.append((i, j))
    gt = Multigraph(N + 1, tuple(edges))
    z_tilde = z + (0,) * (-zmin)
    o_tilde = tuple(gt.outdegree(i) - 1 for i in range(1, N + 1))
    return ProofGraph(gt, N, z_tilde, o_tilde)


def format_graph(g: Multigraph) -> str:
    lines = [str(g.n_plus_1)] + [f"{i} {j}" for i, j in g.edges]
    return "\n".join(lines) + "\n"


def parse_graph(text: str) -> Multigraph:
    rows = []
    for raw in text.splitlines():
        line = raw.split("#", 1)[0].strip()
        if line:
            rows.append(line.split())
    if not rows or len(rows[0]) != 1:
        raise ValueError("first line must be the vertex count")
    edges = []
    for row in rows[1:]:
        if len(row) != 2:
            raise ValueError(f"bad edge line: {' '.join(row)!r}")
        edges.append((int(row[0]), int(row[1])))
    return Multigraph(int(rows[0][0]), tuple(edges))


def read_graph(path) -> Multigraph:
    with open(path) as fh:
        return parse_graph(fh.read())
