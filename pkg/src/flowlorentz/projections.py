"""Projections of flow polytopes onto sink-edge coordinates (``phi``) and onto
escaping flows (``psi``), and the projected integer point transforms.

Each transform is available in two independent modes: ``bruteforce`` walks
every integer flow, ``formula`` walks the lattice points of the target
permutahedron and weights each by the Kostant count of its fiber.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from math import comb, prod
from typing import Dict, List, Sequence, Tuple

from .kostant import Flow, enumerate_flows, kostant
from .multigraph import (
    EdgeId,
    Multigraph,
    SinkStructure,
    extend_netflow,
    extension,
    sink_structure,
)
from .permutahedra import LatticePointSet, SimplexSum, lattice_points
from .polyalg import Polynomial

MODES = ("formula", "bruteforce")


def check_netflow(g: Multigraph, a: Sequence[int]) -> Tuple[int, ...]:
    """Validate a netflow for the projection machinery and return it as a tuple."""
    g.require_unique_sink()
    a = tuple(int(x) for x in a)
    if len(a) != g.n_plus_1:
        raise ValueError(f"netflow has length {len(a)}, graph has {g.n_plus_1} vertices")
    if any(x < 0 for x in a[:-1]) or a[-1] > 0:
        raise ValueError("netflow must be nonnegative on [n] and nonpositive at the sink")
    if sum(a) != 0:
        raise ValueError("netflow must sum to zero")
    return a


def phi_labels(sink: SinkStructure) -> List[str]:
    return [f"x_{{{i};{k}}}" for i, _, k in sink.S]


def psi_labels(sink: SinkStructure) -> List[str]:
    return [f"x_{i}" for i in sink.T]


def phi(x: Flow, sink: SinkStructure) -> Tuple[int, ...]:
    """Restriction of a flow to the sink edges, in ``S_G`` order."""
    return tuple(x[sink.positions[e]] for e in sink.S)


def escaping_flow_of_phi(p: Sequence[int], sink: SinkStructure) -> Tuple[int, ...]:
    """Escaping flow (length ``n``) of a point of ``R^{S_G}``."""
    ef = [0] * sink.n
    for (i, _, _), v in zip(sink.S, p):
        ef[i - 1] += v
    return tuple(ef)


def psi(x: Flow, sink: SinkStructure) -> Tuple[int, ...]:
    """Escaping flow of ``x``: total flow leaving each vertex straight into the sink."""
    ef = [0] * sink.n
    for e, col in sink.positions.items():
        ef[e[0] - 1] += x[col]
    return tuple(ef)


def restrict_to_T(v: Sequence[int], sink: SinkStructure) -> Tuple[int, ...]:
    return tuple(v[i - 1] for i in sink.T)


def expand_from_T(q: Sequence[int], sink: SinkStructure) -> Tuple[int, ...]:
    full = [0] * sink.n
    for i, v in zip(sink.T, q):
        full[i - 1] = v
    return tuple(full)


def P_sum(g: Multigraph, a: Sequence[int]) -> SimplexSum:
    sink = sink_structure(g)
    return SimplexSum(sink.S, tuple((a[i - 1], sink.S_i[i]) for i in range(1, g.n + 1)))


def Q_sum(g: Multigraph, a: Sequence[int]) -> SimplexSum:
    sink = sink_structure(g)
    return SimplexSum(sink.T, tuple((a[i - 1], sink.T_i[i]) for i in range(1, g.n + 1)))


def P_points(g: Multigraph, a: Sequence[int]) -> LatticePointSet:
    return lattice_points(P_sum(g, check_netflow(g, a)))


def Q_points(g: Multigraph, a: Sequence[int]) -> LatticePointSet:
    return lattice_points(Q_sum(g, check_netflow(g, a)))


def residual_netflow(g: Multigraph, a: Sequence[int], ef: Sequence[int]) -> Tuple[int, ...]:
    """``(a_1 - ef_1, ..., a_n - ef_n)`` on ``G|_[n]``."""
    return tuple(a[i] - ef[i] for i in range(g.n))


def sigma_phi(g: Multigraph, a: Sequence[int], mode: str = "formula") -> Polynomial:
    a = check_netflow(g, a)
    sink = sink_structure(g)
    labels = phi_labels(sink)
    if mode == "bruteforce":
        counts = Counter(phi(x, sink) for x in enumerate_flows(g, a))
        return Polynomial(labels, counts)
    if mode != "formula":
        raise ValueError(f"unknown mode {mode!r}")
    restricted = g.restrict()
    terms = {}
    for p in lattice_points(P_sum(g, a)).points:
        ef = escaping_flow_of_phi(p, sink)
        terms[p] = kostant(restricted, residual_netflow(g, a, ef))
    return Polynomial(labels, terms)


def sigma_psi(g: Multigraph, a: Sequence[int], mode: str = "formula") -> Polynomial:
    a = check_netflow(g, a)
    sink = sink_structure(g)
    labels = psi_labels(sink)
    if mode == "bruteforce":
        counts = Counter(restrict_to_T(psi(x, sink), sink) for x in enumerate_flows(g, a))
        return Polynomial(labels, counts)
    if mode != "formula":
        raise ValueError(f"unknown mode {mode!r}")
    restricted = g.restrict()
    terms = {}
    for q in lattice_points(Q_sum(g, a)).points:
        full = expand_from_T(q, sink)
        k = kostant(restricted, residual_netflow(g, a, full))
        terms[q] = k * simplex_factor_count(sink, full)
    return Polynomial(labels, terms)


def simplex_factor_count(sink: SinkStructure, ef: Sequence[int]) -> int:
    """Lattice points of ``prod_i ef_i * Delta_{I_i}``."""
    return prod(comb(len(sink.I[i]) + ef[i - 1] - 1, ef[i - 1]) for i in sink.T)


@dataclass(frozen=True)
class PhiFiber:
    netflow: Tuple[int, ...]
    count: int


@dataclass(frozen=True)
class PsiFiber:
    netflow: Tuple[int, ...]
    simplex_factors: Tuple[Tuple[int, int, Tuple[EdgeId, ...]], ...]  # (i, q_i, I_i)
    count: int


def fiber_phi(g: Multigraph, a: Sequence[int], p: Sequence[int]) -> PhiFiber:
    """Netflow ``(a - ef p, 0)`` identifying the fiber over ``p`` and its lattice count."""
    a = check_netflow(g, a)
    p = tuple(int(v) for v in p)
    if p not in lattice_points(P_sum(g, a)):
        raise ValueError(f"{p} is not a lattice point of P(G;a)")
    ef = escaping_flow_of_phi(p, sink_structure(g))
    res = residual_netflow(g, a, ef)
    return PhiFiber(res + (0,), kostant(g.restrict(), res))


def fiber_psi(g: Multigraph, a: Sequence[int], q: Sequence[int]) -> PsiFiber:
    """Fiber over ``q`` (indexed by ``T_G``): a flow polytope times simplices."""
    a = check_netflow(g, a)
    q = tuple(int(v) for v in q)
    sink = sink_structure(g)
    if q not in lattice_points(Q_sum(g, a)):
        raise ValueError(f"{q} is not a lattice point of Q(G;a)")
    full = expand_from_T(q, sink)
    res = residual_netflow(g, a, full)
    factors = tuple((i, full[i - 1], sink.I[i]) for i in sink.T)
    count = kostant(g.restrict(), res) * simplex_factor_count(sink, full)
    return PsiFiber(res + (0,), factors, count)


@dataclass
class TransportReport:
    ok: bool
    mismatches: List[Tuple[Tuple[int, ...], object, object]]


def gex_transport(g: Multigraph, a: Sequence[int], mode: str = "formula") -> TransportReport:
    """Compare ``sigma_psi(G, a)`` with ``sigma_phi(G^ex, a^ex)`` after renaming
    each variable ``x_{i^ex;1}`` to ``x_i``."""
    a = check_netflow(g, a)
    gex, record = extension(g)
    left = sigma_psi(g, a, mode)
    right = sigma_phi(gex, extend_netflow(g, a), mode)
    sink_ex = sink_structure(gex)
    rename: Dict[EdgeId, str] = {e: f"x_{i}" for i, e in record.sink_edge.items()}
    right = right.rename([rename[e] for e in sink_ex.S])
    mismatches = []
    for alpha in sorted(set(left.terms) | set(right.terms)):
        cl, cr = left.coefficient(alpha), right.coefficient(alpha)
        if cl != cr:
            mismatches.append((alpha, cl, cr))
    if left.variables != right.variables:
        mismatches.append(((), left.variables, right.variables))
    return TransportReport(not mismatches, mismatches)
