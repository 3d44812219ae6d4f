"""Randomized verification sweeps and their reports."""

from __future__ import annotations

import itertools
import json
import time
from dataclasses import asdict, dataclass, field
from typing import Dict, List, Optional, Tuple

import numpy as np

from .admissible import derivative_identity_check, flow_pair
from .kostant import enumerate_flows, kostant
from .lorentzian import (
    build_K_matrix,
    conjugate_antidiagonal,
    expand_matrix,
    hessian_slice,
    inertia,
    interlacing_check,
    is_lorentzian_normalized,
    log_concavity_check,
)
from .multigraph import Multigraph, flip_restriction, simplify_at_sink, sink_structure
from .permutahedra import SimplexSum, is_m_convex, lattice_points
from .projections import (
    P_points,
    Q_points,
    escaping_flow_of_phi,
    fiber_phi,
    gex_transport,
    phi,
    sigma_phi,
    sigma_psi,
)
from .polyalg import Polynomial
from .volume import hessian_via_volume


@dataclass
class SweepConfig:
    max_n: int = 4
    max_edges: int = 8
    max_netflow_entry: int = 3
    instance_count: int = 100
    rng_seed: int = 42
    parallel_workers: int = 1
    flip_window: int = 2
    corrupt_instance: Optional[int] = None  # test hook: perturb one coefficient of this instance

    def __post_init__(self):
        if self.max_n < 2 or self.max_edges < 1 or self.max_netflow_entry < 1:
            raise ValueError("sweep bounds must be positive (max_n >= 2)")
        if self.instance_count < 0 or self.parallel_workers < 1 or self.flip_window < 0:
            raise ValueError("invalid instance count, worker count or window")


def random_instance(cfg: SweepConfig, index: int) -> Tuple[Multigraph, Tuple[int, ...]]:
    """Instance ``index`` of the stream fixed by ``cfg.rng_seed``."""
    rng = np.random.default_rng([cfg.rng_seed & (2**64 - 1), index])
    n = int(rng.integers(2, cfg.max_n + 1))
    edges = [(i, int(rng.integers(i + 1, n + 2))) for i in range(1, n + 1)]
    total = int(rng.integers(n, max(n, cfg.max_edges) + 1))
    while len(edges) < total:
        i = int(rng.integers(1, n + 1))
        edges.append((i, int(rng.integers(i + 1, n + 2))))
    edges.sort()
    a = [int(v) for v in rng.integers(0, cfg.max_netflow_entry + 1, size=n)]
    if not any(a):
        a[int(rng.integers(0, n))] = int(rng.integers(1, cfg.max_netflow_entry + 1))
    return Multigraph(n + 1, tuple(edges)), tuple(a) + (-sum(a),)


@dataclass
class CheckResult:
    name: str
    ok: bool
    detail: dict = field(default_factory=dict)


@dataclass
class InstanceRecord:
    index: int
    n_plus_1: int
    edges: List[List[int]]
    netflow: List[int]
    checks: List[CheckResult]
    reproduce: str
    elapsed: float = 0.0

    @property
    def ok(self) -> bool:
        return all(c.ok for c in self.checks)


@dataclass
class VerificationReport:
    config: SweepConfig
    records: List[InstanceRecord]
    elapsed: float = 0.0

    @property
    def ok(self) -> bool:
        return all(r.ok for r in self.records)

    def summary(self) -> dict:
        failed = [(r.index, c.name) for r in self.records for c in r.checks if not c.ok]
        return {
            "instances": len(self.records),
            "checks": sum(len(r.checks) for r in self.records),
            "failed_checks": len(failed),
            "failed_instances": sorted({i for i, _ in failed}),
        }


def _plain(obj):
    """Tuples to lists, Fractions to strings: the JSON-stable form."""
    if isinstance(obj, dict):
        return {str(k): _plain(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_plain(v) for v in obj]
    if isinstance(obj, (bool, int, float, str)) or obj is None:
        return obj
    return str(obj)


def _poly_diff(f: Polynomial, g: Polynomial) -> list:
    keys = sorted(set(f.terms) | set(g.terms))
    return [[list(k), str(f.coefficient(k)), str(g.coefficient(k))] for k in keys if f.coefficient(k) != g.coefficient(k)]


def reproduce_command(cfg: SweepConfig, index: int) -> str:
    return (
        f"flowlorentz --seed {cfg.rng_seed} verify-theorem --max-n {cfg.max_n} "
        f"--max-edges {cfg.max_edges} --max-entry {cfg.max_netflow_entry} "
        f"--count {cfg.instance_count} --flip-window {cfg.flip_window} --instance {index}"
    )


def window_vectors(length: int, w: int):
    """Integer vectors with entries in ``[-w, w]`` summing to zero."""
    for head in itertools.product(range(-w, w + 1), repeat=length - 1):
        last = -sum(head)
        if -w <= last <= w:
            yield head + (last,)


def graph_flip_check(g: Multigraph, w: int) -> Tuple[bool, Optional[list]]:
    h = g.restrict()
    r = flip_restriction(g)
    for c in window_vectors(h.n_plus_1, w):
        if kostant(h, c) != kostant(r, tuple(-x for x in reversed(c))):
            return False, list(c)
    return True, None


def kostant_log_concavity_check(g: Multigraph, w: int) -> Tuple[bool, Optional[list]]:
    size = g.n_plus_1
    for v in window_vectors(size, w):
        k = kostant(g, v)
        for i in range(size):
            for j in range(size):
                if i == j:
                    continue
                up, down = list(v), list(v)
                up[i] += 1
                up[j] -= 1
                down[i] -= 1
                down[j] += 1
                if k * k < kostant(g, up) * kostant(g, down):
                    return False, [list(v), i + 1, j + 1]
    return True, None


def check_instance(g: Multigraph, a, corrupt: bool = False, flip_window: int = 2) -> List[CheckResult]:
    """Every per-instance verification; failures carry a certificate."""
    checks: List[CheckResult] = []

    def add(name, ok, **detail):
        checks.append(CheckResult(name, bool(ok), {} if ok else _plain(detail)))

    sink = sink_structure(g)
    flows = enumerate_flows(g, a)
    phi_f = sigma_phi(g, a, "formula")
    phi_b = sigma_phi(g, a, "bruteforce")
    psi_f = sigma_psi(g, a, "formula")
    psi_b = sigma_psi(g, a, "bruteforce")
    if corrupt and phi_b.terms:
        alpha = phi_b.sorted_terms()[0][0]
        phi_b = phi_b + Polynomial(phi_b.variables, {alpha: 1})
    add("sigma_phi_modes_agree", phi_f == phi_b, diff=_poly_diff(phi_f, phi_b))
    add("sigma_psi_modes_agree", psi_f == psi_b, diff=_poly_diff(psi_f, psi_b))

    P = P_points(g, a)
    Q = Q_points(g, a)
    add("phi_support_is_P", set(phi_b.terms) == set(P.points),
        extra=sorted(set(phi_b.terms) ^ set(P.points)))
    add("psi_support_is_Q", set(psi_b.terms) == set(Q.points),
        extra=sorted(set(psi_b.terms) ^ set(Q.points)))
    for name, pts in (("phi_support_m_convex", P.points), ("psi_support_m_convex", Q.points)):
        ok, wit = is_m_convex(pts)
        add(name, ok, witness=None if wit is None else [wit.alpha, wit.beta, wit.i])

    for name, f in (("phi_lorentzian", phi_b), ("psi_lorentzian", psi_b)):
        verdict = is_lorentzian_normalized(f)
        add(name, verdict.ok, certificate=verdict.certificate())
    for name, f in (("phi_log_concave", phi_b), ("psi_log_concave", psi_b)):
        ok, wit = log_concavity_check(f)
        add(name, ok, witness=None if wit is None else [wit.alpha, wit.i, wit.j, wit.lhs, wit.rhs])

    # fibers of phi, brute force against Kostant counts
    brute: Dict[tuple, int] = {}
    for x in flows:
        p = phi(x, sink)
        brute[p] = brute.get(p, 0) + 1
    bad = []
    for p in P.points:
        fib = fiber_phi(g, a, p)
        if fib.count != brute.get(p, 0):
            bad.append([p, fib.count, brute.get(p, 0)])
    add("phi_fiber_counts", not bad, mismatches=bad)
    add("fiber_total_is_kostant", sum(brute.values()) == kostant(g, a) == len(flows))

    report = gex_transport(g, a)
    add("gex_transport", report.ok, mismatches=report.mismatches)

    total = sum(a[:-1])
    if total >= 2:
        gminus = simplify_at_sink(g)
        sink_m = sink_structure(gminus)
        mult = [len(sink.I[t]) for t in sink.T]
        tails = [e[0] for e in sink.S]
        sub_rows = [tails.index(t) for t in sink.T]
        bad_slice, bad_reduction = [], []
        for d, H in ((d, hessian_slice(phi_f, d)) for d in _simplex_points(total - 2, len(sink.S))):
            K = build_K_matrix(g, a, d)
            if K != H:
                bad_slice.append([d, H, K])
            efd = escaping_flow_of_phi(d, sink)
            kminus = build_K_matrix(gminus, a, tuple(efd[t - 1] for t in sink_m.T))
            if expand_matrix(kminus, mult) != K or not interlacing_check(K, sub_rows):
                bad_reduction.append([d, K, kminus])
        add("hessian_slices_match_K", not bad_slice, mismatches=bad_slice[:3])
        add("K_from_K_minus", not bad_reduction, mismatches=bad_reduction[:3])

        bad_pipe, bad_sign = [], []
        for q in _simplex_points(total - 2, len(sink.T)):
            efd = [0] * g.n
            for t, v in zip(sink.T, q):
                efd[t - 1] = v
            H = hessian_via_volume(gminus, a, efd)
            K = conjugate_antidiagonal(build_K_matrix(gminus, a, q))
            if H != K:
                bad_pipe.append([efd, H, K])
            if inertia(H).n_pos > 1:
                bad_sign.append([efd, H])
        add("volume_pipeline", not bad_pipe, mismatches=bad_pipe[:3])
        add("pipeline_hessian_one_positive", not bad_sign, witnesses=bad_sign[:3])

    ok, wit = graph_flip_check(g, flip_window)
    add("graph_flip", ok, netflow=wit)

    pair = flow_pair(g, a)
    bad_i = [i for i in range(1, pair.proj_dim + 1) if not derivative_identity_check(pair, i)]
    add("derivative_identity", not bad_i, indices=bad_i)
    return checks


def _simplex_points(total: int, parts: int):
    if parts == 0:
        return []
    return list(lattice_points(SimplexSum(tuple(range(parts)), ((total, tuple(range(parts))),))).points)


def run_instance(cfg: SweepConfig, index: int) -> InstanceRecord:
    start = time.perf_counter()
    g, a = random_instance(cfg, index)
    checks = check_instance(g, a, corrupt=cfg.corrupt_instance == index, flip_window=cfg.flip_window)
    return InstanceRecord(
        index,
        g.n_plus_1,
        [list(e) for e in g.edges],
        list(a),
        checks,
        reproduce_command(cfg, index),
        time.perf_counter() - start,
    )


def _run_one(args):
    return run_instance(*args)


def cmd_verify_theorem(cfg: SweepConfig, indices=None) -> VerificationReport:
    """Run the sweep; ``indices`` restricts it to selected instances."""
    start = time.perf_counter()
    todo = list(range(cfg.instance_count)) if indices is None else list(indices)
    jobs = [(cfg, i) for i in todo]
    if cfg.parallel_workers > 1 and len(jobs) > 1:
        from concurrent.futures import ProcessPoolExecutor

        with ProcessPoolExecutor(cfg.parallel_workers) as pool:
            records = list(pool.map(_run_one, jobs))
    else:
        records = [_run_one(j) for j in jobs]
    return VerificationReport(cfg, records, time.perf_counter() - start)


def report_to_dict(report: VerificationReport, timing: bool = True) -> dict:
    records = []
    for r in report.records:
        rec = asdict(r)
        if not timing:
            rec.pop("elapsed")
        records.append(rec)
    out = {"config": asdict(report.config), "records": records, "summary": report.summary()}
    if timing:
        out["elapsed"] = report.elapsed
    return out


def cmd_report_format(report: VerificationReport, fmt: str = "text", timing: bool = True) -> str:
    if fmt == "json":
        return json.dumps(report_to_dict(report, timing), sort_keys=True, indent=2) + "\n"
    if fmt != "text":
        raise ValueError(f"unknown format {fmt!r}")
    s = report.summary()
    lines = [
        f"instances: {s['instances']}  checks: {s['checks']}  failed: {s['failed_checks']}  "
        f"verdict: {'PASS' if report.ok else 'FAIL'}"
    ]
    for r in report.records:
        for c in r.checks:
            if not c.ok:
                lines.append(
                    f"FAIL instance {r.index} {c.name}: {json.dumps(c.detail, sort_keys=True)}  reproduce: {r.reproduce}"
                )
    if timing:
        lines.append(f"elapsed: {report.elapsed:.2f}s")
    return "\n".join(lines) + "\n"


def report_from_json(text: str) -> VerificationReport:
    data = json.loads(text)
    records = [
        InstanceRecord(
            r["index"],
            r["n_plus_1"],
            r["edges"],
            r["netflow"],
            [CheckResult(**c) for c in r["checks"]],
            r["reproduce"],
            r.get("elapsed", 0.0),
        )
        for r in data["records"]
    ]
    return VerificationReport(SweepConfig(**data["config"]), records, data.get("elapsed", 0.0))
