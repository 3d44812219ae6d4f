"""Acceptance suite: one test per criterion, each registering a PASS/FAIL line."""

import time
from collections import Counter

import numpy as np
import pytest

from conftest import K_D, K_MINUS, K_TILDE, record_criterion
from flowlorentz import verify
from flowlorentz.admissible import derivative_identity_check, flow_pair, random_lattice_polytope
from flowlorentz.kostant import compositions, enumerate_flows, kostant
from flowlorentz.lorentzian import (
    build_K_matrix,
    conjugate_antidiagonal,
    expand_matrix,
    inertia,
    is_lorentzian_normalized,
    rank,
)
from flowlorentz.multigraph import Multigraph, simplify_at_sink, sink_structure
from flowlorentz.permutahedra import is_m_convex
from flowlorentz.polyalg import Polynomial
from flowlorentz.projections import (
    P_points,
    escaping_flow_of_phi,
    gex_transport,
    phi,
    sigma_phi,
    sigma_psi,
)
from flowlorentz.volume import (
    ehrhart_volume_oracle,
    hessian_via_volume,
    volume_lorentzian_check,
    volume_polynomial,
)

SWEEP = verify.SweepConfig(max_n=4, max_edges=8, max_netflow_entry=3, instance_count=100, rng_seed=42)


@pytest.fixture(scope="module")
def sweep_instances():
    return [verify.random_instance(SWEEP, i) for i in range(SWEEP.instance_count)]


def small_graphs(count, seed, max_n=4, max_excess=4):
    """Unique-sink graphs with ``|E| - n <= max_excess``."""
    rng = np.random.default_rng(seed)
    out = []
    while len(out) < count:
        n = int(rng.integers(2, max_n + 1))
        edges = [(i, int(rng.integers(i + 1, n + 2))) for i in range(1, n + 1)]
        for _ in range(int(rng.integers(0, max_excess + 1))):
            i = int(rng.integers(1, n + 1))
            edges.append((i, int(rng.integers(i + 1, n + 2))))
        out.append(Multigraph(n + 1, tuple(sorted(edges))))
    return out


def test_criterion_01_paper_matrix_inertia():
    t0 = time.perf_counter()
    ine = inertia(K_MINUS).as_tuple()
    ms = (time.perf_counter() - t0) * 1e3
    ok = ine == (1, 1, 1) and ms < 1.0
    record_criterion(1, "inertia of the 3x3 K-minus is (1,1,1)", ok, f"inertia={ine}, {ms:.3f} ms")
    assert ok


def test_criterion_02_expansion_fidelity():
    big = expand_matrix(K_MINUS, (1, 2, 2))
    ine = inertia(big).as_tuple()
    ok = big == K_D and rank(big) == rank(K_MINUS) == 2 and ine == (1, 1, 3)
    record_criterion(2, "expand_matrix reproduces the 5x5 K_d; ranks 2; inertia (1,1,3)", ok, f"inertia={ine}")
    assert ok


def test_criterion_03_conjugation_fidelity():
    ok = conjugate_antidiagonal(K_MINUS) == K_TILDE
    record_criterion(3, "conjugate_antidiagonal of K-minus is K-tilde", ok)
    assert ok


def test_criterion_04_main_theorem_sweep(sweep_instances):
    t0 = time.perf_counter()
    bad = []
    for idx, (g, a) in enumerate(sweep_instances):
        for name, f in (("phi", sigma_phi(g, a)), ("psi", sigma_psi(g, a))):
            v = is_lorentzian_normalized(f)
            if not v.ok:
                bad.append((idx, name, v.certificate()))
    elapsed = time.perf_counter() - t0
    ok = not bad and elapsed < 60
    record_criterion(4, "sigma-phi and sigma-psi Lorentzian on 100 seed-42 instances", ok, f"{len(bad)} failures, {elapsed:.1f} s")
    assert ok, bad[:3]


def test_criterion_05_oracle_equivalence(sweep_instances):
    bad = []
    for idx, (g, a) in enumerate(sweep_instances):
        if sigma_phi(g, a, "formula") != sigma_phi(g, a, "bruteforce"):
            bad.append((idx, "phi"))
        if sigma_psi(g, a, "formula") != sigma_psi(g, a, "bruteforce"):
            bad.append((idx, "psi"))
    ok = not bad
    record_criterion(5, "formula and bruteforce modes agree on the sweep", ok, f"{len(bad)} mismatches")
    assert ok, bad


def test_criterion_06_fiber_counting(sweep_instances):
    bad = []
    checked = 0
    for idx, (g, a) in enumerate(sweep_instances):
        s = sink_structure(g)
        fibers = Counter(phi(x, s) for x in enumerate_flows(g, a))
        for p in P_points(g, a).points:
            ef = escaping_flow_of_phi(p, s)
            k = kostant(g, tuple(a[i] - ef[i] for i in range(g.n)) + (0,))
            checked += 1
            if fibers[p] != k:
                bad.append((idx, p, fibers[p], k))
    ok = not bad
    record_criterion(6, "phi fiber sizes equal Kostant values", ok, f"{checked} fibers, {len(bad)} mismatches")
    assert ok, bad[:3]


def test_criterion_07_gex_transport(sweep_instances):
    bad = [idx for idx, (g, a) in enumerate(sweep_instances) if not gex_transport(g, a).ok]
    ok = not bad
    record_criterion(7, "G^ex transport on every sweep instance", ok, f"{len(bad)} failures")
    assert ok, bad


def test_criterion_08_proof_pipeline(sweep_instances):
    bad = []
    checked = 0
    for idx, (g, a) in enumerate(sweep_instances):
        total = sum(a[:-1])
        if total < 2:
            continue
        gm = simplify_at_sink(g)
        T = sink_structure(gm).T
        for part in compositions(total - 2, len(T)):
            efd = [0] * gm.n
            for t, v in zip(T, part):
                efd[t - 1] = v
            checked += 1
            if hessian_via_volume(gm, a, efd) != conjugate_antidiagonal(build_K_matrix(gm, a, part)):
                bad.append((idx, efd))
    ok = not bad and checked > 0
    record_criterion(8, "volume-pipeline Hessian equals reversed K matrix", ok, f"{checked} (instance, efd) pairs, {len(bad)} mismatches")
    assert ok, bad[:3]


@pytest.fixture(scope="module")
def window_graphs():
    return [verify.random_instance(SWEEP, i)[0] for i in range(20)]


def test_criterion_09_kostant_log_concavity(window_graphs):
    t0 = time.perf_counter()
    bad = []
    for g in window_graphs:
        ok, wit = verify.kostant_log_concavity_check(g, 3)
        if not ok:
            bad.append((g.edges, wit))
    elapsed = time.perf_counter() - t0
    ok = not bad and elapsed < 60
    record_criterion(9, "Kostant log-concavity over the [-3,3] window, 20 graphs", ok, f"{len(bad)} failures, {elapsed:.1f} s")
    assert ok, bad[:3]


def test_criterion_10_graph_flip(window_graphs):
    bad = []
    for g in window_graphs:
        ok, wit = verify.graph_flip_check(g, 3)
        if not ok:
            bad.append((g.edges, wit))
    ok = not bad
    record_criterion(10, "graph-flip identity over the [-3,3] window, 20 graphs", ok, f"{len(bad)} failures")
    assert ok, bad[:3]


@pytest.fixture(scope="module")
def volume_graphs():
    return small_graphs(20, seed=42)


def test_criterion_11_volume_oracle(volume_graphs):
    rng = np.random.default_rng(4242)
    bad = []
    for g in volume_graphs:
        assert len(g.edges) - g.n <= 4
        vol = volume_polynomial(g)
        for _ in range(25):
            x = tuple(int(v) for v in rng.integers(1, 5, size=g.n))
            if vol(*x) != ehrhart_volume_oracle(g, x):
                bad.append((g.edges, x))
    ok = not bad
    record_criterion(11, "volume polynomial equals Ehrhart oracle (20 graphs x 25 points)", ok, f"{len(bad)} mismatches")
    assert ok, bad[:3]


def test_criterion_12_volume_lorentzian(volume_graphs):
    bad = [g.edges for g in volume_graphs if not volume_lorentzian_check(g).ok]
    ok = not bad
    record_criterion(12, "volume polynomials are Lorentzian on the same 20 graphs", ok, f"{len(bad)} failures")
    assert ok, bad


def test_criterion_13_derivative_identity(sweep_instances):
    rng = np.random.default_rng(42)
    bad = []
    for k in range(50):
        m = int(rng.integers(2, 5))
        n = int(rng.integers(1, m + 1))
        p = random_lattice_polytope(rng, m, n, box=3)
        bad += [("polytope", k, i) for i in range(1, n + 1) if not derivative_identity_check(p, i)]
    for idx, (g, a) in enumerate(sweep_instances):
        p = flow_pair(g, a)
        bad += [("flow", idx, i) for i in range(1, p.proj_dim + 1) if not derivative_identity_check(p, i)]
    ok = not bad
    record_criterion(13, "derivative identity on 50 lattice polytopes and all sweep flow polytopes", ok, f"{len(bad)} failures")
    assert ok, bad[:3]


def test_criterion_14_negative_controls():
    mc, witness = is_m_convex([(2, 0), (0, 2)])
    lor = is_lorentzian_normalized(Polynomial(["x_1", "x_2"], {(2, 0): 1, (0, 2): 1}))
    rep = verify.cmd_verify_theorem(verify.SweepConfig(instance_count=3, corrupt_instance=1))
    failed = [c for c in rep.records[1].checks if not c.ok]
    ok = (
        not mc
        and witness is not None
        and not lor.ok
        and lor.certificate().get("alpha") is not None
        and not rep.ok
        and failed
        and failed[0].detail
        and rep.records[1].reproduce
    )
    record_criterion(14, "negative controls are rejected with certificates", bool(ok))
    assert ok
