"""Command line entry point.

Exit codes: 0 all checks pass, 1 a verification failed, 2 usage or input error.
"""

from __future__ import annotations

import argparse
import json
import sys
from typing import List, Sequence, Tuple

from . import verify
from .admissible import derivative_identity_check, parse_pair, sigma_projected
from .kostant import enumerate_flows, kostant
from .lorentzian import conjugate_antidiagonal, build_K_matrix, inertia, is_lorentzian_normalized, log_concavity_check
from .multigraph import read_graph, sink_structure
from .polyalg import Polynomial
from .projections import P_points, Q_points, sigma_phi, sigma_psi
from .volume import hessian_via_volume, volume_polynomial


class InputError(Exception):
    pass


def parse_vector(tokens: Sequence[str]) -> Tuple[int, ...]:
    out: List[int] = []
    for tok in tokens:
        for part in tok.replace(",", " ").split():
            try:
                out.append(int(part))
            except ValueError:
                raise InputError(f"not an integer: {part!r}") from None
    return tuple(out)


def read_matrix(path) -> List[List[int]]:
    with open(path) as fh:
        rows = [[int(x) for x in line.split()] for line in fh if line.strip() and not line.lstrip().startswith("#")]
    return rows


def _sigma(g, a, which: str, mode: str) -> Polynomial:
    return (sigma_phi if which == "phi" else sigma_psi)(g, a, mode)


def cmd_kostant(args):
    g = read_graph(args.graph)
    a = parse_vector(args.netflow)
    if args.enumerate:
        flows = enumerate_flows(g, a)
        text = "".join(" ".join(map(str, f)) + "\n" for f in flows)
        return 0, text, {"count": len(flows), "flows": [list(f) for f in flows]}
    k = kostant(g, a)
    return 0, f"{k}\n", {"count": k}


def cmd_sigma(args):
    g = read_graph(args.graph)
    a = parse_vector(args.netflow)
    if args.mode == "both":
        f = _sigma(g, a, args.map, "formula")
        b = _sigma(g, a, args.map, "bruteforce")
        if f != b:
            return 1, "formula and bruteforce modes disagree\n" + f.to_text() + b.to_text(), {
                "agree": False, "formula": f.to_text(), "bruteforce": b.to_text()}
        return 0, f.to_text(), {"agree": True, "polynomial": f.to_text()}
    f = _sigma(g, a, args.map, args.mode)
    return 0, f.to_text(), {"polynomial": f.to_text()}


def cmd_check_lorentzian(args):
    g = read_graph(args.graph)
    a = parse_vector(args.netflow)
    verdict = is_lorentzian_normalized(_sigma(g, a, args.map, "formula"))
    cert = verdict.certificate()
    text = ("LORENTZIAN" if verdict.ok else "NOT LORENTZIAN") + f": {verdict.reason}\n"
    if not verdict.ok:
        text += json.dumps(cert, sort_keys=True) + "\n"
    return (0 if verdict.ok else 1), text, cert


def cmd_volume(args):
    g = read_graph(args.graph)
    if args.verify_pipeline:
        a = parse_vector([args.verify_pipeline[0]])
        efd = parse_vector([args.verify_pipeline[1]])
        H = hessian_via_volume(g, a, efd)
        sink = sink_structure(g)
        K = conjugate_antidiagonal(build_K_matrix(g, a, tuple(efd[t - 1] for t in sink.T)))
        ok = H == K
        text = "hessian:\n" + _fmt_matrix(H) + "reversed K:\n" + _fmt_matrix(K) + ("MATCH\n" if ok else "MISMATCH\n")
        return (0 if ok else 1), text, {"match": ok, "hessian": [list(r) for r in H], "reversed_K": [list(r) for r in K]}
    vol = volume_polynomial(g)
    return 0, vol.poly.to_text(), {"polynomial": vol.poly.to_text(), "out": list(vol.out)}


def _fmt_matrix(m) -> str:
    return "".join(" ".join(map(str, r)) + "\n" for r in m)


def cmd_inertia(args):
    ine = inertia(read_matrix(args.matrix))
    return 0, f"positive {ine.n_pos} negative {ine.n_neg} zero {ine.n_zero}\n", {
        "n_pos": ine.n_pos, "n_neg": ine.n_neg, "n_zero": ine.n_zero}


def cmd_log_concavity(args):
    if args.poly:
        with open(args.poly) as fh:
            f = Polynomial.from_text(fh.read())
    else:
        if not args.graph:
            raise InputError("give --poly FILE or a graph file and netflow")
        f = _sigma(read_graph(args.graph), parse_vector(args.netflow), args.map, "formula")
    ok, wit = log_concavity_check(f)
    if ok:
        return 0, "LOG-CONCAVE\n", {"ok": True}
    detail = {"ok": False, "alpha": list(wit.alpha), "i": wit.i, "j": wit.j, "lhs": str(wit.lhs), "rhs": str(wit.rhs)}
    return 1, "NOT LOG-CONCAVE " + json.dumps(detail, sort_keys=True) + "\n", detail


def cmd_lattice_points(args):
    g = read_graph(args.graph)
    a = parse_vector(args.netflow)
    pts = (P_points if args.set == "P" else Q_points)(g, a).points
    return 0, "".join(" ".join(map(str, p)) + "\n" for p in pts), {"points": [list(p) for p in pts]}


def cmd_admissible(args):
    with open(args.pair) as fh:
        pair = parse_pair(fh.read())
    f = sigma_projected(pair)
    bad = [i for i in range(1, pair.proj_dim + 1) if not derivative_identity_check(pair, i)]
    text = f.to_text() + ("derivative identity holds\n" if not bad else f"derivative identity fails for {bad}\n")
    return (0 if not bad else 1), text, {"polynomial": f.to_text(), "failed_indices": bad}


def cmd_verify_theorem(args):
    cfg = verify.SweepConfig(
        max_n=args.max_n,
        max_edges=args.max_edges,
        max_netflow_entry=args.max_entry,
        instance_count=args.count,
        rng_seed=args.seed,
        parallel_workers=args.workers,
        flip_window=args.flip_window,
        corrupt_instance=args.corrupt,
    )
    report = verify.cmd_verify_theorem(cfg, args.instance or None)
    text = verify.cmd_report_format(report, args.format, timing=not args.no_timing)
    return (0 if report.ok else 1), text, None


GLOBAL_DEFAULTS = {"seed": 42, "workers": 1, "format": "text", "out": None}


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--seed", type=int, default=argparse.SUPPRESS, help="RNG seed for sweeps (default 42)")
    common.add_argument("--workers", type=int, default=argparse.SUPPRESS, help="parallel workers (default 1)")
    common.add_argument("--format", choices=("text", "json"), default=argparse.SUPPRESS)
    common.add_argument("--out", default=argparse.SUPPRESS, help="write output here instead of stdout")

    p = argparse.ArgumentParser(prog="flowlorentz", parents=[common], description=__doc__)
    sub = p.add_subparsers(dest="command", required=True)

    def graph_cmd(name, func, help_):
        sp = sub.add_parser(name, parents=[common], help=help_)
        sp.set_defaults(func=func)
        return sp

    sp = graph_cmd("kostant", cmd_kostant, "Kostant partition function")
    sp.add_argument("graph")
    sp.add_argument("netflow", nargs="+")
    sp.add_argument("--enumerate", action="store_true", help="list the flows instead of counting")

    sp = graph_cmd("sigma", cmd_sigma, "projected integer point transform")
    sp.add_argument("--map", choices=("phi", "psi"), required=True)
    sp.add_argument("--mode", choices=("formula", "bruteforce", "both"), default="formula")
    sp.add_argument("graph")
    sp.add_argument("netflow", nargs="+")

    sp = graph_cmd("check-lorentzian", cmd_check_lorentzian, "Lorentzian check of N(sigma)")
    sp.add_argument("--map", choices=("phi", "psi"), required=True)
    sp.add_argument("graph")
    sp.add_argument("netflow", nargs="+")

    sp = graph_cmd("volume", cmd_volume, "volume polynomial of a flow polytope")
    sp.add_argument("graph")
    sp.add_argument("--verify-pipeline", nargs=2, metavar=("NETFLOW", "EFD"),
                    help="comma-separated vectors; compare the volume Hessian with the reversed K matrix")

    sp = graph_cmd("verify-theorem", cmd_verify_theorem, "randomized verification sweep")
    sp.add_argument("--max-n", type=int, default=4)
    sp.add_argument("--max-edges", type=int, default=8)
    sp.add_argument("--max-entry", type=int, default=3)
    sp.add_argument("--count", type=int, default=100)
    sp.add_argument("--flip-window", type=int, default=2)
    sp.add_argument("--instance", type=int, action="append", help="only run these instance indices")
    sp.add_argument("--corrupt", type=int, default=None, help="test hook: corrupt one coefficient of this instance")
    sp.add_argument("--no-timing", action="store_true", help="omit timing fields")

    sp = graph_cmd("inertia", cmd_inertia, "exact inertia of a symmetric integer matrix")
    sp.add_argument("matrix")

    sp = graph_cmd("log-concavity", cmd_log_concavity, "coefficient log-concavity")
    sp.add_argument("--poly", help="polynomial file")
    sp.add_argument("--map", choices=("phi", "psi"), default="phi")
    sp.add_argument("graph", nargs="?")
    sp.add_argument("netflow", nargs="*")

    sp = graph_cmd("lattice-points", cmd_lattice_points, "lattice points of P(G;a) or Q(G;a)")
    sp.add_argument("--set", choices=("P", "Q"), default="P")
    sp.add_argument("graph")
    sp.add_argument("netflow", nargs="+")

    sp = graph_cmd("admissible", cmd_admissible, "projected transform and derivative identity of a lattice-point file")
    sp.add_argument("pair")
    return p


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    # global flags may appear before or after the subcommand; fill defaults last
    for key, value in GLOBAL_DEFAULTS.items():
        if not hasattr(args, key):
            setattr(args, key, value)
    try:
        code, text, payload = args.func(args)
    except (InputError, ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    if args.format == "json" and payload is not None:
        text = json.dumps(payload, sort_keys=True, indent=2) + "\n"
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return code


if __name__ == "__main__":
    sys.exit(main())
