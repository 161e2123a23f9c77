"""Command-line front end: ``qaoa-cnot compare|verify|noise-sweep|emit``.

Exit codes: 0 success, 1 verification failure, 2 usage or input error.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path
from typing import Sequence

import numpy as np

from . import ansatz as az
from . import reports
from .ansatz import AnsatzParams
from .circuit import CircuitError
from .error_model import DeviceParams, bundled_devices, load_device
from .graph import AttemptsExhausted, GraphError, complete_graph, cycle_graph, erdos_renyi, parse_graph
from .optimizer import Disconnected
from .simulator import grid_search_p1, random_params

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


class UsageError(Exception):
    pass


def _floats(text: str) -> list[float]:
    try:
        return [float(x) for x in text.split(",") if x.strip()]
    except ValueError as exc:
        raise argparse.ArgumentTypeError(f"expected comma-separated floats: {text!r}") from exc


def _ints(text: str) -> list[int]:
    """``"4-10"`` or ``"4,6,8"``."""
    try:
        if "-" in text:
            lo, hi = (int(x) for x in text.split("-", 1))
            return list(range(lo, hi + 1))
        return [int(x) for x in text.split(",") if x.strip()]
    except ValueError as exc:
        raise argparse.ArgumentTypeError(f"expected an int range or list: {text!r}") from exc


def _gen_spec(text: str) -> tuple[int, float, int]:
    parts = text.split(",")
    if len(parts) != 3:
        raise argparse.ArgumentTypeError(f"--gen expects n,p_edge,seed, got {text!r}")
    try:
        return int(parts[0]), float(parts[1]), int(parts[2])
    except ValueError as exc:
        raise argparse.ArgumentTypeError(f"--gen expects n,p_edge,seed, got {text!r}") from exc


def _add_graph_source(p: argparse.ArgumentParser, required: bool) -> None:
    grp = p.add_mutually_exclusive_group(required=required)
    grp.add_argument("--graph", type=Path, metavar="FILE", help="edge-list file")
    grp.add_argument("--gen", type=_gen_spec, metavar="N,P,SEED", help="Erdős–Rényi instance")
    grp.add_argument("--complete", type=int, metavar="N", help="complete graph K_N")
    grp.add_argument("--cycle", type=int, metavar="N", help="cycle graph C_N")


def _add_params(p: argparse.ArgumentParser) -> None:
    p.add_argument("--p", type=int, default=1, help="number of QAOA layers (default 1)")
    grp = p.add_mutually_exclusive_group()
    grp.add_argument("--gamma", type=_floats, metavar="FLOATS")
    grp.add_argument("--param-seed", type=int, metavar="INT", help="random (gamma, beta)")
    grp.add_argument("--grid", type=int, metavar="RES", help="p=1 grid search resolution")
    p.add_argument("--beta", type=_floats, metavar="FLOATS")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="qaoa-cnot", description="CNOT-reduced Max-Cut QAOA ansatz tools."
    )
    sub = parser.add_subparsers(dest="command", required=True)

    cmp_ = sub.add_parser("compare", help="CNOT counts and depths per variant (CSV)")
    _add_graph_source(cmp_, required=False)
    cmp_.add_argument("--p", type=int, default=1)
    cmp_.add_argument("--root", type=int, default=0)
    cmp_.add_argument("--seed", type=int, default=0, help="base seed for generated rows")
    cmp_.add_argument("--out", type=Path, metavar="DIR")

    ver = sub.add_parser("verify", help="statevector equivalence suite")
    _add_graph_source(ver, required=False)
    _add_params(ver)
    ver.add_argument("--n-params", type=int, default=20, help="random parameter sets per graph")
    ver.add_argument("--n-graphs", type=int, default=50, help="size of the default suite")
    ver.add_argument("--seed", type=int, default=0, help="base seed for the default suite")
    ver.add_argument("--root", type=int, default=0)
    ver.add_argument("--corrupt", action="store_true",
                     help="flag a non-tree DFS edge as optimized (must fail)")

    sw = sub.add_parser("noise-sweep", help="mean noisy fidelity per variant (CSV)")
    sw.add_argument("--ns", type=_ints, default=list(range(4, 11)), metavar="RANGE",
                    help="vertex counts, e.g. 4-10 (default)")
    sw.add_argument("--p-edges", type=_floats, default=[0.4, 0.6, 0.8, 1.0], metavar="FLOATS")
    sw.add_argument("--instances", type=int, default=20)
    sw.add_argument("--trials", type=int, default=100)
    sw.add_argument("--p-cx", type=float, default=None,
                    help="depolarizing probability per CNOT (default 0.01 or the device's)")
    sw.add_argument("--device", type=Path, metavar="FILE",
                    help="device JSON; also applies the relaxation factor")
    sw.add_argument("--seed", type=int, default=0)
    sw.add_argument("--root", type=int, default=0)
    _add_params(sw)
    sw.add_argument("--out", type=Path, metavar="DIR")

    em = sub.add_parser("emit", help="write QASM, plan JSON and error report")
    _add_graph_source(em, required=True)
    _add_params(em)
    em.add_argument("--variant", choices=az.VARIANTS, default=az.DFS)
    em.add_argument("--device", type=Path, metavar="FILE")
    em.add_argument("--root", type=int, default=0)
    em.add_argument("--out", type=Path, metavar="DIR", required=True)
    return parser


def resolve_graph(args: argparse.Namespace) -> reports.LabeledGraph | None:
    if getattr(args, "graph", None) is not None:
        return reports.LabeledGraph("file", parse_graph(args.graph.read_text(encoding="utf-8")))
    if getattr(args, "gen", None) is not None:
        n, p_edge, seed = args.gen
        return reports.LabeledGraph("erdos_renyi", erdos_renyi(n, p_edge, seed), p_edge, seed)
    if getattr(args, "complete", None) is not None:
        return reports.LabeledGraph("complete", complete_graph(args.complete), 1.0)
    if getattr(args, "cycle", None) is not None:
        return reports.LabeledGraph("cycle", cycle_graph(args.cycle))
    return None


def resolve_params(args: argparse.Namespace, lg: reports.LabeledGraph | None) -> AnsatzParams:
    p = args.p
    if p < 1:
        raise UsageError("--p must be >= 1")
    if args.gamma is not None or args.beta is not None:
        if args.gamma is None or args.beta is None:
            raise UsageError("--gamma and --beta must be given together")
        if len(args.gamma) != p or len(args.beta) != p:
            raise UsageError(f"--gamma/--beta need exactly {p} value(s) each")
        return AnsatzParams(tuple(args.gamma), tuple(args.beta))
    if args.param_seed is not None:
        return AnsatzParams(*random_params(np.random.default_rng(args.param_seed), p))
    if args.grid is not None:
        if p != 1:
            raise UsageError("--grid supports only --p 1")
        if lg is None:
            raise UsageError("--grid needs a graph source")
        gamma, beta, _ = grid_search_p1(lg.graph, args.grid)
        return AnsatzParams.single(gamma, beta)
    return AnsatzParams((reports.DEFAULT_GAMMA,) * p, (reports.DEFAULT_BETA,) * p)


def _emit_csv(rows: Sequence[object], command: str, out: Path | None, name: str) -> None:
    path = None
    if out is not None:
        if not out.is_dir():
            raise FileNotFoundError(f"output directory does not exist: {out}")
        path = out / name
    sys.stdout.write(reports.write_csv(rows, command, path))


def cmd_compare(args: argparse.Namespace) -> int:
    lg = resolve_graph(args)
    graphs = [lg] if lg is not None else reports.compare_graphs(args.seed)
    rows = [reports.compare_row(g, args.p, args.root) for g in graphs]
    _emit_csv(rows, "compare", args.out, "compare.csv")
    bad = [r for r in rows if not r.formula_ok]
    if args.p == 1:
        bad += [
            r for r in rows
            if r.family == "complete" and r.n in reports.COMPLETE_GRAPH_COUNTS
            and (r.traditional, r.edge_coloring, r.dfs) != reports.COMPLETE_GRAPH_COUNTS[r.n]
        ]
    for r in bad:
        print(f"count check failed: {r.family} n={r.n} seed={r.seed}", file=sys.stderr)
    return EXIT_FAIL if bad else EXIT_OK


def cmd_verify(args: argparse.Namespace) -> int:
    lg = resolve_graph(args)
    graphs = [lg] if lg is not None else reports.default_verify_graphs(args.n_graphs, args.seed)
    explicit = None
    if args.gamma is not None or args.beta is not None or args.grid is not None:
        explicit = [resolve_params(args, lg)]
    param_seed = args.param_seed if args.param_seed is not None else 0
    res = reports.verify_suite(
        graphs, n_params=args.n_params, param_seed=param_seed, p=args.p,
        root=args.root, corrupt=args.corrupt, params=explicit,
    )
    for f in res.failures:
        print(
            f"FAIL {f.family} n={f.n} seed={f.seed} variant={f.variant} "
            f"params#{f.param_index} fidelity={f.fidelity:.12f}",
        )
    status = "PASS" if res.passed else "FAIL"
    print(f"{status}: {res.checks} checks, {len(res.failures)} failures, "
          f"min fidelity {res.min_fidelity:.15f}")
    return EXIT_OK if res.passed else EXIT_FAIL


def cmd_noise_sweep(args: argparse.Namespace) -> int:
    device: DeviceParams | None = load_device(args.device) if args.device else None
    p_cx = args.p_cx
    if p_cx is None:
        p_cx = device.p_cx if device is not None else 0.01
    params = resolve_params(args, None)
    res = reports.noise_sweep(
        args.ns, args.p_edges, instances=args.instances, trials=args.trials, p_cx=p_cx,
        params=params, base_seed=args.seed, device=device, root=args.root,
    )
    _emit_csv(res.cells, "noise-sweep", args.out, "noise_sweep.csv")
    if args.out is not None:
        reports.write_csv(res.instances, "noise-sweep-instances",
                          args.out / "noise_sweep_instances.csv")
    print(
        f"cell ordering rate {res.cell_ordering_rate():.3f}, "
        f"per-instance monotone rate {res.instance_monotone_rate():.3f}",
        file=sys.stderr,
    )
    return EXIT_OK


def cmd_emit(args: argparse.Namespace) -> int:
    lg = resolve_graph(args)
    assert lg is not None
    params = resolve_params(args, lg)
    device = load_device(args.device) if args.device else bundled_devices()[0]
    paths = reports.emit_files(lg.graph, args.variant, params, args.out, device, args.root)
    for p in paths.values():
        print(p)
    return EXIT_OK


COMMANDS = {
    "compare": cmd_compare,
    "verify": cmd_verify,
    "noise-sweep": cmd_noise_sweep,
    "emit": cmd_emit,
}


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        return COMMANDS[args.command](args)
    except SystemExit as exc:  # argparse usage errors and --help
        return exc.code if isinstance(exc.code, int) else EXIT_USAGE
    except UsageError as exc:
        parser.print_usage(sys.stderr)
        print(f"qaoa-cnot: error: {exc}", file=sys.stderr)
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
    except (GraphError, CircuitError, Disconnected, AttemptsExhausted, ValueError, KeyError) as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
    return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
