"""Batch experiments behind the CLI: count tables, equivalence suites, noise sweeps.

Every function here is deterministic in its seed arguments.  Per-instance
seeds are derived with :func:`derive_seed` from a base seed and the cell
coordinates, so output never depends on evaluation order.
"""

from __future__ import annotations

import csv
import io
import math
from dataclasses import asdict, dataclass, fields
from pathlib import Path
from typing import Iterable, Sequence

import numpy as np

from . import ansatz as az
from .ansatz import AnsatzParams, AnsatzPlan
from .circuit import Circuit, cnot_count, depth_profile, emit_qasm
from .error_model import DeviceParams, ErrorReport, report
from .graph import Graph, complete_graph, erdos_renyi, stats
from .optimizer import ScheduledEdge, color_classes, dfs_plan, misra_gries_color
from .simulator import InvalidTrials, NoiseSpec, fidelity, random_params, run, run_noisy_trials

CSV_SCHEMA = "v1"
EQUIVALENCE_TOL = 1e-10
TIE_TOL = 1e-12  # float round-off between exactly equal fidelities
DEFAULT_GAMMA = 0.4
DEFAULT_BETA = 0.8

COMPLETE_GRAPH_COUNTS = {
    10: (90, 85, 81),
    20: (380, 370, 361),
    30: (870, 855, 841),
    40: (1560, 1540, 1521),
    50: (2450, 2425, 2401),
    60: (3540, 3510, 3481),
}


def derive_seed(*keys: int) -> int:
    return int(np.random.SeedSequence([int(k) for k in keys]).generate_state(1, np.uint64)[0])


def p_key(p_edge: float) -> int:
    return int(round(p_edge * 1000))


@dataclass(frozen=True)
class LabeledGraph:
    family: str
    graph: Graph
    p_edge: float = math.nan
    seed: int = -1


def random_instance(n: int, p_edge: float, base_seed: int, index: int) -> LabeledGraph:
    seed = derive_seed(base_seed, n, p_key(p_edge), index)
    family = "complete" if p_edge >= 1.0 else f"erdos_renyi_{p_edge:g}"
    return LabeledGraph(family, erdos_renyi(n, p_edge, seed), p_edge, seed)


def baseline_traditional(g: Graph, params: AnsatzParams) -> tuple[Circuit, AnsatzPlan]:
    """Unoptimized ansatz with gadgets grouped by color class (minimum-depth order)."""
    plan = az.plan_traditional(g, az.colored_edge_order(g))
    return az.circuit_from_schedule(g, params, plan.schedule), plan


def build_variant(
    variant: str, g: Graph, params: AnsatzParams, root: int = 0
) -> tuple[Circuit, AnsatzPlan]:
    if variant == az.TRADITIONAL:
        return baseline_traditional(g, params)
    return az.build(variant, g, params, root)


def write_csv(rows: Sequence[object], command: str, path: Path | None = None) -> str:
    """Dataclass rows to CSV text with a schema comment line; optionally saved."""
    buf = io.StringIO()
    buf.write(f"# qaoa-cnot {command} schema {CSV_SCHEMA}\n")
    if rows:
        names = [f.name for f in fields(rows[0])]
        writer = csv.DictWriter(buf, fieldnames=names, lineterminator="\n")
        writer.writeheader()
        for r in rows:
            writer.writerow({k: _fmt(v) for k, v in asdict(r).items()})
    text = buf.getvalue()
    if path is not None:
        Path(path).write_text(text, encoding="utf-8")
    return text


def _fmt(v: object) -> object:
    if isinstance(v, float):
        return "" if math.isnan(v) else f"{v:.10g}"
    return v


# -- compare -----------------------------------------------------------------

@dataclass(frozen=True)
class CompareRow:
    family: str
    n: int
    m: int
    p_edge: float
    seed: int
    max_degree: int
    s_max: int
    traditional: int
    edge_coloring: int
    dfs: int
    trad_cnot_depth: int
    ec_cnot_depth: int
    dfs_cnot_depth: int
    ec_edge_layers: int
    dfs_edge_layers: int
    formula_ok: bool


def compare_row(lg: LabeledGraph, p: int = 1, root: int = 0) -> CompareRow:
    g = lg.graph
    params = AnsatzParams((DEFAULT_GAMMA,) * p, (DEFAULT_BETA,) * p)
    circuits = {}
    plans = {}
    for v in az.VARIANTS:
        circuits[v], plans[v] = build_variant(v, g, params, root)
    counts = {v: cnot_count(c) for v, c in circuits.items()}
    s_max = plans[az.EDGE_COLORING].optimized_count
    ok = (
        counts[az.TRADITIONAL] == az.expected_cnot_count(az.TRADITIONAL, g, p)
        and counts[az.EDGE_COLORING] == az.expected_cnot_count(az.EDGE_COLORING, g, p, s_max)
        and counts[az.DFS] == az.expected_cnot_count(az.DFS, g, p)
    )
    return CompareRow(
        family=lg.family, n=g.n, m=g.m, p_edge=lg.p_edge, seed=lg.seed,
        max_degree=stats(g).max_degree, s_max=s_max,
        traditional=counts[az.TRADITIONAL],
        edge_coloring=counts[az.EDGE_COLORING],
        dfs=counts[az.DFS],
        trad_cnot_depth=depth_profile(circuits[az.TRADITIONAL]).cnot_depth,
        ec_cnot_depth=depth_profile(circuits[az.EDGE_COLORING]).cnot_depth,
        dfs_cnot_depth=depth_profile(circuits[az.DFS]).cnot_depth,
        ec_edge_layers=az.edge_layer_depth(g.n, plans[az.EDGE_COLORING].schedule),
        dfs_edge_layers=az.edge_layer_depth(g.n, plans[az.DFS].schedule),
        formula_ok=ok,
    )


def compare_graphs(base_seed: int = 0) -> list[LabeledGraph]:
    """Complete graphs and one seeded Erdős–Rényi instance per (p_edge, n) cell."""
    out = [LabeledGraph("complete", complete_graph(n), 1.0) for n in COMPLETE_GRAPH_COUNTS]
    for p_edge in (0.8, 0.6, 0.4):
        out.extend(random_instance(n, p_edge, base_seed, 0) for n in COMPLETE_GRAPH_COUNTS)
    return out


# -- verify --------------------------------------------------------------------

def default_verify_graphs(count: int = 50, base_seed: int = 0) -> list[LabeledGraph]:
    """``count`` connected graphs cycling n over 3..10 and p_edge over 0.4..1.0."""
    probs = (0.4, 0.6, 0.8, 1.0)
    return [
        random_instance(3 + i % 8, probs[(i // 8) % 4], base_seed, i) for i in range(count)
    ]


def corrupt_schedule(g: Graph, root: int = 0) -> tuple[ScheduledEdge, ...] | None:
    """DFS schedule with its first non-tree edge wrongly flagged optimized.

    Returns None for trees, which have no such edge.
    """
    ops = list(az.plan_dfs(g, root).schedule)
    if len(ops) < g.n:
        return None
    ops[g.n - 1] = ops[g.n - 1]._replace(optimized=True)
    return tuple(ops)


@dataclass(frozen=True)
class VerifyFailure:
    family: str
    n: int
    seed: int
    variant: str
    param_index: int
    fidelity: float


@dataclass
class VerifyResult:
    checks: int
    min_fidelity: float
    failures: list[VerifyFailure]

    @property
    def passed(self) -> bool:
        return not self.failures


def verify_suite(
    graphs: Iterable[LabeledGraph],
    n_params: int = 20,
    param_seed: int = 0,
    p: int = 1,
    root: int = 0,
    corrupt: bool = False,
    params: Sequence[AnsatzParams] | None = None,
) -> VerifyResult:
    """Fidelity of each optimized variant against the traditional ansatz."""
    checks = 0
    worst = 1.0
    failures: list[VerifyFailure] = []
    for gi, lg in enumerate(graphs):
        g = lg.graph
        if params is None:
            rng = np.random.default_rng(derive_seed(param_seed, gi))
            plist = [AnsatzParams(*random_params(rng, p)) for _ in range(n_params)]
        else:
            plist = list(params)
        if corrupt:
            bad = corrupt_schedule(g, root)
            if bad is None:
                continue
            schedules = {az.DFS: bad}
        else:
            schedules = {
                az.EDGE_COLORING: az.plan_edge_coloring(g).schedule,
                az.DFS: az.plan_dfs(g, root).schedule,
            }
        for pi, prm in enumerate(plist):
            ref = run(az.build_traditional(g, prm))
            for variant, sched in schedules.items():
                f = fidelity(ref, run(az.circuit_from_schedule(g, prm, sched)))
                checks += 1
                worst = min(worst, f)
                if f < 1.0 - EQUIVALENCE_TOL:
                    failures.append(VerifyFailure(lg.family, g.n, lg.seed, variant, pi, f))
    return VerifyResult(checks, worst, failures)


# -- noise sweep ------------------------------------------------------------

@dataclass(frozen=True)
class SweepCell:
    family: str
    p_edge: float
    n: int
    variant: str
    instances: int
    mean_cnot: float
    mean_fidelity: float


@dataclass(frozen=True)
class SweepInstance:
    family: str
    p_edge: float
    n: int
    instance: int
    graph_seed: int
    m: int
    cnot_traditional: int
    cnot_edge_coloring: int
    cnot_dfs: int
    fid_traditional: float
    fid_edge_coloring: float
    fid_dfs: float

    def monotone(self) -> bool:
        """Fidelity never rises with CNOT count across the three variants."""
        pts = sorted(
            [
                (self.cnot_traditional, self.fid_traditional),
                (self.cnot_edge_coloring, self.fid_edge_coloring),
                (self.cnot_dfs, self.fid_dfs),
            ]
        )
        return all(
            f_next <= f_prev + TIE_TOL
            for (c_prev, f_prev), (c_next, f_next) in zip(pts, pts[1:])
            if c_next > c_prev
        )


@dataclass
class SweepResult:
    cells: list[SweepCell]
    instances: list[SweepInstance]

    def cell_ordering_rate(self) -> float:
        """Share of (p_edge, n) cells with mean fidelity dfs >= ec >= traditional."""
        by_cell: dict[tuple[float, int], dict[str, float]] = {}
        for c in self.cells:
            by_cell.setdefault((c.p_edge, c.n), {})[c.variant] = c.mean_fidelity
        good = sum(
            1 for f in by_cell.values()
            if f[az.DFS] + TIE_TOL >= f[az.EDGE_COLORING] >= f[az.TRADITIONAL] - TIE_TOL
        )
        return good / len(by_cell) if by_cell else 1.0

    def instance_monotone_rate(self) -> float:
        if not self.instances:
            return 1.0
        return sum(i.monotone() for i in self.instances) / len(self.instances)


def noise_sweep(
    ns: Sequence[int],
    p_edges: Sequence[float],
    instances: int = 20,
    trials: int = 100,
    p_cx: float = 0.01,
    params: AnsatzParams | None = None,
    base_seed: int = 0,
    device: DeviceParams | None = None,
    root: int = 0,
) -> SweepResult:
    """Mean noisy fidelity per variant over seeded random instances.

    Each instance uses one noise seed for all three variants and noise sites
    keyed by (layer, edge, CNOT slot), so variants are compared under common
    random numbers.  The reference state is the noiseless traditional ansatz.
    """
    if trials < 1:
        raise InvalidTrials(f"trials must be positive, got {trials}")
    if instances < 1:
        raise ValueError(f"instances must be positive, got {instances}")
    params = params or AnsatzParams.single(DEFAULT_GAMMA, DEFAULT_BETA)
    cells: list[SweepCell] = []
    rows: list[SweepInstance] = []
    for p_edge in p_edges:
        for n in ns:
            acc = {v: [0.0, 0.0] for v in az.VARIANTS}
            family = ""
            for i in range(instances):
                lg = random_instance(n, p_edge, base_seed, i)
                family = lg.family
                g = lg.graph
                noise = NoiseSpec(p_cx, derive_seed(base_seed, n, p_key(p_edge), i, 1))
                built = {v: build_variant(v, g, params, root) for v in az.VARIANTS}
                ideal = run(built[az.TRADITIONAL][0])
                fid, cnt = {}, {}
                for v, (circ, plan) in built.items():
                    sites = az.noise_sites(g, plan.schedule, params.p)
                    fid[v] = run_noisy_trials(circ, noise, trials, ideal, device, sites)
                    cnt[v] = cnot_count(circ)
                    acc[v][0] += cnt[v]
                    acc[v][1] += fid[v]
                rows.append(
                    SweepInstance(
                        family, p_edge, n, i, lg.seed, g.m,
                        cnt[az.TRADITIONAL], cnt[az.EDGE_COLORING], cnt[az.DFS],
                        fid[az.TRADITIONAL], fid[az.EDGE_COLORING], fid[az.DFS],
                    )
                )
            for v in az.VARIANTS:
                cells.append(
                    SweepCell(family, p_edge, n, v, instances,
                              acc[v][0] / instances, acc[v][1] / instances)
                )
    return SweepResult(cells, rows)


# -- emit ---------------------------------------------------------------------

def plan_json(variant: str, g: Graph, plan: AnsatzPlan, root: int = 0) -> str:
    import json

    if variant == az.DFS:
        return dfs_plan(g, root).to_json()
    if variant == az.EDGE_COLORING:
        return misra_gries_color(g).to_json()
    return json.dumps(
        {"schedule": [[op.control, op.target, op.optimized] for op in plan.schedule]},
        indent=2,
    )


def emit_files(
    g: Graph,
    variant: str,
    params: AnsatzParams,
    out_dir: Path,
    device: DeviceParams,
    root: int = 0,
) -> dict[str, Path]:
    out_dir = Path(out_dir)
    if not out_dir.is_dir():
        raise FileNotFoundError(f"output directory does not exist: {out_dir}")
    circ, plan = build_variant(variant, g, params, root)
    base, _ = baseline_traditional(g, params)
    rep: ErrorReport = report(base, circ, device)
    paths = {
        "qasm": out_dir / f"{variant}.qasm",
        "plan": out_dir / f"{variant}_plan.json",
        "report": out_dir / f"{variant}_error_report.json",
    }
    paths["qasm"].write_text(emit_qasm(circ), encoding="utf-8")
    paths["plan"].write_text(plan_json(variant, g, plan, root) + "\n", encoding="utf-8")
    paths["report"].write_text(rep.to_json() + "\n", encoding="utf-8")
    return paths


def s_max_size(g: Graph) -> int:
    return len(color_classes(g, misra_gries_color(g)).s_max)
