"""Max-Cut QAOA ansatz circuits: traditional, edge-coloring and DFS variants.

Each cost-layer edge ``(c, t)`` is emitted either as the full gadget
``CNOT(c,t) RZ(2*gamma*w, t) CNOT(c,t)`` or, when optimized, as
``RZ(2*gamma*w, t) CNOT(c,t)``.  Only the first cost layer is ever
optimized; later layers follow the same edge order with full gadgets.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence

from .circuit import Circuit, cx, h, rx, rz
from .graph import Edge, Graph
from .optimizer import (
    ScheduledEdge,
    color_classes,
    dfs_plan,
    misra_gries_color,
    verify_schedule,
)

TRADITIONAL = "traditional"
EDGE_COLORING = "edge_coloring"
DFS = "dfs"
VARIANTS = (TRADITIONAL, EDGE_COLORING, DFS)


@dataclass(frozen=True)
class AnsatzParams:
    gamma: tuple[float, ...]
    beta: tuple[float, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "gamma", tuple(float(x) for x in self.gamma))
        object.__setattr__(self, "beta", tuple(float(x) for x in self.beta))
        if len(self.gamma) != len(self.beta) or not self.gamma:
            raise ValueError("gamma and beta must be non-empty and of equal length")
        if not all(math.isfinite(x) for x in self.gamma + self.beta):
            raise ValueError("angles must be finite")

    @property
    def p(self) -> int:
        return len(self.gamma)

    @classmethod
    def single(cls, gamma: float, beta: float) -> "AnsatzParams":
        return cls((gamma,), (beta,))


@dataclass(frozen=True)
class AnsatzPlan:
    variant: str
    schedule: tuple[ScheduledEdge, ...]

    @property
    def optimized_count(self) -> int:
        return sum(op.optimized for op in self.schedule)


def _unoptimized(edges: Sequence[Edge]) -> list[ScheduledEdge]:
    return [ScheduledEdge(u, v, False) for u, v in edges]


def plan_traditional(g: Graph, edges: Sequence[Edge] | None = None) -> AnsatzPlan:
    return AnsatzPlan(TRADITIONAL, tuple(_unoptimized(g.edges if edges is None else edges)))


def colored_edge_order(g: Graph) -> list[Edge]:
    """Edges grouped by Misra-Gries color class, largest class first."""
    classes = color_classes(g, misra_gries_color(g)).classes
    return [e for cls in classes for e in cls]


def plan_edge_coloring(g: Graph) -> AnsatzPlan:
    classes = color_classes(g, misra_gries_color(g)).classes
    schedule = [ScheduledEdge(u, v, True) for u, v in (classes[0] if classes else ())]
    for cls in classes[1:]:
        schedule.extend(_unoptimized(cls))
    return AnsatzPlan(EDGE_COLORING, tuple(schedule))


def plan_dfs(g: Graph, root: int = 0) -> AnsatzPlan:
    plan = dfs_plan(g, root)
    schedule = [ScheduledEdge(parent, child, True) for parent, child in plan.tree_edges]
    for group in plan.non_tree_edges:
        schedule.extend(_unoptimized(group))
    return AnsatzPlan(DFS, tuple(schedule))


def make_plan(variant: str, g: Graph, root: int = 0) -> AnsatzPlan:
    if variant == TRADITIONAL:
        return plan_traditional(g)
    if variant == EDGE_COLORING:
        return plan_edge_coloring(g)
    if variant == DFS:
        return plan_dfs(g, root)
    raise ValueError(f"unknown variant {variant!r}; expected one of {VARIANTS}")


def circuit_from_schedule(
    g: Graph, params: AnsatzParams, schedule: Sequence[ScheduledEdge]
) -> Circuit:
    """Emit the ansatz for an explicit first-layer schedule.

    No optimizability check is made here; a schedule that flags an edge
    with a stale target produces a circuit that is *not* equivalent to the
    traditional one (useful for negative tests).
    """
    weight = dict(zip(g.edges, g.weights))
    c = Circuit(g.n)
    for q in range(g.n):
        c.append(h(q))
    for layer, (gamma, beta) in enumerate(zip(params.gamma, params.beta)):
        for op in schedule:
            angle = 2.0 * gamma * weight[op.edge]
            if op.optimized and layer == 0:
                c.append(rz(angle, op.target))
                c.append(cx(op.control, op.target))
            else:
                c.append(cx(op.control, op.target))
                c.append(rz(angle, op.target))
                c.append(cx(op.control, op.target))
        for q in range(g.n):
            c.append(rx(2.0 * beta, q))
    return c


def build_traditional(
    g: Graph, params: AnsatzParams, edges: Sequence[Edge] | None = None
) -> Circuit:
    """Unoptimized ansatz; ``edges`` overrides the input edge order."""
    return circuit_from_schedule(g, params, plan_traditional(g, edges).schedule)


def build_edge_coloring(g: Graph, params: AnsatzParams) -> tuple[Circuit, AnsatzPlan]:
    plan = plan_edge_coloring(g)
    return circuit_from_schedule(g, params, plan.schedule), plan


def build_dfs(g: Graph, params: AnsatzParams, root: int = 0) -> tuple[Circuit, AnsatzPlan]:
    plan = plan_dfs(g, root)
    return circuit_from_schedule(g, params, plan.schedule), plan


def build(
    variant: str, g: Graph, params: AnsatzParams, root: int = 0
) -> tuple[Circuit, AnsatzPlan]:
    plan = make_plan(variant, g, root)
    if not verify_schedule(g, plan.schedule):
        raise AssertionError(f"{variant} plan violates the fresh-target condition")
    return circuit_from_schedule(g, params, plan.schedule), plan


def noise_sites(g: Graph, schedule: Sequence[ScheduledEdge], p: int) -> list[int]:
    """Logical site id of every CNOT emitted by :func:`circuit_from_schedule`.

    Site ``2 * (layer * m + edge_index) + slot`` where slot 0 is a gadget's
    leading CNOT and slot 1 its trailing one; an optimized gadget keeps only
    slot 1.  Ids do not depend on the schedule order, so all variants of one
    graph share them.
    """
    index = {e: i for i, e in enumerate(g.edges)}
    out: list[int] = []
    for layer in range(p):
        for op in schedule:
            base = 2 * (layer * g.m + index[op.edge])
            if op.optimized and layer == 0:
                out.append(base + 1)
            else:
                out.extend((base, base + 1))
    return out


def edge_layer_depth(n: int, schedule: Sequence[ScheduledEdge]) -> int:
    """ASAP depth counting each edge gadget as one indivisible operation."""
    frontier = [0] * n
    depth = 0
    for op in schedule:
        layer = max(frontier[op.control], frontier[op.target]) + 1
        frontier[op.control] = frontier[op.target] = layer
        depth = max(depth, layer)
    return depth


def expected_cnot_count(variant: str, g: Graph, p: int, s_max: int | None = None) -> int:
    """Closed-form CNOT totals: 2mp, 2mp - |S_max|, 2mp - (n - 1)."""
    base = 2 * g.m * p
    if variant == TRADITIONAL:
        return base
    if variant == EDGE_COLORING:
        if s_max is None:
            s_max = len(color_classes(g, misra_gries_color(g)).s_max)
        return base - s_max
    if variant == DFS:
        return base - (g.n - 1)
    raise ValueError(f"unknown variant {variant!r}")
