"""CNOT-reduced Max-Cut QAOA ansatz construction, simulation and cost modelling."""

from __future__ import annotations

from .ansatz import (
    DFS,
    EDGE_COLORING,
    TRADITIONAL,
    VARIANTS,
    AnsatzParams,
    AnsatzPlan,
    build,
    build_dfs,
    build_edge_coloring,
    build_traditional,
    circuit_from_schedule,
)
from .circuit import Circuit, Gate, cnot_count, depth_profile, emit_qasm, parse_qasm
from .error_model import DeviceParams, lam, p_success, p_success_opt, report
from .graph import Graph, complete_graph, cycle_graph, erdos_renyi, parse_graph
from .optimizer import (
    ScheduledEdge,
    dfs_plan,
    max_optimizable_bruteforce,
    misra_gries_color,
    verify_schedule,
)
from .simulator import NoiseSpec, Statevector, fidelity, run, run_noisy_trials

__version__ = "0.1.0"

__all__ = [
    "DFS", "EDGE_COLORING", "TRADITIONAL", "VARIANTS",
    "AnsatzParams", "AnsatzPlan", "Circuit", "DeviceParams", "Gate", "Graph",
    "NoiseSpec", "ScheduledEdge", "Statevector",
    "build", "build_dfs", "build_edge_coloring", "build_traditional",
    "circuit_from_schedule", "cnot_count", "complete_graph", "cycle_graph",
    "depth_profile", "dfs_plan", "emit_qasm", "erdos_renyi", "fidelity", "lam",
    "max_optimizable_bruteforce", "misra_gries_color", "p_success", "p_success_opt",
    "parse_graph", "parse_qasm", "report", "run", "run_noisy_trials", "verify_schedule",
]
