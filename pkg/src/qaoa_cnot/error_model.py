"""Analytic success-probability model for trading CNOT count against depth.

A circuit with ``k`` CNOTs spread over ``N`` CNOT layers survives with
probability ``(1 - p_cx)**k * exp(-N t_cx / T1)``.  Removing ``k1`` CNOTs at
the price of ``N1`` extra layers pays off exactly when ``N1 <= lam * k1``
with ``lam = -ln(1 - p_cx) * T1 / t_cx``.  Times are in nanoseconds.
"""

from __future__ import annotations

import json
import math
from dataclasses import asdict, dataclass
from importlib import resources
from pathlib import Path

from .circuit import Circuit, cnot_count, depth_profile

BOUNDARY_TOL = 1e-12


class InvalidReduction(ValueError):
    pass


@dataclass(frozen=True)
class DeviceParams:
    t_cx: float
    T1: float
    p_cx: float
    name: str = ""

    def __post_init__(self) -> None:
        if not self.t_cx > 0:
            raise ValueError(f"t_cx must be positive, got {self.t_cx}")
        if not self.T1 > 0:
            raise ValueError(f"T1 must be positive, got {self.T1}")
        if not 0.0 <= self.p_cx < 1.0:
            raise ValueError(f"p_cx must lie in [0, 1), got {self.p_cx}")

    @classmethod
    def from_dict(cls, d: dict) -> "DeviceParams":
        return cls(
            t_cx=float(d["t_cx_ns"]), T1=float(d["T1_ns"]), p_cx=float(d["p_cx"]),
            name=str(d.get("name", "")),
        )

    def to_dict(self) -> dict:
        return {"name": self.name, "t_cx_ns": self.t_cx, "T1_ns": self.T1, "p_cx": self.p_cx}


def load_device(path: str | Path) -> DeviceParams:
    return DeviceParams.from_dict(json.loads(Path(path).read_text(encoding="utf-8")))


def bundled_devices() -> list[DeviceParams]:
    """Illustrative parameter sets shipped with the package (not calibrations)."""
    text = resources.files("qaoa_cnot").joinpath("devices.json").read_text(encoding="utf-8")
    return [DeviceParams.from_dict(d) for d in json.loads(text)]


def p_success(k: int, N: int, d: DeviceParams) -> float:
    if k < 0 or N < 0:
        raise ValueError("k and N must be non-negative")
    return (1.0 - d.p_cx) ** k * math.exp(-N * d.t_cx / d.T1)


def p_success_opt(k: int, N: int, k1: int, N1: int, d: DeviceParams) -> float:
    if not 0 <= k1 <= k:
        raise InvalidReduction(f"need 0 <= k1 <= k (k={k}, k1={k1})")
    if N + N1 < 0:
        raise InvalidReduction(f"layer count N + N1 = {N + N1} is negative")
    return (1.0 - d.p_cx) ** (k - k1) * math.exp(-(N + N1) * d.t_cx / d.T1)


def lam(d: DeviceParams) -> float:
    """Device figure of merit ``-ln(1 - p_cx) * T1 / t_cx``."""
    return -math.log1p(-d.p_cx) * d.T1 / d.t_cx


def dfs_threshold(n: int) -> float:
    """Smallest ``lam`` for which the DFS pass helps in the worst case."""
    if n < 2:
        raise ValueError("need n >= 2")
    return (n - 2) / (n - 1)


def dfs_beneficial(n: int, d: DeviceParams) -> bool:
    return lam(d) >= dfs_threshold(n)


def worst_case_depth_increase(n: int) -> int:
    """Upper bound on extra edge-operator layers of DFS over edge coloring."""
    return n - 2


def is_beneficial(k1: int, N1: int, lam_value: float) -> bool:
    """``N1 <= lam * k1`` with a small relative tolerance at the boundary."""
    rhs = lam_value * k1
    return N1 <= rhs + BOUNDARY_TOL * max(1.0, abs(rhs))


@dataclass(frozen=True)
class ErrorReport:
    k: int
    N: int
    k1: int
    N1: int
    lam: float
    p_success_base: float
    p_success_opt: float
    beneficial: bool
    device: str = ""

    def to_json(self) -> str:
        return json.dumps(asdict(self), indent=2)


def report_from_counts(k: int, N: int, k_opt: int, N_opt: int, d: DeviceParams) -> ErrorReport:
    k1, N1 = k - k_opt, N_opt - N
    lv = lam(d)
    return ErrorReport(
        k=k, N=N, k1=k1, N1=N1, lam=lv,
        p_success_base=p_success(k, N, d),
        p_success_opt=p_success_opt(k, N, k1, N1, d) if k1 >= 0 else p_success(k_opt, N_opt, d),
        beneficial=is_beneficial(k1, N1, lv),
        device=d.name,
    )


def report(baseline: Circuit, optimized: Circuit, d: DeviceParams) -> ErrorReport:
    """Compare two circuits with ``k`` = CNOT count and ``N`` = CNOT depth."""
    return report_from_counts(
        cnot_count(baseline), depth_profile(baseline).cnot_depth,
        cnot_count(optimized), depth_profile(optimized).cnot_depth,
        d,
    )
