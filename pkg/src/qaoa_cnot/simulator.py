"""Dense statevector simulation for the four-gate IR.

Qubit 0 is the least significant bit of the basis index.  Gates are applied
in place on views of the amplitude array, so results are bit-for-bit
reproducible.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass
from typing import TYPE_CHECKING, Sequence

import numpy as np

from .circuit import CNOT, H, RX, RZ, Circuit, Gate
from .graph import Graph

if TYPE_CHECKING:
    from .error_model import DeviceParams

MAX_QUBITS = 24


class TooManyQubits(ValueError):
    pass


class DimensionMismatch(ValueError):
    pass


class TooLarge(ValueError):
    pass


class InvalidTrials(ValueError):
    pass


@dataclass
class Statevector:
    n_qubits: int
    amplitudes: np.ndarray

    @classmethod
    def zero(cls, n_qubits: int) -> "Statevector":
        if n_qubits > MAX_QUBITS:
            raise TooManyQubits(f"{n_qubits} qubits exceeds the cap of {MAX_QUBITS}")
        amps = np.zeros(1 << n_qubits, dtype=np.complex128)
        amps[0] = 1.0
        return cls(n_qubits, amps)

    @property
    def probabilities(self) -> np.ndarray:
        return np.abs(self.amplitudes) ** 2

    def norm(self) -> float:
        return float(np.sum(self.probabilities))

    def to_json(self) -> str:
        return json.dumps([[float(a.real), float(a.imag)] for a in self.amplitudes])

    @classmethod
    def from_json(cls, text: str) -> "Statevector":
        pairs = json.loads(text)
        amps = np.array([complex(re, im) for re, im in pairs], dtype=np.complex128)
        n = len(amps).bit_length() - 1
        if 1 << n != len(amps):
            raise DimensionMismatch("amplitude count is not a power of two")
        return cls(n, amps)


_SQRT_HALF = 1.0 / math.sqrt(2.0)
_PAULI = {
    1: np.array([[0, 1], [1, 0]], dtype=np.complex128),
    2: np.array([[0, -1j], [1j, 0]], dtype=np.complex128),
    3: np.array([[1, 0], [0, -1]], dtype=np.complex128),
}


def _split(amps: np.ndarray, n: int, q: int) -> tuple[np.ndarray, np.ndarray]:
    view = amps.reshape(1 << (n - q - 1), 2, 1 << q)
    return view[:, 0, :], view[:, 1, :]


def _apply_matrix(amps: np.ndarray, n: int, q: int, m: np.ndarray) -> None:
    a0, a1 = _split(amps, n, q)
    t0 = m[0, 0] * a0 + m[0, 1] * a1
    a1[...] = m[1, 0] * a0 + m[1, 1] * a1
    a0[...] = t0


def _apply_cx(amps: np.ndarray, n: int, control: int, target: int) -> None:
    view = amps.reshape((2,) * n)
    ac, at = n - 1 - control, n - 1 - target
    lo = [slice(None)] * n
    hi = [slice(None)] * n
    lo[ac] = hi[ac] = 1
    lo[at], hi[at] = 0, 1
    lo, hi = tuple(lo), tuple(hi)
    tmp = view[lo].copy()
    view[lo] = view[hi]
    view[hi] = tmp


def apply_gate(amps: np.ndarray, n: int, g: Gate) -> None:
    if g.kind == CNOT:
        _apply_cx(amps, n, *g.qubits)
        return
    q = g.qubits[0]
    if g.kind == RZ:
        a0, a1 = _split(amps, n, q)
        half = 0.5 * g.angle
        a0 *= complex(math.cos(half), -math.sin(half))
        a1 *= complex(math.cos(half), math.sin(half))
    elif g.kind == H:
        a0, a1 = _split(amps, n, q)
        t0 = (a0 + a1) * _SQRT_HALF
        a1[...] = (a0 - a1) * _SQRT_HALF
        a0[...] = t0
    elif g.kind == RX:
        c, s = math.cos(0.5 * g.angle), math.sin(0.5 * g.angle)
        _apply_matrix(amps, n, q, np.array([[c, -1j * s], [-1j * s, c]]))
    else:
        raise ValueError(f"unsupported gate {g.kind}")


def run(c: Circuit) -> Statevector:
    sv = Statevector.zero(c.n_qubits)
    for g in c.gates:
        apply_gate(sv.amplitudes, c.n_qubits, g)
    return sv


def fidelity(a: Statevector, b: Statevector) -> float:
    if a.n_qubits != b.n_qubits:
        raise DimensionMismatch(f"{a.n_qubits} vs {b.n_qubits} qubits")
    return float(abs(np.vdot(a.amplitudes, b.amplitudes)) ** 2)


# -- Max-Cut ------------------------------------------------------------------

def cut_values(g: Graph) -> np.ndarray:
    """Cut weight of every basis state (bit ``j`` of the index is vertex ``j``)."""
    x = np.arange(1 << g.n, dtype=np.int64)
    unweighted = not g.weighted
    out = np.zeros(1 << g.n, dtype=np.int64 if unweighted else np.float64)
    for (j, k), w in zip(g.edges, g.weights):
        cut = ((x >> j) ^ (x >> k)) & 1
        out += cut if unweighted else w * cut
    return out


def maxcut_expectation(g: Graph, v: Statevector) -> float:
    if v.n_qubits != g.n:
        raise DimensionMismatch(f"state has {v.n_qubits} qubits, graph has {g.n} vertices")
    return float(np.dot(v.probabilities, cut_values(g)))


def maxcut_bruteforce(g: Graph) -> int | float:
    if g.n > 24:
        raise TooLarge(f"brute force is limited to n <= 24 (got {g.n})")
    best = cut_values(g).max()
    return int(best) if not g.weighted else float(best)


# -- noise ------------------------------------------------------------------

@dataclass(frozen=True)
class NoiseSpec:
    p_cx: float
    seed: int = 0

    def __post_init__(self) -> None:
        if not 0.0 <= self.p_cx <= 1.0:
            raise ValueError(f"p_cx must lie in [0, 1], got {self.p_cx}")


def trial_rng(seed: int, trial: int) -> np.random.Generator:
    """Independent stream per trial, so results do not depend on run order."""
    return np.random.default_rng([seed, trial])


def run_noisy_trials(
    c: Circuit,
    noise: NoiseSpec,
    trials: int,
    ideal: Statevector,
    device: "DeviceParams | None" = None,
    sites: Sequence[int] | None = None,
) -> float:
    """Mean fidelity against ``ideal`` under per-CNOT two-qubit depolarizing noise.

    After each CNOT, with probability ``p_cx`` one of the 15 non-identity
    two-qubit Paulis is applied uniformly at random.

    Each trial draws one uniform and one Pauli index per noise *site* up
    front.  By default the sites are the CNOTs in program order; ``sites``
    maps every CNOT to an explicit site id instead.  Circuits that share
    site ids and a seed see identical noise at shared sites (common random
    numbers), which is what makes variant-to-variant comparisons sharp.  The
    per-circuit estimator is the plain trial mean either way.

    If ``device`` is given, the mean is scaled by the relaxation survival
    factor ``exp(-N t_cx / T1)`` with ``N`` the circuit's CNOT depth.
    """
    if trials < 1:
        raise InvalidTrials(f"trials must be positive, got {trials}")
    if ideal.n_qubits != c.n_qubits:
        raise DimensionMismatch("ideal state and circuit differ in qubit count")
    n = c.n_qubits
    cx_pos = [i for i, g in enumerate(c.gates) if g.kind == CNOT]
    if sites is None:
        sites = range(len(cx_pos))
    elif len(sites) != len(cx_pos):
        raise ValueError(f"{len(sites)} noise sites for {len(cx_pos)} CNOTs")
    site_of = np.asarray(sites, dtype=np.int64)
    n_sites = int(site_of.max()) + 1 if len(site_of) else 0

    # checkpoints: noiseless state right after each CNOT
    amps = Statevector.zero(n).amplitudes
    checkpoints: list[np.ndarray] = []
    for g in c.gates:
        apply_gate(amps, n, g)
        if g.kind == CNOT:
            checkpoints.append(amps.copy())
    clean = fidelity(ideal, Statevector(n, amps))

    total = 0.0
    for t in range(trials):
        rng = trial_rng(noise.seed, t)
        hits = (rng.random(n_sites) < noise.p_cx)[site_of]
        paulis = rng.integers(1, 16, size=n_sites)[site_of]
        if not hits.any():
            total += clean
            continue
        first = int(np.argmax(hits))
        state = checkpoints[first].copy()
        k = first
        for pos in range(cx_pos[first], len(c.gates)):
            g = c.gates[pos]
            if pos != cx_pos[first]:
                apply_gate(state, n, g)
            if g.kind == CNOT:
                if hits[k]:
                    # Pauli pair indexed by (lower, higher) qubit, not (control, target)
                    lo, hi = sorted(g.qubits)
                    p_lo, p_hi = divmod(int(paulis[k]), 4)
                    if p_lo:
                        _apply_matrix(state, n, lo, _PAULI[p_lo])
                    if p_hi:
                        _apply_matrix(state, n, hi, _PAULI[p_hi])
                k += 1
        total += fidelity(ideal, Statevector(n, state))
    mean = total / trials
    if device is not None:
        from .circuit import depth_profile
        from .error_model import p_success

        mean *= p_success(0, depth_profile(c).cnot_depth, device)
    return mean


# -- parameter search ----------------------------------------------------------

def grid_axis(resolution: int) -> np.ndarray:
    """``resolution`` points spaced ``pi / resolution`` on ``[0, pi)``.

    Both angles have period pi up to a global phase, so the point at pi
    would duplicate the one at 0.
    """
    if resolution < 1:
        raise ValueError("resolution must be >= 1")
    return np.linspace(0.0, math.pi, resolution, endpoint=False)


def grid_search_p1(g: Graph, resolution: int) -> tuple[float, float, float]:
    """Best (gamma, beta, expectation) of the p=1 traditional ansatz on a grid.

    The grid is :func:`grid_axis` on both axes.
    For each gamma the circuit is simulated up to the mixer once; the RX
    mixer is then applied to all beta values as a batch.
    """
    from .ansatz import AnsatzParams, build_traditional

    if g.n > 12:
        raise TooLarge(f"grid search is limited to n <= 12 (got {g.n})")
    axis = grid_axis(resolution)
    cuts = cut_values(g).astype(np.float64)
    n = g.n
    best = (-math.inf, 0.0, 0.0)
    cos_b, sin_b = np.cos(axis), np.sin(axis)  # RX(2*beta): half-angle is beta
    for gamma in axis:
        circ = build_traditional(g, AnsatzParams.single(float(gamma), 0.0))
        pre_mixer = Circuit(n, circ.gates[: len(circ.gates) - n])
        amps = run(pre_mixer).amplitudes
        batch = np.tile(amps, (len(axis), 1))
        for q in range(n):
            view = batch.reshape(len(axis), 1 << (n - q - 1), 2, 1 << q)
            a0, a1 = view[:, :, 0, :], view[:, :, 1, :]
            c = cos_b[:, None, None]
            s = sin_b[:, None, None]
            t0 = c * a0 - 1j * s * a1
            a1[...] = -1j * s * a0 + c * a1
            a0[...] = t0
        values = (np.abs(batch) ** 2) @ cuts
        i = int(np.argmax(values))
        if values[i] > best[0] + 1e-12:
            best = (float(values[i]), float(gamma), float(axis[i]))
    return best[1], best[2], best[0]


def random_params(rng: np.random.Generator, p: int = 1) -> tuple[Sequence[float], Sequence[float]]:
    gamma = rng.uniform(0.0, 2.0 * math.pi, size=p)
    beta = rng.uniform(0.0, math.pi, size=p)
    return tuple(map(float, gamma)), tuple(map(float, beta))
