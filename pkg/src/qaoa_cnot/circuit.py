"""Gate-level IR (H, RX, RZ, CNOT), ASAP depth scheduling and a QASM subset.

Conventions: ``RZ(t) = diag(exp(-it/2), exp(it/2))`` and
``RX(t) = exp(-i t X / 2)``.  There is no barrier; ordering is program order.
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass, field
from typing import Iterator

H, RX, RZ, CNOT = "h", "rx", "rz", "cx"
GATE_KINDS = (H, RX, RZ, CNOT)


class CircuitError(ValueError):
    pass


class QubitOutOfRange(CircuitError):
    pass


class ControlEqualsTarget(CircuitError):
    pass


class QasmError(CircuitError):
    pass


@dataclass(frozen=True)
class Gate:
    kind: str
    qubits: tuple[int, ...]
    angle: float | None = None

    def __post_init__(self) -> None:
        if self.kind not in GATE_KINDS:
            raise CircuitError(f"unknown gate kind {self.kind!r}")
        arity = 2 if self.kind == CNOT else 1
        if len(self.qubits) != arity:
            raise CircuitError(f"{self.kind} takes {arity} qubit(s), got {self.qubits}")
        if self.kind == CNOT and self.qubits[0] == self.qubits[1]:
            raise ControlEqualsTarget(f"cx control equals target ({self.qubits[0]})")
        if self.kind in (RX, RZ):
            if self.angle is None or not math.isfinite(self.angle):
                raise CircuitError(f"{self.kind} needs a finite angle, got {self.angle}")
        elif self.angle is not None:
            raise CircuitError(f"{self.kind} takes no angle")

    def __str__(self) -> str:
        args = ",".join(f"q[{q}]" for q in self.qubits)
        if self.angle is None:
            return f"{self.kind} {args};"
        return f"{self.kind}({self.angle:.17g}) {args};"


def h(q: int) -> Gate:
    return Gate(H, (q,))


def rx(theta: float, q: int) -> Gate:
    return Gate(RX, (q,), float(theta))


def rz(theta: float, q: int) -> Gate:
    return Gate(RZ, (q,), float(theta))


def cx(control: int, target: int) -> Gate:
    return Gate(CNOT, (control, target))


@dataclass
class Circuit:
    n_qubits: int
    gates: list[Gate] = field(default_factory=list)

    def __post_init__(self) -> None:
        gates, self.gates = self.gates, []
        for g in gates:
            self.append(g)

    def append(self, gate: Gate) -> "Circuit":
        for q in gate.qubits:
            if not 0 <= q < self.n_qubits:
                raise QubitOutOfRange(f"qubit {q} outside [0, {self.n_qubits})")
        self.gates.append(gate)
        return self

    def extend(self, gates) -> "Circuit":
        for g in gates:
            self.append(g)
        return self

    def __iter__(self) -> Iterator[Gate]:
        return iter(self.gates)

    def __len__(self) -> int:
        return len(self.gates)

    def count(self, kind: str) -> int:
        return sum(1 for g in self.gates if g.kind == kind)

    def copy(self) -> "Circuit":
        return Circuit(self.n_qubits, list(self.gates))


def cnot_count(c: Circuit) -> int:
    return c.count(CNOT)


@dataclass(frozen=True)
class DepthProfile:
    full_depth: int
    cnot_depth: int


def asap_layers(c: Circuit) -> list[int]:
    """1-based ASAP layer index of every gate, in program order."""
    frontier = [0] * c.n_qubits
    layers = []
    for g in c.gates:
        layer = max(frontier[q] for q in g.qubits) + 1
        for q in g.qubits:
            frontier[q] = layer
        layers.append(layer)
    return layers


def cnot_layers(c: Circuit) -> list[int]:
    """ASAP CNOT-layer index per gate when single-qubit gates take no time.

    Single-qubit gates report the layer of the last CNOT on their qubit
    (0 if none).  This is the layer count that sets circuit duration when
    only CNOTs cost ``t_cx``.
    """
    frontier = [0] * c.n_qubits
    layers = []
    for g in c.gates:
        if g.kind == CNOT:
            a, b = g.qubits
            frontier[a] = frontier[b] = max(frontier[a], frontier[b]) + 1
        layers.append(max(frontier[q] for q in g.qubits))
    return layers


def depth_profile(c: Circuit) -> DepthProfile:
    """``full_depth``: greedy ASAP layers over all gates.

    ``cnot_depth``: CNOT layers with single-qubit gates treated as
    zero-duration, i.e. the longest CNOT chain through the circuit.
    """
    full = max(asap_layers(c), default=0)
    return DepthProfile(full, max(cnot_layers(c), default=0))


# -- QASM subset -------------------------------------------------------------

def emit_qasm(c: Circuit) -> str:
    lines = ["OPENQASM 2.0;", f"qreg q[{c.n_qubits}];"]
    lines.extend(str(g) for g in c.gates)
    return "\n".join(lines) + "\n"


_QREG = re.compile(r"^qreg\s+q\[(\d+)\]\s*;$")
_STMT = re.compile(
    r"^(h|rx|rz|cx)\s*(?:\(\s*([^)]*?)\s*\))?\s+"
    r"q\[(\d+)\]\s*(?:,\s*q\[(\d+)\])?\s*;$"
)


def parse_qasm(text: str) -> Circuit:
    circuit: Circuit | None = None
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("//", 1)[0].strip()
        if not line or line == "OPENQASM 2.0;" or line.startswith("include "):
            continue
        if circuit is None:
            m = _QREG.match(line)
            if not m:
                raise QasmError(f"line {lineno}: expected qreg declaration, got {line!r}")
            circuit = Circuit(int(m.group(1)))
            continue
        m = _STMT.match(line)
        if not m:
            raise QasmError(f"line {lineno}: unsupported statement {line!r}")
        kind, arg, q0, q1 = m.groups()
        try:
            if kind == CNOT:
                if q1 is None or arg is not None:
                    raise QasmError(f"line {lineno}: cx takes two qubits and no angle")
                circuit.append(cx(int(q0), int(q1)))
            elif kind == H:
                if q1 is not None or arg is not None:
                    raise QasmError(f"line {lineno}: h takes one qubit and no angle")
                circuit.append(h(int(q0)))
            else:
                if q1 is not None or arg is None:
                    raise QasmError(f"line {lineno}: {kind} takes an angle and one qubit")
                circuit.append(Gate(kind, (int(q0),), float(arg)))
        except CircuitError as exc:
            if isinstance(exc, QasmError):
                raise
            raise QasmError(f"line {lineno}: {exc}") from exc
    if circuit is None:
        raise QasmError("missing qreg declaration")
    return circuit
