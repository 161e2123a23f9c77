from __future__ import annotations

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from qaoa_cnot.circuit import (
    Circuit,
    CircuitError,
    ControlEqualsTarget,
    QasmError,
    QubitOutOfRange,
    asap_layers,
    cnot_count,
    cx,
    depth_profile,
    emit_qasm,
    h,
    parse_qasm,
    rx,
    rz,
)


def test_append_examples():
    c = Circuit(2).append(cx(0, 1))
    assert len(c) == 1
    with pytest.raises(ControlEqualsTarget):
        cx(1, 1)
    with pytest.raises(QubitOutOfRange):
        Circuit(1).append(cx(0, 1))


def test_gate_validation():
    with pytest.raises(CircuitError):
        rz(float("inf"), 0)
    with pytest.raises(CircuitError):
        from qaoa_cnot.circuit import Gate

        Gate("cz", (0, 1))


def test_depth_disjoint_hadamards():
    prof = depth_profile(Circuit(3, [h(0), h(1), h(2)]))
    assert (prof.full_depth, prof.cnot_depth) == (1, 0)


def test_cnot_count_empty():
    assert cnot_count(Circuit(3)) == 0


def test_cnot_depth_ignores_single_qubit_gates():
    c = Circuit(3, [cx(0, 1), rz(0.3, 1), cx(0, 1), cx(1, 2), rz(0.1, 2)])
    assert depth_profile(c).cnot_depth == 3
    assert depth_profile(c).full_depth == 5


def test_serial_and_parallel_gadgets():
    serial = Circuit(2)
    for _ in range(3):
        serial.extend([cx(0, 1), rz(0.2, 1), cx(0, 1)])
    assert depth_profile(serial).cnot_depth == cnot_count(serial)
    parallel = Circuit(4)
    for a, b in ((0, 1), (2, 3)):
        parallel.extend([cx(a, b), rz(0.2, b), cx(a, b)])
    assert depth_profile(parallel).cnot_depth == 2


def test_qasm_lines():
    assert emit_qasm(Circuit(1, [h(0)])) == "OPENQASM 2.0;\nqreg q[1];\nh q[0];\n"
    assert "rz(1.5) q[1];" in emit_qasm(Circuit(2, [rz(1.5, 1)]))
    assert "cx q[0],q[1];" in emit_qasm(Circuit(2, [cx(0, 1)]))


def test_qasm_errors():
    with pytest.raises(QasmError, match="line 2"):
        parse_qasm("OPENQASM 2.0;\nh q[0];\n")
    with pytest.raises(QasmError, match="line 3"):
        parse_qasm("OPENQASM 2.0;\nqreg q[2];\nmeasure q[0];\n")
    with pytest.raises(QasmError, match="line 3"):
        parse_qasm("OPENQASM 2.0;\nqreg q[2];\ncx q[0],q[0];\n")
    with pytest.raises(QasmError):
        parse_qasm("")


angles = st.floats(-1e3, 1e3, allow_nan=False, allow_infinity=False)


@st.composite
def circuits(draw, max_qubits=5):
    n = draw(st.integers(2, max_qubits))
    q = st.integers(0, n - 1)
    gates = []
    for _ in range(draw(st.integers(0, 30))):
        kind = draw(st.sampled_from(["h", "rx", "rz", "cx"]))
        if kind == "cx":
            a = draw(q)
            b = draw(q.filter(lambda x: x != a))
            gates.append(cx(a, b))
        elif kind == "h":
            gates.append(h(draw(q)))
        elif kind == "rx":
            gates.append(rx(draw(angles), draw(q)))
        else:
            gates.append(rz(draw(angles), draw(q)))
    return Circuit(n, gates)


@settings(max_examples=100, deadline=None)
@given(circuits())
def test_qasm_round_trip(c):
    back = parse_qasm(emit_qasm(c))
    assert back.n_qubits == c.n_qubits
    assert back.gates == c.gates


@settings(max_examples=100, deadline=None)
@given(circuits())
def test_depth_invariant_under_layer_reordering(c):
    layers = asap_layers(c)
    order = sorted(range(len(c)), key=lambda i: (layers[i], -i))
    relayered = Circuit(c.n_qubits, [c.gates[i] for i in order])
    assert depth_profile(relayered) == depth_profile(c)
    assert depth_profile(c).cnot_depth <= cnot_count(c)
