"""
Statevector simulator tests.
"""

import math

import numpy as np
import pytest

from qclique.circuit import (
    CircuitBuilder,
    Gate,
    GateKind,
    Register,
    adjoint,
    ccx,
    ch,
    cx,
    cz,
    h,
    inverted,
    layout,
    mark,
    mcx,
    mcz,
    ry,
    x,
    z,
)
from qclique.simulator import (
    MeasurementHistogram,
    ResourceLimitError,
    Statevector,
    apply_gate,
    basis_state,
    check_capacity,
    inner_product,
    precision_tolerance,
    register_probabilities,
    required_bytes,
    residual_mass,
    run,
    sample_register,
    zero_state,
)


def _circuit(width, *layers):
    builder = CircuitBuilder(layout(("q", width)))
    for layer in layers:
        builder.append_layer(layer)
    return builder.build()


_KERNELS = {
    GateKind.X: np.array([[0, 1], [1, 0]], dtype=complex),
    GateKind.CX: np.array([[0, 1], [1, 0]], dtype=complex),
    GateKind.CCX: np.array([[0, 1], [1, 0]], dtype=complex),
    GateKind.MCX: np.array([[0, 1], [1, 0]], dtype=complex),
    GateKind.Z: np.diag([1, -1]).astype(complex),
    GateKind.CZ: np.diag([1, -1]).astype(complex),
    GateKind.MCZ: np.diag([1, -1]).astype(complex),
    GateKind.H: np.array([[1, 1], [1, -1]], dtype=complex) / math.sqrt(2),
    GateKind.CH: np.array([[1, 1], [1, -1]], dtype=complex) / math.sqrt(2),
}


def _dense_matrix(gate: Gate, width: int) -> np.ndarray:
    """Column-by-column matrix of a gate, built from its definition on basis states."""
    size = 2 ** width
    matrix = np.zeros((size, size), dtype=complex)
    for column in range(size):
        if gate.kind is GateKind.MARK:
            value = sum(((column >> q) & 1) << i for i, q in enumerate(gate.targets))
            matrix[column, column] = -1 if value in gate.marked else 1
            continue
        if not all(((column >> c.qubit) & 1) == (0 if c.inverted else 1) for c in gate.controls):
            matrix[column, column] = 1
            continue
        if gate.kind is GateKind.RY:
            c, s = math.cos(gate.angle / 2), math.sin(gate.angle / 2)
            kernel = np.array([[c, -s], [s, c]], dtype=complex)
        else:
            kernel = _KERNELS[gate.kind]
        target = gate.targets[0]
        bit = (column >> target) & 1
        for out_bit in (0, 1):
            row = (column & ~(1 << target)) | (out_bit << target)
            matrix[row, column] += kernel[out_bit, bit]
    return matrix


class TestStates:
    """Test state construction and capacity checks."""

    def test_zero_state(self):
        """Test |0...0> has a single unit amplitude."""
        state = zero_state(3)

        assert state.qubit_count == 3
        assert state.amplitudes[0] == 1
        assert state.norm_squared() == pytest.approx(1.0)

    def test_basis_state_out_of_range(self):
        """Test an index beyond 2^Q raises ValueError."""
        with pytest.raises(ValueError):
            basis_state(2, 4)

    def test_zero_qubits_rejected(self):
        """Test a width of zero raises ValueError."""
        with pytest.raises(ValueError):
            zero_state(0)

    def test_width_above_limit(self, monkeypatch):
        """Test the qubit ceiling raises ResourceLimitError naming bytes."""
        monkeypatch.setenv("QCLIQUE_MAX_QUBITS", "4")

        with pytest.raises(ResourceLimitError, match="5 qubits need 512 bytes") as info:
            zero_state(5)

        assert isinstance(info.value, MemoryError)
        assert info.value.qubit_count == 5

    def test_memory_limit(self, monkeypatch):
        """Test the optional memory cap."""
        monkeypatch.setenv("QCLIQUE_MEMORY_LIMIT_MB", "1")

        check_capacity(16)
        with pytest.raises(ResourceLimitError, match="memory limit"):
            check_capacity(17)

    def test_single_precision(self, monkeypatch):
        """Test single precision halves the amplitude memory."""
        monkeypatch.setenv("QCLIQUE_PRECISION", "single")

        state = zero_state(2)

        assert state.precision == "single"
        assert state.tolerance == 1e-5
        assert required_bytes(10) == 8 * 1024

    def test_precision_tolerance(self, monkeypatch):
        """Test comparison tolerances follow the configured precision."""
        assert precision_tolerance() == 1e-10
        assert precision_tolerance("single") == 1e-5

        monkeypatch.setenv("QCLIQUE_PRECISION", "single")

        assert precision_tolerance() == 1e-5
        assert zero_state(1).tolerance == 1e-5

    def test_non_power_of_two_rejected(self):
        """Test amplitude arrays must have power-of-two length."""
        with pytest.raises(ValueError):
            Statevector(np.ones(3, dtype=complex))


class TestGates:
    """Test gate kernels against hand-computed results."""

    def test_x_on_lsb(self):
        """Test qubit 0 is the least significant index bit."""
        state = run(_circuit(2, [x(0)]), zero_state(2))

        assert state.amplitudes[1] == pytest.approx(1)

    def test_cx_and_inverted_control(self):
        """Test positive and inverted controls."""
        assert run(_circuit(2, [x(0)], [cx(0, 1)]), zero_state(2)).amplitudes[3] == pytest.approx(1)
        assert run(_circuit(2, [cx(inverted(0), 1)]), zero_state(2)).amplitudes[2] == pytest.approx(1)

    def test_hadamard(self):
        """Test H makes an equal superposition."""
        state = run(_circuit(1, [h(0)]), zero_state(1))

        assert np.allclose(state.amplitudes, [1 / math.sqrt(2)] * 2)

    @pytest.mark.parametrize("index", range(8))
    def test_ccx_truth_table(self, index):
        """Test CCX flips qubit 2 only when qubits 0 and 1 are set."""
        state = run(_circuit(3, [ccx(0, 1, 2)]), basis_state(3, index))
        expected = index ^ 4 if index & 3 == 3 else index

        assert state.amplitudes[expected] == pytest.approx(1)

    def test_mcx_with_inverted_controls(self):
        """Test an MCX on all-zero inverted controls fires."""
        circuit = _circuit(4, [mcx([inverted(0), inverted(1), inverted(2)], 3)])

        assert run(circuit, zero_state(4)).amplitudes[8] == pytest.approx(1)
        assert run(circuit, basis_state(4, 2)).amplitudes[2] == pytest.approx(1)

    def test_phase_gates(self):
        """Test Z, CZ and MCZ phases."""
        assert run(_circuit(1, [z(0)]), basis_state(1, 1)).amplitudes[1] == pytest.approx(-1)
        assert run(_circuit(2, [cz(0, 1)]), basis_state(2, 3)).amplitudes[3] == pytest.approx(-1)
        assert run(_circuit(2, [cz(0, 1)]), basis_state(2, 1)).amplitudes[1] == pytest.approx(1)
        assert run(_circuit(3, [mcz([0, 1], 2)]), basis_state(3, 7)).amplitudes[7] == pytest.approx(-1)

    def test_controlled_hadamard(self):
        """Test CH acts only with its control set."""
        state = run(_circuit(2, [x(0)], [ch(0, 1)]), zero_state(2))

        assert state.amplitudes[1] == pytest.approx(1 / math.sqrt(2))
        assert state.amplitudes[3] == pytest.approx(1 / math.sqrt(2))

    def test_ry(self):
        """Test RY(theta)|0> = cos(theta/2)|0> + sin(theta/2)|1>."""
        state = run(_circuit(1, [ry(math.pi / 3, 0)]), zero_state(1))

        assert state.amplitudes[0] == pytest.approx(math.cos(math.pi / 6))
        assert state.amplitudes[1] == pytest.approx(math.sin(math.pi / 6))

    def test_mark(self):
        """Test MARK negates marked register values only."""
        registers = layout(("a", 1), ("idx", 2))
        builder = CircuitBuilder(registers)
        builder.append_layer([mark(registers[1], [2], "two")])
        circuit = builder.build()

        marked = run(circuit, basis_state(3, 0b101))
        unmarked = run(circuit, basis_state(3, 0b011))

        assert marked.amplitudes[0b101] == pytest.approx(-1)
        assert unmarked.amplitudes[0b011] == pytest.approx(1)

    def test_gate_out_of_range(self):
        """Test applying a gate beyond the width raises ValueError."""
        with pytest.raises(ValueError):
            apply_gate(zero_state(2), x(2))

    def test_width_mismatch(self):
        """Test running a circuit on a different width raises ValueError."""
        with pytest.raises(ValueError, match="differs"):
            run(_circuit(2, [x(0)]), zero_state(3))

    def test_run_copies_by_default(self):
        """Test run leaves its input untouched unless copy=False."""
        state = zero_state(1)
        run(_circuit(1, [x(0)]), state)
        assert state.amplitudes[0] == 1

        run(_circuit(1, [x(0)]), state, copy=False)
        assert state.amplitudes[1] == 1

    def test_unitarity_on_random_state(self):
        """Test a mixed circuit preserves the norm and inverts cleanly."""
        circuit = _circuit(3, [h(0), ry(0.7, 1)], [ccx(0, 1, 2)], [mcz([inverted(0), 2], 1)])
        state = Statevector.random(3, seed=1)

        forward = run(circuit, state)
        back = run(adjoint(circuit), forward)

        assert forward.norm_squared() == pytest.approx(1.0)
        assert abs(inner_product(state, back)) == pytest.approx(1.0)

    @pytest.mark.parametrize("gate", [
        x(3),
        z(0),
        h(5),
        ch(1, 4),
        ch(inverted(2), 0),
        cx(5, 0),
        cx(inverted(0), 5),
        cz(2, 3),
        cz(inverted(4), 1),
        ccx(0, 3, 5),
        ccx(inverted(1), 4, 2),
        mcx([0, 1, 2, 3], 5),
        mcx([inverted(5), 2, inverted(0)], 4),
        mcz([1, 3], 0),
        mcz([inverted(0), inverted(2), 4, 5], 3),
        ry(0.9, 2),
        ry(-1.3, 0, [4]),
        ry(2.1, 5, [inverted(1), 3]),
        mark(Register("r", 1, 3), [0, 5, 6], "r"),
    ], ids=str)
    def test_matches_dense_matrix(self, gate):
        """Test each gate kind against its matrix built from basis-state definitions."""
        state = Statevector.random(6, seed=11)
        expected = _dense_matrix(gate, 6) @ state.amplitudes

        apply_gate(state, gate)

        assert np.allclose(state.amplitudes, expected, atol=1e-12)

    def test_layer_order_is_irrelevant(self):
        """Test gates on disjoint qubits give the same state in any order within a layer."""
        layer = [h(0), ry(0.4, 1, [inverted(2)]), ccx(3, inverted(4), 5), cz(6, 7)]
        state = Statevector.random(8, seed=5)

        forward = run(_circuit(8, layer), state)
        for order in ([3, 2, 1, 0], [1, 3, 0, 2], [2, 0, 3, 1]):
            shuffled = run(_circuit(8, [layer[i] for i in order]), state)
            assert np.allclose(shuffled.amplitudes, forward.amplitudes, atol=1e-12)


class TestMeasurement:
    """Test marginals, sampling and residuals."""

    def test_register_probabilities(self):
        """Test the marginal of a two-qubit register."""
        registers = layout(("a", 1), ("b", 2))
        builder = CircuitBuilder(registers)
        builder.append_layer([h(0), x(2)])
        state = run(builder.build(), zero_state(3))

        assert np.allclose(register_probabilities(state, registers[1]), [0, 0, 1, 0])
        assert np.allclose(register_probabilities(state, registers[0]), [0.5, 0.5])

    def test_sampling_is_deterministic(self):
        """Test equal seeds give equal histograms that sum to shots."""
        register = layout(("q", 2))[0]
        state = run(_circuit(2, [h(0), h(1)]), zero_state(2))

        a = sample_register(state, register, 1000, seed=3)
        b = sample_register(state, register, 1000, seed=3)

        assert a == b
        assert a.validate() == []
        assert set(a.counts) <= {"00", "01", "10", "11"}

    def test_bitstring_order(self):
        """Test bitstrings put the highest register qubit first."""
        register = layout(("rem", 2))[0]
        histogram = sample_register(basis_state(2, 1), register, 10, seed=0)

        assert histogram.counts == {"01": 10}

    def test_most_common_tie_break(self):
        """Test ranking by count then bitstring."""
        histogram = MeasurementHistogram("idx", {"10": 3, "01": 3, "11": 5}, 11)

        assert histogram.most_common(2) == [("11", 5), ("01", 3)]
        assert histogram.frequency("10") == pytest.approx(3 / 11)

    def test_residual_mass(self):
        """Test the mass off the expected register value."""
        register = layout(("q", 1))[0]
        state = run(_circuit(1, [h(0)]), zero_state(1))

        assert residual_mass(state, register, 0) == pytest.approx(0.5)
        assert residual_mass(basis_state(1, 1), register, "1") == pytest.approx(0.0)

    def test_sampling_concentrates(self):
        """Test a uniform two-qubit state samples each outcome a quarter of the time."""
        register = layout(("q", 2))[0]
        state = run(_circuit(2, [h(0), h(1)]), zero_state(2))

        histogram = sample_register(state, register, 100_000, seed=7)

        for bitstring in ("00", "01", "10", "11"):
            assert histogram.frequency(bitstring) == pytest.approx(0.25, abs=0.01)
