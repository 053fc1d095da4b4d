"""
Circuit module tests.
"""

import math

import pytest

from qclique.circuit import (
    Circuit,
    CircuitBuilder,
    GateKind,
    adjoint,
    ccx,
    compose,
    cx,
    depth,
    dump_circuit,
    h,
    inverted,
    layout,
    mark,
    mcx,
    ry,
    validate,
    x,
)


class TestGate:
    """Test gate construction, validation and inverses."""

    def test_str(self):
        """Test the text form of a controlled gate."""
        assert str(ccx(0, inverted(1), 2)) == "CCX c=+0,-1 t=2"

    def test_repeated_qubit_invalid(self):
        """Test a gate may not use a qubit twice."""
        assert ccx(0, 0, 1).validate()

    def test_arity(self):
        """Test control counts are checked per kind."""
        assert mcx([0, 1, 2], 3).validate() == []
        assert ry(0.1, 0, [1, 2, 3]).validate()

    def test_cost(self):
        """Test the V-chain style cost of multi-controlled gates."""
        assert x(0).cost == 1
        assert ccx(0, 1, 2).cost == 1
        assert mcx([0, 1, 2, 3], 4).cost == 4
        assert mcx([0], 1).cost == 1

    def test_inverse(self):
        """Test RY negates its angle and other gates are self-inverse."""
        assert ry(0.5, 0, [1]).inverse().angle == -0.5
        assert ccx(0, 1, 2).inverse() == ccx(0, 1, 2)

    def test_mark_is_not_physical(self):
        """Test MARK is flagged non-physical."""
        register = layout(("idx", 3))[0]
        gate = mark(register, [5], "clique")

        assert gate.kind is GateKind.MARK
        assert not gate.physical
        assert gate.validate() == []
        assert "label=clique" in str(gate)


class TestCircuit:
    """Test registers, validation and builders."""

    def test_layout_and_lookup(self):
        """Test registers are laid out contiguously."""
        idx, anc, out = layout(("idx", 4), ("anc", 2), ("out", 1))

        assert (idx.start, anc.start, out.start) == (0, 4, 6)
        assert out[0] == 6
        assert list(anc.qubits) == [4, 5]

    def test_unknown_register(self):
        """Test looking up a missing register raises ValueError."""
        circuit = CircuitBuilder(layout(("idx", 2))).build()

        with pytest.raises(ValueError, match="Unknown register"):
            circuit.register("anc")

    def test_layer_sharing_qubit_invalid(self):
        """Test two gates of a layer may not share a qubit."""
        circuit = Circuit(2, layout(("q", 2)), ((x(0), cx(0, 1)),))

        assert any("shares qubits" in e for e in validate(circuit))

    def test_qubit_out_of_range(self):
        """Test the builder rejects gates beyond the width."""
        builder = CircuitBuilder(layout(("q", 2)))
        builder.append_layer([x(2)])

        with pytest.raises(ValueError, match="invalid circuit"):
            builder.build()

    def test_append_packed(self):
        """Test gates are scheduled as soon as possible."""
        builder = CircuitBuilder(layout(("q", 3)))
        builder.append_packed([h(0), h(1), cx(0, 1), x(2)])
        circuit = builder.build()

        assert circuit.layer_count == 2
        assert set(circuit.layers[0]) == {h(0), h(1), x(2)}
        assert circuit.layers[1] == (cx(0, 1),)

    def test_append_layer_skips_empty(self):
        """Test an empty layer is not recorded."""
        builder = CircuitBuilder(layout(("q", 1)))
        builder.append_layer([])

        assert builder.build().layer_count == 0


class TestDepth:
    """Test the depth report."""

    def test_weighted_depth(self):
        """Test weighted depth sums the costliest gate per layer."""
        builder = CircuitBuilder(layout(("q", 6)))
        builder.append_layer([mcx([0, 1, 2, 3], 4), x(5)])
        builder.append_layer([ccx(0, 1, 2)])
        report = depth(builder.build())

        assert report.layer_count == 2
        assert report.weighted_depth == 5
        assert report.gate_counts == {"MCX": 1, "X": 1, "CCX": 1}
        assert report.physical

    def test_invalid_circuit(self):
        """Test depth refuses an invalid circuit."""
        with pytest.raises(ValueError):
            depth(Circuit(1, (), ((x(3),),)))

    def test_to_dict(self):
        """Test the report serializes with sorted gate counts."""
        builder = CircuitBuilder(layout(("q", 2)))
        builder.append_layer([x(0), h(1)])

        assert depth(builder.build()).to_dict() == {
            "layer_count": 1,
            "weighted_depth": 1,
            "gate_counts": {"H": 1, "X": 1},
            "physical": True,
        }


class TestAdjointCompose:
    """Test adjoint and composition."""

    def test_adjoint_reverses_layers(self):
        """Test layer order is reversed and rotations inverted."""
        builder = CircuitBuilder(layout(("q", 2)))
        builder.append_layer([ry(math.pi / 3, 0)])
        builder.append_layer([cx(0, 1)])
        circuit = builder.build()

        inverse = adjoint(circuit)

        assert inverse.layers[0] == (cx(0, 1),)
        assert inverse.layers[1][0].angle == pytest.approx(-math.pi / 3)

    def test_compose_adds_layers(self):
        """Test composition concatenates layers."""
        builder = CircuitBuilder(layout(("q", 2)))
        builder.append_layer([x(0)])
        a = builder.build()

        assert compose(a, a).layer_count == 2

    def test_compose_width_mismatch(self):
        """Test composing different widths raises ValueError."""
        a = CircuitBuilder(layout(("q", 2))).build()
        b = CircuitBuilder(layout(("q", 3))).build()

        with pytest.raises(ValueError, match="width"):
            compose(a, b)

    def test_compose_register_mismatch(self):
        """Test composing different register maps raises ValueError."""
        a = CircuitBuilder(layout(("a", 2))).build()
        b = CircuitBuilder(layout(("b", 2))).build()

        with pytest.raises(ValueError, match="register maps"):
            compose(a, b)


class TestDump:
    """Test the textual dump."""

    def test_dump(self):
        """Test the header and one line per gate."""
        builder = CircuitBuilder(layout(("idx", 2), ("out", 1)))
        builder.append_layer([ccx(0, 1, 2)])
        builder.append_layer([mcx([inverted(0), 1], 2)])

        text = dump_circuit(builder.build())

        assert text.splitlines() == [
            "# qubits=3 registers=idx:0+2,out:2+1",
            "0 CCX c=+0,+1 t=2",
            "1 MCX c=-0,+1 t=2",
        ]
