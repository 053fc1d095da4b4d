"""
qclique - Circuit Module

Gate-level circuit representation: named registers, explicit layers,
adjoint, composition, a depth cost model and a textual dump.

Qubit 0 is the least significant bit of a basis-state index throughout
the package.
"""

from dataclasses import dataclass, field
from enum import Enum
from typing import Iterable, Iterator, Optional, Sequence, Union
import logging

logger = logging.getLogger(__name__)


class GateKind(str, Enum):
    """Gate kinds known to the circuit model and the simulator."""

    X = "X"
    Z = "Z"
    H = "H"
    CH = "CH"
    CX = "CX"
    CZ = "CZ"
    CCX = "CCX"
    MCX = "MCX"
    MCZ = "MCZ"
    RY = "RY"
    MARK = "MARK"


# (min controls, max controls); every kind except MARK has exactly one target
_CONTROL_ARITY: dict[GateKind, tuple[int, Optional[int]]] = {
    GateKind.X: (0, 0),
    GateKind.Z: (0, 0),
    GateKind.H: (0, 0),
    GateKind.CH: (1, 1),
    GateKind.CX: (1, 1),
    GateKind.CZ: (1, 1),
    GateKind.CCX: (2, 2),
    GateKind.MCX: (1, None),
    GateKind.MCZ: (1, None),
    GateKind.RY: (0, 2),
    GateKind.MARK: (0, 0),
}

_MULTI_CONTROLLED = (GateKind.MCX, GateKind.MCZ)


@dataclass(frozen=True)
class Control:
    """A control qubit; an inverted control fires on |0>."""

    qubit: int
    inverted: bool = False

    def __str__(self) -> str:
        return f"{'-' if self.inverted else '+'}{self.qubit}"


ControlLike = Union[int, Control]


def _as_controls(controls: Iterable[ControlLike]) -> tuple[Control, ...]:
    return tuple(c if isinstance(c, Control) else Control(c) for c in controls)


@dataclass(frozen=True)
class Gate:
    """
    A single gate.

    Attributes:
        kind: Gate kind
        targets: Target qubits (one, or a whole register for MARK)
        controls: Control qubits with polarity
        angle: Rotation angle, RY only
        marked: Register values whose phase MARK flips
        label: Predicate identifier of a MARK gate
    """

    kind: GateKind
    targets: tuple[int, ...]
    controls: tuple[Control, ...] = ()
    angle: Optional[float] = None
    marked: frozenset[int] = field(default=frozenset())
    label: str = ""

    @property
    def qubits(self) -> tuple[int, ...]:
        return tuple(c.qubit for c in self.controls) + self.targets

    @property
    def physical(self) -> bool:
        return self.kind is not GateKind.MARK

    @property
    def cost(self) -> int:
        """Depth charged for this gate; multi-controlled gates cost one unit per control."""
        if self.kind in _MULTI_CONTROLLED:
            return max(1, len(self.controls))
        return 1

    def validate(self) -> list[str]:
        """
        Validate qubit distinctness and kind arity.

        Returns:
            list: List of error messages (empty if valid)
        """
        errors = []
        qubits = self.qubits
        if len(set(qubits)) != len(qubits):
            errors.append(f"{self.kind.value}: qubits {qubits} are not pairwise distinct")
        if any(q < 0 for q in qubits):
            errors.append(f"{self.kind.value}: negative qubit index in {qubits}")

        low, high = _CONTROL_ARITY[self.kind]
        n_controls = len(self.controls)
        if n_controls < low or (high is not None and n_controls > high):
            errors.append(f"{self.kind.value}: {n_controls} controls, expected {low}..{high}")
        if self.kind is GateKind.MARK:
            if not self.targets:
                errors.append("MARK: needs a target register")
            elif list(self.targets) != list(range(self.targets[0], self.targets[0] + len(self.targets))):
                errors.append(f"MARK: targets {self.targets} are not a contiguous ascending range")
            elif any(not 0 <= v < 2 ** len(self.targets) for v in self.marked):
                errors.append("MARK: marked value outside the register range")
        elif len(self.targets) != 1:
            errors.append(f"{self.kind.value}: expected 1 target, got {len(self.targets)}")
        if self.kind is GateKind.RY and self.angle is None:
            errors.append("RY: missing angle")
        return errors

    def inverse(self) -> "Gate":
        """The inverse gate; every kind but RY is self-inverse."""
        if self.kind is GateKind.RY:
            return Gate(GateKind.RY, self.targets, self.controls, angle=-(self.angle or 0.0))
        return self

    def __str__(self) -> str:
        parts = [self.kind.value]
        if self.controls:
            parts.append("c=" + ",".join(str(c) for c in self.controls))
        parts.append("t=" + ",".join(str(t) for t in self.targets))
        if self.angle is not None:
            parts.append(f"angle={self.angle!r}")
        if self.kind is GateKind.MARK:
            parts.append(f"label={self.label or 'anonymous'}")
            parts.append("marked=" + ",".join(str(v) for v in sorted(self.marked)))
        return " ".join(parts)


def x(target: int) -> Gate:
    return Gate(GateKind.X, (target,))


def z(target: int) -> Gate:
    return Gate(GateKind.Z, (target,))


def h(target: int) -> Gate:
    return Gate(GateKind.H, (target,))


def ch(control: ControlLike, target: int) -> Gate:
    return Gate(GateKind.CH, (target,), _as_controls([control]))


def cx(control: ControlLike, target: int) -> Gate:
    return Gate(GateKind.CX, (target,), _as_controls([control]))


def cz(a: ControlLike, b: int) -> Gate:
    return Gate(GateKind.CZ, (b,), _as_controls([a]))


def ccx(c1: ControlLike, c2: ControlLike, target: int) -> Gate:
    return Gate(GateKind.CCX, (target,), _as_controls([c1, c2]))


def mcx(controls: Iterable[ControlLike], target: int) -> Gate:
    return Gate(GateKind.MCX, (target,), _as_controls(controls))


def mcz(controls: Iterable[ControlLike], target: int) -> Gate:
    return Gate(GateKind.MCZ, (target,), _as_controls(controls))


def ry(angle: float, target: int, controls: Iterable[ControlLike] = ()) -> Gate:
    return Gate(GateKind.RY, (target,), _as_controls(controls), angle=float(angle))


def mark(register: "Register", values: Iterable[int], label: str) -> Gate:
    """Phase-flip gate on the register values listed; a classical predicate, not a physical gate."""
    return Gate(GateKind.MARK, tuple(register.qubits), marked=frozenset(values), label=label)


def inverted(qubit: int) -> Control:
    return Control(qubit, inverted=True)


@dataclass(frozen=True)
class Register:
    """A named, contiguous qubit range."""

    name: str
    start: int
    size: int

    @property
    def qubits(self) -> range:
        return range(self.start, self.start + self.size)

    @property
    def stop(self) -> int:
        return self.start + self.size

    def __getitem__(self, i: int) -> int:
        return self.qubits[i]

    def __len__(self) -> int:
        return self.size


def layout(*specs: tuple[str, int]) -> tuple[Register, ...]:
    """
    Lay registers out contiguously from qubit 0 in the order given.

    Args:
        specs: (name, size) pairs

    Returns:
        tuple: The registers
    """
    registers = []
    start = 0
    for name, size in specs:
        registers.append(Register(name, start, size))
        start += size
    return tuple(registers)


@dataclass(frozen=True)
class Circuit:
    """
    A quantum program: register map plus ordered layers of gates.

    Attributes:
        qubit_count: Total width Q
        registers: Named disjoint qubit ranges
        layers: Gate lists; gates in one layer touch disjoint qubits
    """

    qubit_count: int
    registers: tuple[Register, ...] = ()
    layers: tuple[tuple[Gate, ...], ...] = ()

    def register(self, name: str) -> Register:
        """
        Look up a register by name.

        Raises:
            ValueError: If no register has that name
        """
        for register in self.registers:
            if register.name == name:
                return register
        known = ", ".join(r.name for r in self.registers) or "none"
        raise ValueError(f"Unknown register {name!r} (known: {known})")

    @property
    def layer_count(self) -> int:
        return len(self.layers)

    def gates(self) -> Iterator[Gate]:
        for layer in self.layers:
            yield from layer

    @property
    def gate_count(self) -> int:
        return sum(len(layer) for layer in self.layers)

    def __str__(self) -> str:
        names = ", ".join(f"{r.name}[{r.size}]" for r in self.registers)
        return f"Circuit(Q={self.qubit_count}, registers=[{names}], layers={self.layer_count})"


@dataclass(frozen=True)
class DepthReport:
    """
    Structural depth of a circuit.

    Attributes:
        layer_count: Number of layers
        weighted_depth: Sum over layers of the costliest gate in the layer
        gate_counts: Number of gates per kind
        physical: False when a MARK gate is present; such depths are not comparable
    """

    layer_count: int
    weighted_depth: int
    gate_counts: dict[str, int]
    physical: bool = True

    def to_dict(self) -> dict[str, object]:
        return {
            "layer_count": self.layer_count,
            "weighted_depth": self.weighted_depth,
            "gate_counts": dict(sorted(self.gate_counts.items())),
            "physical": self.physical,
        }


def validate(circuit: Circuit) -> list[str]:
    """
    Check the circuit invariants.

    Returns:
        list: Violations, the first offending layer/gate first (empty if valid)
    """
    errors = []
    covered: set[int] = set()
    for register in circuit.registers:
        if register.start < 0 or register.stop > circuit.qubit_count:
            errors.append(f"register {register.name}: range {register.start}..{register.stop - 1} "
                          f"outside 0..{circuit.qubit_count - 1}")
        overlap = covered.intersection(register.qubits)
        if overlap:
            errors.append(f"register {register.name}: overlaps another register on {sorted(overlap)}")
        covered.update(register.qubits)

    for layer_index, layer in enumerate(circuit.layers):
        used: set[int] = set()
        for gate_index, gate in enumerate(layer):
            where = f"layer {layer_index}, gate {gate_index} ({gate})"
            errors.extend(f"{where}: {e}" for e in gate.validate())
            out_of_range = [q for q in gate.qubits if q >= circuit.qubit_count]
            if out_of_range:
                errors.append(f"{where}: qubits {out_of_range} >= width {circuit.qubit_count}")
            shared = used.intersection(gate.qubits)
            if shared:
                errors.append(f"{where}: shares qubits {sorted(shared)} with an earlier gate in the layer")
            used.update(gate.qubits)
    return errors


def depth(circuit: Circuit) -> DepthReport:
    """
    Compute the depth report under the cost model.

    Single-qubit, two-qubit, CCX and controlled-RY gates cost 1; a
    multi-controlled gate over c controls costs max(1, c), standing for a
    V-chain style decomposition.

    Raises:
        ValueError: If the circuit is invalid
    """
    errors = validate(circuit)
    if errors:
        raise ValueError(f"Cannot compute depth of an invalid circuit: {errors[0]}")

    weighted = 0
    counts: dict[str, int] = {}
    physical = True
    for layer in circuit.layers:
        weighted += max((gate.cost for gate in layer), default=0)
        for gate in layer:
            counts[gate.kind.value] = counts.get(gate.kind.value, 0) + 1
            physical = physical and gate.physical
    return DepthReport(circuit.layer_count, weighted, counts, physical)


def adjoint(circuit: Circuit) -> Circuit:
    """Reverse the layer order and invert every gate."""
    layers = tuple(tuple(gate.inverse() for gate in layer) for layer in reversed(circuit.layers))
    return Circuit(circuit.qubit_count, circuit.registers, layers)


def compose(a: Circuit, b: Circuit) -> Circuit:
    """
    Run a then b. Layers are concatenated, never re-packed.

    Raises:
        ValueError: If the widths or register maps differ
    """
    if a.qubit_count != b.qubit_count:
        raise ValueError(f"Cannot compose circuits of width {a.qubit_count} and {b.qubit_count}")
    if a.registers and b.registers and a.registers != b.registers:
        raise ValueError("Cannot compose circuits with different register maps")
    return Circuit(a.qubit_count, a.registers or b.registers, a.layers + b.layers)


def dump_circuit(circuit: Circuit) -> str:
    """
    Render a circuit as text, one gate per line.

    Format:
        # qubits=<Q> registers=<name>:<start>+<size>,...
        <layer> <KIND> [c=<+q|-q>,...] t=<q>,... [angle=<float>] [label=<id> marked=<v>,...]
    """
    registers = ",".join(f"{r.name}:{r.start}+{r.size}" for r in circuit.registers)
    lines = [f"# qubits={circuit.qubit_count} registers={registers}"]
    for index, layer in enumerate(circuit.layers):
        lines.extend(f"{index} {gate}" for gate in layer)
    return "\n".join(lines) + "\n"


class CircuitBuilder:
    """
    Accumulates layers for one register layout and validates on build.

    Layer assignment is explicit: ``append_layer`` adds one layer as given,
    ``append_packed`` schedules a gate sequence as-soon-as-possible into
    fresh layers without reordering gates that share a qubit.
    """

    def __init__(self, registers: Sequence[Register]):
        self.registers = tuple(registers)
        self.qubit_count = max((r.stop for r in self.registers), default=0)
        self.layers: list[tuple[Gate, ...]] = []

    def register(self, name: str) -> Register:
        return Circuit(self.qubit_count, self.registers).register(name)

    def append_layer(self, gates: Iterable[Gate]) -> "CircuitBuilder":
        layer = tuple(gates)
        if layer:
            self.layers.append(layer)
        return self

    def append_packed(self, gates: Iterable[Gate]) -> "CircuitBuilder":
        packed: list[list[Gate]] = []
        frontier: dict[int, int] = {}
        for gate in gates:
            level = max((frontier.get(q, -1) for q in gate.qubits), default=-1) + 1
            if level == len(packed):
                packed.append([])
            packed[level].append(gate)
            for q in gate.qubits:
                frontier[q] = level
        self.layers.extend(tuple(layer) for layer in packed)
        return self

    def extend(self, circuit: Circuit) -> "CircuitBuilder":
        """Append another circuit's layers; it must share this builder's width."""
        if circuit.qubit_count != self.qubit_count:
            raise ValueError(f"Cannot extend a {self.qubit_count}-qubit circuit with a "
                             f"{circuit.qubit_count}-qubit one")
        self.layers.extend(circuit.layers)
        return self

    def build(self) -> Circuit:
        """
        Freeze the accumulated layers.

        Raises:
            ValueError: If the result violates a circuit invariant
        """
        circuit = Circuit(self.qubit_count, self.registers, tuple(self.layers))
        errors = validate(circuit)
        if errors:
            raise ValueError(f"Builder produced an invalid circuit: {errors[0]}")
        logger.debug(f"Built {circuit}")
        return circuit
