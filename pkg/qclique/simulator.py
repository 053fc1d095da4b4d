"""
qclique - Statevector Simulator Module

Exact dense statevector simulation with register-restricted sampling and
diagnostics. Qubit q is bit q of the basis-state index (qubit 0 = least
significant bit); histogram bitstrings list the register's highest qubit first.
"""

from dataclasses import dataclass, field, asdict
from math import cos, sin, sqrt
from typing import Any, Optional, Union
import logging

import numpy as np

from qclique.circuit import Circuit, Gate, GateKind, Register
from qclique.config import get_config
from qclique.graphs import Seed

logger = logging.getLogger(__name__)

_DTYPES = {"double": np.complex128, "single": np.complex64}
_TOLERANCES = {"double": 1e-10, "single": 1e-5}
_SQRT2_INV = 1 / sqrt(2)

_FLIP_KINDS = (GateKind.X, GateKind.CX, GateKind.CCX, GateKind.MCX)
_PHASE_KINDS = (GateKind.Z, GateKind.CZ, GateKind.MCZ)
_HADAMARD_KINDS = (GateKind.H, GateKind.CH)


class ResourceLimitError(MemoryError):
    """Raised when a statevector would exceed the configured width or memory cap."""

    def __init__(self, qubit_count: int, required_bytes: int, reason: str):
        self.qubit_count = qubit_count
        self.required_bytes = required_bytes
        super().__init__(
            f"{qubit_count} qubits need {required_bytes} bytes "
            f"({required_bytes / 2**30:.2f} GiB) of amplitudes: {reason}"
        )


def required_bytes(qubit_count: int, precision: Optional[str] = None) -> int:
    """Amplitude memory for a statevector of the given width."""
    precision = precision or get_config().get_precision()
    return (2 ** qubit_count) * np.dtype(_DTYPES[precision]).itemsize


def precision_tolerance(precision: Optional[str] = None) -> float:
    """Comparison tolerance for amplitudes of the given (default: configured) precision."""
    return _TOLERANCES[precision or get_config().get_precision()]


def check_capacity(qubit_count: int, precision: Optional[str] = None) -> None:
    """
    Reject widths the configuration does not allow.

    Raises:
        ResourceLimitError: If the width exceeds QCLIQUE_MAX_QUBITS or the memory cap
    """
    config = get_config()
    needed = required_bytes(qubit_count, precision)
    max_qubits = config.get_max_qubits()
    if qubit_count > max_qubits:
        raise ResourceLimitError(qubit_count, needed, f"limit is {max_qubits} qubits")
    limit = config.get_memory_limit_bytes()
    if limit is not None and needed > limit:
        raise ResourceLimitError(qubit_count, needed, f"memory limit is {limit} bytes")


class Statevector:
    """
    2^Q complex amplitudes.

    A statevector is owned by one caller while it is being mutated; gate
    application works in place.
    """

    def __init__(self, amplitudes: np.ndarray):
        amplitudes = np.ascontiguousarray(amplitudes)
        size = amplitudes.shape[0] if amplitudes.ndim == 1 else 0
        if size < 2 or size & (size - 1):
            raise ValueError(f"Amplitude array length must be a power of two >= 2, got {amplitudes.shape}")
        if amplitudes.dtype not in (np.complex64, np.complex128):
            amplitudes = amplitudes.astype(np.complex128)
        self.amplitudes = amplitudes
        self.qubit_count = size.bit_length() - 1

    @classmethod
    def random(cls, qubit_count: int, seed: Seed = None) -> "Statevector":
        """A Haar-like random normalized state, for tests and unitarity checks."""
        rng = np.random.default_rng(seed)
        raw = rng.normal(size=2 ** qubit_count) + 1j * rng.normal(size=2 ** qubit_count)
        return cls(raw / np.linalg.norm(raw))

    @property
    def precision(self) -> str:
        return "single" if self.amplitudes.dtype == np.complex64 else "double"

    @property
    def tolerance(self) -> float:
        return precision_tolerance(self.precision)

    def tensor(self) -> np.ndarray:
        """View with one axis per qubit; qubit q is axis Q - 1 - q."""
        return self.amplitudes.reshape((2,) * self.qubit_count)

    def norm_squared(self) -> float:
        return float(np.vdot(self.amplitudes, self.amplitudes).real)

    def probabilities(self) -> np.ndarray:
        return np.abs(self.amplitudes).astype(np.float64) ** 2

    def copy(self) -> "Statevector":
        return Statevector(self.amplitudes.copy())

    def __repr__(self) -> str:
        return f"Statevector(qubits={self.qubit_count}, precision={self.precision})"


@dataclass
class MeasurementHistogram:
    """
    Sampled outcomes of one register.

    Attributes:
        register: Name of the measured register
        counts: Bitstring (highest qubit first) to count
        shots: Total number of samples
    """

    register: str
    counts: dict[str, int] = field(default_factory=dict)
    shots: int = 0

    def validate(self) -> list[str]:
        """
        Validate the histogram.

        Returns:
            list: List of error messages (empty if valid)
        """
        errors = []
        if sum(self.counts.values()) != self.shots:
            errors.append(f"counts: sum {sum(self.counts.values())} differs from shots {self.shots}")
        if any(c < 0 for c in self.counts.values()):
            errors.append("counts: negative count")
        return errors

    def most_common(self, limit: Optional[int] = None) -> list[tuple[str, int]]:
        """Outcomes by decreasing count; ties broken by bitstring."""
        ranked = sorted(self.counts.items(), key=lambda item: (-item[1], item[0]))
        return ranked if limit is None else ranked[:limit]

    def frequency(self, bitstring: str) -> float:
        return self.counts.get(bitstring, 0) / self.shots if self.shots else 0.0

    def to_dict(self) -> dict[str, Any]:
        return asdict(self)


def zero_state(qubit_count: int, precision: Optional[str] = None) -> Statevector:
    """
    The all-zero state |0...0>.

    Args:
        qubit_count: Width Q, 1 <= Q <= configured maximum
        precision: "double" or "single"; defaults to the configured precision

    Raises:
        ValueError: If Q < 1
        ResourceLimitError: If Q exceeds the configured limit
    """
    return basis_state(qubit_count, 0, precision)


def basis_state(qubit_count: int, index: int, precision: Optional[str] = None) -> Statevector:
    """
    The computational basis state with the given index.

    Raises:
        ValueError: If Q < 1 or the index is out of range
        ResourceLimitError: If Q exceeds the configured limit
    """
    if qubit_count < 1:
        raise ValueError(f"A statevector needs at least 1 qubit, got {qubit_count}")
    precision = precision or get_config().get_precision()
    check_capacity(qubit_count, precision)
    if not 0 <= index < 2 ** qubit_count:
        raise ValueError(f"Basis index {index} outside 0..{2 ** qubit_count - 1}")
    amplitudes = np.zeros(2 ** qubit_count, dtype=_DTYPES[precision])
    amplitudes[index] = 1.0
    logger.debug(f"Allocated {qubit_count}-qubit {precision} statevector")
    return Statevector(amplitudes)


def _slice(qubit_count: int, fixed: dict[int, int]) -> tuple[Union[int, slice], ...]:
    index: list[Union[int, slice]] = [slice(None)] * qubit_count
    for qubit, value in fixed.items():
        index[qubit_count - 1 - qubit] = value
    return tuple(index)


def apply_gate(state: Statevector, gate: Gate) -> Statevector:
    """
    Apply one gate in place.

    Controls restrict the update to the subspace where every control matches
    its polarity; MARK negates the amplitudes whose register value is marked.

    Returns:
        Statevector: The same (mutated) state

    Raises:
        ValueError: If a gate qubit is out of range or the gate is malformed
    """
    n = state.qubit_count
    out_of_range = [q for q in gate.qubits if not 0 <= q < n]
    if out_of_range:
        raise ValueError(f"{gate}: qubits {out_of_range} outside a {n}-qubit state")
    errors = gate.validate()
    if errors:
        raise ValueError(errors[0])

    if gate.kind is GateKind.MARK:
        _apply_mark(state, gate)
        return state

    psi = state.tensor()
    fixed = {c.qubit: 0 if c.inverted else 1 for c in gate.controls}
    target = gate.targets[0]
    i0 = _slice(n, {**fixed, target: 0})
    i1 = _slice(n, {**fixed, target: 1})

    if gate.kind in _FLIP_KINDS:
        lower = psi[i0].copy()
        psi[i0] = psi[i1]
        psi[i1] = lower
    elif gate.kind in _PHASE_KINDS:
        psi[i1] *= -1
    elif gate.kind in _HADAMARD_KINDS:
        a, b = psi[i0].copy(), psi[i1].copy()
        psi[i0] = (a + b) * _SQRT2_INV
        psi[i1] = (a - b) * _SQRT2_INV
    elif gate.kind is GateKind.RY:
        half = (gate.angle or 0.0) / 2
        c, s = cos(half), sin(half)
        a, b = psi[i0].copy(), psi[i1].copy()
        psi[i0] = c * a - s * b
        psi[i1] = s * a + c * b
    else:
        raise ValueError(f"Unsupported gate kind {gate.kind}")
    return state


def _apply_mark(state: Statevector, gate: Gate) -> None:
    if not gate.marked:
        return
    start, size = gate.targets[0], len(gate.targets)
    high = state.qubit_count - start - size
    view = state.amplitudes.reshape(2 ** high, 2 ** size, 2 ** start)
    values = np.fromiter(sorted(gate.marked), dtype=np.int64)
    view[:, values, :] *= -1


def run(circuit: Circuit, state: Statevector, copy: bool = True) -> Statevector:
    """
    Apply a circuit layer by layer.

    Args:
        circuit: Circuit of the same width as the state
        state: Input state
        copy: Work on a copy (default) instead of mutating ``state``

    Returns:
        Statevector: The output state

    Raises:
        ValueError: If the widths differ
    """
    if circuit.qubit_count != state.qubit_count:
        raise ValueError(f"Circuit width {circuit.qubit_count} differs from state width {state.qubit_count}")
    result = state.copy() if copy else state
    for layer in circuit.layers:
        for gate in layer:
            apply_gate(result, gate)
    return result


def inner_product(a: Statevector, b: Statevector) -> complex:
    """
    <a|b>, conjugate-linear in a.

    Raises:
        ValueError: If the widths differ
    """
    if a.qubit_count != b.qubit_count:
        raise ValueError(f"Cannot take the inner product of {a.qubit_count}- and {b.qubit_count}-qubit states")
    return complex(np.vdot(a.amplitudes, b.amplitudes))


def register_probabilities(state: Statevector, register: Register) -> np.ndarray:
    """
    Exact marginal distribution of a register, indexed by register value.

    Raises:
        ValueError: If the register does not fit the state
    """
    if register.start < 0 or register.stop > state.qubit_count or register.size < 1:
        raise ValueError(f"Register {register.name} does not fit a {state.qubit_count}-qubit state")
    high = state.qubit_count - register.stop
    probs = state.probabilities().reshape(2 ** high, 2 ** register.size, 2 ** register.start)
    return probs.sum(axis=(0, 2))


def sample_register(state: Statevector, register: Register, shots: int,
                    seed: Seed = None) -> MeasurementHistogram:
    """
    Draw i.i.d. samples from a register's exact marginal distribution.

    Args:
        state: The state to measure; it is not collapsed
        register: Register to read
        shots: Number of samples
        seed: Seed or SeedSequence; equal seeds give equal histograms

    Returns:
        MeasurementHistogram: Counts keyed by bitstring, highest qubit first
    """
    if shots < 0:
        raise ValueError(f"shots must be non-negative, got {shots}")
    probs = register_probabilities(state, register)
    probs = probs / probs.sum()
    rng = np.random.default_rng(seed)
    draws = rng.multinomial(shots, probs)
    counts = {
        format(int(value), f"0{register.size}b"): int(count)
        for value, count in enumerate(draws)
        if count
    }
    return MeasurementHistogram(register=register.name, counts=counts, shots=shots)


def residual_mass(state: Statevector, register: Register, value: Union[str, int] = 0) -> float:
    """
    Probability that the register does not hold the given value.

    Args:
        state: The state to inspect
        register: Register to check
        value: Expected value, as an integer or a bitstring (highest qubit first)

    Returns:
        float: Total squared amplitude where the register differs from value
    """
    expected = int(value, 2) if isinstance(value, str) else value
    probs = register_probabilities(state, register)
    mask = np.ones(probs.shape[0], dtype=bool)
    mask[expected] = False
    return float(probs[mask].sum())
