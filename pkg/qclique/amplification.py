"""
qclique - Amplitude Amplification Module

Search-space preparation (Dicke state plus apex ones), the S_0 reflection
and the amplitude amplification driver.
"""

from dataclasses import dataclass
from math import asin, ceil, comb, floor, pi, sin, sqrt, acos
from typing import Iterator, Optional, Sequence, Union
import logging

from qclique.circuit import (
    Circuit,
    CircuitBuilder,
    Gate,
    Register,
    adjoint,
    compose,
    cx,
    inverted,
    layout,
    mcz,
    ry,
    x,
    z,
)
from qclique.graphs import AugmentedGraph, Seed, apex_count
from qclique.simulator import (
    MeasurementHistogram,
    Statevector,
    run,
    sample_register,
    zero_state,
)

logger = logging.getLogger(__name__)


def gamma_layout(n_qubits: int) -> tuple[Register, ...]:
    """Registers idx (n_qubits), inp (n_qubits) and rem (2), in that qubit order."""
    return layout(("idx", n_qubits), ("inp", n_qubits), ("rem", 2))


def iteration_cap(search_space_size: int) -> int:
    """Most iterations a search may take to count as a success: ceil(2 * pi/4 * sqrt(N))."""
    return ceil(2 * (pi / 4) * sqrt(search_space_size))


@dataclass(frozen=True)
class SearchSpaceSpec:
    """
    The search space of a k-clique query over an apex-augmented graph.

    Attributes:
        n: Original node count
        k: Clique size
        q: Apex count, q >= 1 with k + q = 3 (mod 4)
    """

    n: int
    k: int
    q: int

    def __post_init__(self) -> None:
        errors = self.validate()
        if errors:
            raise ValueError(f"Invalid search space: {', '.join(errors)}")

    @classmethod
    def for_clique(cls, n: int, k: int) -> "SearchSpaceSpec":
        return cls(n=n, k=k, q=apex_count(k))

    @classmethod
    def from_augmented(cls, ag: AugmentedGraph) -> "SearchSpaceSpec":
        return cls(n=ag.original_n, k=ag.k, q=ag.q)

    def validate(self) -> list[str]:
        """
        Validate the spec.

        Returns:
            list: List of error messages (empty if valid)
        """
        errors = []
        if not 0 < self.k <= self.n:
            errors.append(f"k: must be in 1..{self.n}, got {self.k}")
        if self.q < 1:
            errors.append(f"q: must be >= 1, got {self.q}")
        if (self.k + self.q) % 4 != 3:
            errors.append(f"q: k + q = {self.k + self.q} is not 3 mod 4")
        return errors

    @property
    def n_qubits(self) -> int:
        return self.n + self.q

    @property
    def search_space_size(self) -> int:
        return comb(self.n, self.k)

    @property
    def total_qubits(self) -> int:
        """Width of the Gamma amplification circuit, 2 * n_qubits + 2."""
        return 2 * self.n_qubits + 2


@dataclass(frozen=True)
class AASchedule:
    """
    Iteration budget and sampling parameters of one search.

    Attributes:
        max_iterations: ceil(2 * pi/4 * sqrt(C(n, k)))
        shots: Samples drawn after each iteration count
        seed: Seed for sampling
    """

    max_iterations: int
    shots: int
    seed: Optional[int] = None

    @classmethod
    def for_spec(cls, spec: SearchSpaceSpec, shots: int, seed: Optional[int] = None) -> "AASchedule":
        return cls(max_iterations=iteration_cap(spec.search_space_size), shots=shots, seed=seed)


def _split_cyclic_shift(qubits: Sequence[int], high: int, low: int) -> list[Gate]:
    """Gates of one split-and-cyclic-shift block over 1-based positions 1 .. high."""
    def q(position: int) -> int:
        return qubits[position - 1]

    gates = []
    for index in range(high, high - low, -1):
        theta = 2 * acos(sqrt((high - index + 1) / high))
        if index == high:
            controls = [q(high)]
        else:
            controls = [q(high), q(index)]
        gates.append(cx(q(index - 1), q(high)))
        gates.append(ry(theta, q(index - 1), controls))
        gates.append(cx(q(index - 1), q(high)))
    return gates


def dicke_gates(qubits: Sequence[int], k: int) -> list[Gate]:
    """
    Deterministic Dicke-state preparation on the given qubits.

    Starts from |0...0>, sets the last k qubits and applies the
    split-and-cyclic-shift cascade.
    """
    n = len(qubits)
    gates = [x(qubit) for qubit in qubits[n - k:]]
    for high in range(n, k, -1):
        gates.extend(_split_cyclic_shift(qubits, high, k))
    for high in range(k, 1, -1):
        gates.extend(_split_cyclic_shift(qubits, high, high - 1))
    return gates


def build_dicke_prep(n: int, k: int, registers: Optional[Sequence[Register]] = None,
                     register: str = "idx") -> Circuit:
    """
    Map |0...0> to the Dicke state of Hamming weight k on the first n register qubits.

    Args:
        n: Number of qubits in the superposition
        k: Hamming weight, 0 < k <= n
        registers: Register layout (default: a single n-qubit idx register)
        register: Register whose first n qubits carry the state

    Returns:
        Circuit: Unitary preparation circuit

    Raises:
        ValueError: If k is out of range or the register is too small
    """
    if not 0 < k <= n:
        raise ValueError(f"Dicke state needs 0 < k <= n, got n={n}, k={k}")
    builder = CircuitBuilder(registers or layout((register, n)))
    target = builder.register(register)
    if target.size < n:
        raise ValueError(f"Register {register} has {target.size} qubits, need {n}")
    builder.append_packed(dicke_gates([target[i] for i in range(n)], k))
    return builder.build()


def build_search_prep(spec: SearchSpaceSpec, ancillas: bool = True) -> Circuit:
    """
    Prepare the search space on idx: a Dicke state over the n original nodes
    and |1> on every apex qubit.

    Args:
        spec: Search space
        ancillas: Lay out inp and rem after idx (Gamma width); otherwise idx only

    Returns:
        Circuit: Preparation circuit
    """
    registers = gamma_layout(spec.n_qubits) if ancillas else layout(("idx", spec.n_qubits))
    builder = CircuitBuilder(registers)
    idx = builder.register("idx")
    gates = dicke_gates([idx[i] for i in range(spec.n)], spec.k)
    gates.extend(x(idx[i]) for i in range(spec.n, spec.n_qubits))
    builder.append_packed(gates)
    return builder.build()


def build_s0(registers: Sequence[Register], target: Union[str, Sequence[str]] = "idx") -> Circuit:
    """
    Phase -1 on the all-zero state of the named registers, identity elsewhere.

    The inverted-control multi-controlled Z is realised as an MCZ whose
    target is conjugated by X gates.

    Args:
        registers: Register layout of the circuit
        target: Register name, or names whose union is reflected

    Returns:
        Circuit: The reflection
    """
    builder = CircuitBuilder(registers)
    names = [target] if isinstance(target, str) else list(target)
    qubits = sorted(q for name in names for q in builder.register(name).qubits)
    if not qubits:
        raise ValueError("S_0 needs at least one qubit")
    last = qubits[-1]
    builder.append_layer([x(last)])
    if len(qubits) == 1:
        builder.append_layer([z(last)])
    else:
        builder.append_layer([mcz([inverted(q) for q in qubits[:-1]], last)])
    builder.append_layer([x(last)])
    return builder.build()


def build_iteration(prep: Circuit, oracle: Circuit, register: str = "idx") -> Circuit:
    """
    One amplification step: oracle, prep adjoint, S_0 on the register, prep.

    Raises:
        ValueError: If the circuits are not compatible
    """
    s0 = build_s0(prep.registers, register)
    return compose(compose(compose(oracle, adjoint(prep)), s0), prep)


def amplify(prep: Circuit, oracle: Circuit, t_max: int, register: str = "idx",
            precision: Optional[str] = None) -> Iterator[tuple[int, Statevector]]:
    """
    Yield the state after 0, 1, ..., t_max iterations.

    The same Statevector object is mutated between yields; copy it to keep
    an intermediate state.

    Raises:
        ValueError: If t_max is negative or the circuits are not compatible
    """
    if t_max < 0:
        raise ValueError(f"Iteration count must be non-negative, got {t_max}")
    if prep.qubit_count != oracle.qubit_count:
        raise ValueError(f"Preparation width {prep.qubit_count} differs from oracle width {oracle.qubit_count}")
    step = build_iteration(prep, oracle, register)
    state = run(prep, zero_state(prep.qubit_count, precision), copy=False)
    yield 0, state
    for t in range(1, t_max + 1):
        run(step, state, copy=False)
        logger.debug(f"Completed amplification iteration {t}")
        yield t, state


def run_aa(prep: Circuit, oracle: Circuit, t: int, shots: int, seed: Seed = None,
           register: str = "idx") -> MeasurementHistogram:
    """
    Prepare, amplify t times and sample the register.

    Args:
        prep: Search-space preparation
        oracle: Phase oracle of the same width
        t: Number of iterations
        shots: Number of samples
        seed: Sampling seed

    Returns:
        MeasurementHistogram: Outcomes on the register

    Raises:
        ValueError: If widths differ or t is negative
    """
    final: Optional[Statevector] = None
    for _, state in amplify(prep, oracle, t, register):
        final = state
    assert final is not None
    return sample_register(final, prep.register(register), shots, seed)


def optimal_iterations(search_space_size: int, solutions: int) -> int:
    """
    Iteration count maximising the success probability with M known solutions.

    Returns:
        int: floor(pi/4 * sqrt(N / M)), at least 1

    Raises:
        ValueError: If M is not in 1..N
    """
    if solutions < 1:
        raise ValueError("Optimal iteration count is undefined without solutions")
    if solutions > search_space_size:
        raise ValueError(f"More solutions ({solutions}) than states ({search_space_size})")
    return max(1, floor((pi / 4) * sqrt(search_space_size / solutions)))


def grover_success_probability(search_space_size: int, solutions: int, t: int) -> float:
    """sin^2((2t + 1) * arcsin(sqrt(M / N))), the exact-oracle success probability."""
    theta = asin(sqrt(solutions / search_space_size))
    return sin((2 * t + 1) * theta) ** 2
