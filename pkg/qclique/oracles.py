"""
qclique - Oracles Module

Circuit builders for the edge detectors (one CCX per edge, and the layered
design over a matching partition), the Alpha phase circuit, the Input
Preparator, the Gamma clique oracle and an exact marking baseline.
"""

from dataclasses import dataclass
from itertools import combinations
from typing import Iterable, Optional, Sequence, Union
import logging

import numpy as np

from qclique.amplification import build_s0, gamma_layout
from qclique.circuit import (
    Circuit,
    CircuitBuilder,
    Register,
    adjoint,
    ccx,
    ch,
    cx,
    cz,
    inverted,
    layout,
    mark,
    mcx,
    x,
)
from qclique.graphs import AugmentedGraph, Graph, Seed, list_k_cliques, partition_edges
from qclique.simulator import (
    Statevector,
    basis_state,
    inner_product,
    register_probabilities,
    residual_mass,
    run,
)

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class EdgeQuery:
    """A question "is {a, b} an edge?", encoded as 1s on idx_a and idx_b."""

    a: int
    b: int

    def __post_init__(self) -> None:
        if self.a == self.b or self.a < 0 or self.b < 0:
            raise ValueError(f"An edge query needs two distinct nodes, got {self.a}, {self.b}")

    def index(self, idx: Register) -> int:
        return (1 << idx[self.a]) | (1 << idx[self.b])


@dataclass(frozen=True)
class SubgraphQuery:
    """A node set H, encoded on idx as its characteristic bitstring."""

    nodes: frozenset[int]

    @classmethod
    def of(cls, nodes: Iterable[int]) -> "SubgraphQuery":
        return cls(frozenset(nodes))

    def index(self, idx: Register) -> int:
        value = 0
        for node in self.nodes:
            value |= 1 << idx[node]
        return value

    def __len__(self) -> int:
        return len(self.nodes)


@dataclass(frozen=True)
class EdgeAnswer:
    """Outcome of one edge query: the out bit and the ancilla residual."""

    out: int
    anc_residual: float


def build_edge_detector_naive(g: Graph) -> Circuit:
    """
    Edge detector with one CCX per edge, all on out.

    Registers idx (n) and out (1); layer count equals the edge count.
    """
    builder = CircuitBuilder(layout(("idx", g.node_count), ("out", 1)))
    idx, out = builder.register("idx"), builder.register("out")
    for a, b in g.sorted_edges():
        builder.append_layer([ccx(idx[a], idx[b], out[0])])
    return builder.build()


def build_edge_detector(g: Graph) -> Circuit:
    """
    Layered edge detector over a matching partition of g.

    Each partition class becomes one layer of CCX gates, the j-th edge of a
    class writing to anc_j. An inverted-control MCX on out followed by X
    flips out when any anc qubit is set; the CCX layers are then undone.

    Registers idx (n), anc (floor(n/2)) and out (1).
    """
    builder = CircuitBuilder(layout(("idx", g.node_count), ("anc", g.node_count // 2), ("out", 1)))
    idx, anc, out = builder.register("idx"), builder.register("anc"), builder.register("out")

    ccx_layers = [
        [ccx(idx[a], idx[b], anc[j]) for j, (a, b) in enumerate(factor)]
        for factor in partition_edges(g)
    ]
    for layer in ccx_layers:
        builder.append_layer(layer)
    if anc.size:
        builder.append_layer([mcx([inverted(q) for q in anc.qubits], out[0])])
        builder.append_layer([x(out[0])])
    for layer in reversed(ccx_layers):
        builder.append_layer(layer)
    return builder.build()


def answer_edge_query(detector: Circuit, query: EdgeQuery) -> EdgeAnswer:
    """
    Run an edge detector on a query basis state.

    Returns:
        EdgeAnswer: out bit (1 = edge found) and the squared amplitude left off anc = 0
    """
    idx = detector.register("idx")
    state = run(detector, basis_state(detector.qubit_count, query.index(idx)), copy=False)
    out_probability = register_probabilities(state, detector.register("out"))[1]
    anc_residual = 0.0
    if any(r.name == "anc" and r.size for r in detector.registers):
        anc_residual = residual_mass(state, detector.register("anc"), 0)
    return EdgeAnswer(out=int(round(out_probability)), anc_residual=anc_residual)


def build_alpha(g: Graph, registers: Optional[Sequence[Register]] = None,
                register: str = "inp") -> Circuit:
    """
    Alpha: one CZ per edge on the qubits of its endpoints.

    The CZ gates are layered by the matching partition, so the layer count
    is at most n. Qubits outside the register are left untouched.

    Args:
        g: The graph
        registers: Register layout (default: a single n-qubit inp register)
        register: Register whose qubit i stands for node i
    """
    builder = CircuitBuilder(registers or layout((register, g.node_count)))
    nodes = builder.register(register)
    if nodes.size < g.node_count:
        raise ValueError(f"Register {register} has {nodes.size} qubits, graph has {g.node_count} nodes")
    for factor in partition_edges(g):
        builder.append_layer([cz(nodes[a], nodes[b]) for a, b in factor])
    return builder.build()


def build_input_preparator(n: int, registers: Optional[Sequence[Register]] = None) -> Circuit:
    """
    Input Preparator over registers idx (n), inp (n) and rem (2).

    Step 1 puts inp_j in |+> wherever idx_j is set; step 2 counts the
    Hamming weight of inp modulo 4 into rem (rem_1 most significant); step 3
    complements inp on the idx support when rem_1 is 0, leaving only
    weights 2 and 3 mod 4.

    Raises:
        ValueError: If n < 1
    """
    if n < 1:
        raise ValueError(f"Input Preparator needs n >= 1, got {n}")
    builder = CircuitBuilder(registers or gamma_layout(n))
    idx, inp, rem = builder.register("idx"), builder.register("inp"), builder.register("rem")

    gates = [ch(idx[j], inp[j]) for j in range(n)]
    for j in range(n):
        gates.append(ccx(inp[j], rem[0], rem[1]))
        gates.append(cx(inp[j], rem[0]))
    gates.extend(ccx(idx[j], inverted(rem[1]), inp[j]) for j in range(n))
    builder.append_packed(gates)
    return builder.build()


def _as_augmented(graph: Union[AugmentedGraph, Graph]) -> AugmentedGraph:
    if isinstance(graph, AugmentedGraph):
        return graph
    return AugmentedGraph(graph=graph, q=0, original_n=graph.node_count, k=0)


def build_gamma(ag: Union[AugmentedGraph, Graph]) -> Circuit:
    """
    Gamma: IP, Alpha on inp, IP adjoint, S_0 on inp and rem, then IP, Alpha, IP adjoint.

    A plain Graph is treated as an augmentation with no apex nodes.

    Returns:
        Circuit: Registers idx, inp (n_qubits each) and rem (2)
    """
    ag = _as_augmented(ag)
    registers = gamma_layout(ag.n_qubits)
    ip = build_input_preparator(ag.n_qubits, registers)
    alpha = build_alpha(ag.graph, registers, "inp")
    ip_dagger = adjoint(ip)
    s0 = build_s0(registers, ("inp", "rem"))

    builder = CircuitBuilder(registers)
    for part in (ip, alpha, ip_dagger, s0, ip, alpha, ip_dagger):
        builder.extend(part)
    circuit = builder.build()
    logger.debug(f"Built Gamma for {ag.graph}: {circuit}")
    return circuit


def build_exact_marking_oracle(ag: AugmentedGraph, k: int, ancillas: bool = False) -> Circuit:
    """
    Baseline phase oracle marking exactly the (k+q)-cliques that contain every apex node.

    The predicate is evaluated classically; the result is a single MARK
    gate over idx and is not a physical circuit.

    Args:
        ag: Augmented graph
        k: Clique size in the original graph
        ancillas: Add inp and rem registers so the oracle matches Gamma's width
    """
    registers = gamma_layout(ag.n_qubits) if ancillas else layout(("idx", ag.n_qubits))
    builder = CircuitBuilder(registers)
    idx = builder.register("idx")
    apex = set(ag.apex_nodes)
    marked = [
        SubgraphQuery.of(clique).index(Register("idx", 0, idx.size))
        for clique in list_k_cliques(ag.graph, k + ag.q)
        if apex.issubset(clique)
    ]
    builder.append_layer([mark(idx, marked, f"clique(k={k},q={ag.q})")])
    logger.debug(f"Exact oracle marks {len(marked)} states")
    return builder.build()


def prepare_alpha_input(n_qubits: int, nodes: Iterable[int]) -> tuple[Circuit, Statevector]:
    """
    Run the Input Preparator on idx = H.

    Returns:
        tuple: The preparator circuit and its output state
    """
    ip = build_input_preparator(n_qubits)
    query = SubgraphQuery.of(nodes)
    state = basis_state(ip.qubit_count, query.index(ip.register("idx")))
    return ip, run(ip, state, copy=False)


def alpha_overlap(g: Graph, nodes: Iterable[int]) -> float:
    """
    <psi|Alpha|psi> for the Alpha input built on H by the Input Preparator.

    +1 for empty H, -1 for complete H; exactly 0 for malformed H of size 3.

    Raises:
        ValueError: If |H| is not 3 mod 4
    """
    chosen = sorted(set(nodes))
    if len(chosen) % 4 != 3:
        raise ValueError(f"Alpha input needs |H| = 3 mod 4, got |H| = {len(chosen)}")
    ip, psi = prepare_alpha_input(g.node_count, chosen)
    alpha = build_alpha(g, ip.registers, "inp")
    return inner_product(psi, run(alpha, psi)).real


def alpha_overlap_statistics(g: Graph, k: int, samples: int, seed: Seed = None) -> list[float]:
    """
    Overlaps for random malformed k-node subsets of g.

    Subsets are drawn without repetition until ``samples`` malformed ones are
    found or the subsets run out.

    Returns:
        list: One overlap per malformed subset, in draw order
    """
    if k % 4 != 3:
        raise ValueError(f"Alpha input needs k = 3 mod 4, got {k}")
    rng = np.random.default_rng(seed)
    candidates = list(combinations(range(g.node_count), k))
    overlaps = []
    for position in rng.permutation(len(candidates)):
        nodes = candidates[int(position)]
        sub = g.induced(nodes)
        if sub.edge_count in (0, k * (k - 1) // 2):
            continue
        overlaps.append(alpha_overlap(g, nodes))
        if len(overlaps) == samples:
            break
    logger.info(f"Measured {len(overlaps)} malformed overlaps for k={k}")
    return overlaps


def _ancilla_register(gamma: Circuit) -> Register:
    inp, rem = gamma.register("inp"), gamma.register("rem")
    return Register("ancillas", inp.start, inp.size + rem.size)


def gamma_response(gamma: Circuit, nodes: Iterable[int]) -> tuple[complex, float]:
    """
    Run Gamma once on |idx=H, 0>.

    Returns:
        tuple: The diagonal element <idx=H, 0|Gamma|idx=H, 0> and the
        probability that inp and rem are left nonzero
    """
    index = SubgraphQuery.of(nodes).index(gamma.register("idx"))
    state = run(gamma, basis_state(gamma.qubit_count, index), copy=False)
    return complex(state.amplitudes[index]), residual_mass(state, _ancilla_register(gamma), 0)


def gamma_diagonal(gamma: Circuit, nodes: Iterable[int]) -> complex:
    """<idx=H, 0|Gamma|idx=H, 0>: -1 for complete or empty H."""
    return gamma_response(gamma, nodes)[0]


def gamma_residual(gamma: Circuit, nodes: Iterable[int]) -> float:
    """Probability that inp and rem are not all zero after Gamma on idx = H."""
    return gamma_response(gamma, nodes)[1]
