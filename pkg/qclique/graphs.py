"""
qclique - Graph Module

Classical graph machinery: graphs, cliques, random induced subgraphs,
the round-robin 1-factorization of K_n and edge partitioning of arbitrary graphs.
"""

from dataclasses import dataclass, field
from functools import cached_property
from itertools import combinations
from typing import Iterable, Iterator, Optional, Union
import logging

import networkx as nx
import numpy as np

logger = logging.getLogger(__name__)

Edge = tuple[int, int]
Seed = Union[int, np.random.SeedSequence, np.random.Generator, None]


def normalize_edge(a: int, b: int) -> Edge:
    """
    Order an undirected edge as (smaller, larger).

    Raises:
        ValueError: If the edge is a self-loop
    """
    if a == b:
        raise ValueError(f"Self-loop on node {a} is not allowed")
    return (a, b) if a < b else (b, a)


@dataclass(frozen=True)
class Graph:
    """
    A simple undirected graph on nodes 0 .. node_count - 1.

    Attributes:
        node_count: Number of nodes n
        edges: Deduplicated edges, each stored as (smaller, larger)
        labels: Original node ids when this graph was cut out of a larger one
    """

    node_count: int
    edges: frozenset[Edge] = frozenset()
    labels: tuple[int, ...] = field(default=(), compare=False)

    def __post_init__(self) -> None:
        object.__setattr__(self, "edges", frozenset(normalize_edge(a, b) for a, b in self.edges))
        errors = self.validate()
        if errors:
            raise ValueError(f"Invalid graph: {', '.join(errors)}")

    @classmethod
    def from_edges(cls, node_count: int, edges: Iterable[tuple[int, int]]) -> "Graph":
        """Build a graph from any iterable of node pairs."""
        return cls(node_count=node_count, edges=frozenset(normalize_edge(a, b) for a, b in edges))

    @classmethod
    def complete(cls, n: int) -> "Graph":
        """The complete graph K_n."""
        return cls(node_count=n, edges=frozenset(combinations(range(n), 2)))

    @classmethod
    def empty(cls, n: int) -> "Graph":
        """The edgeless graph on n nodes."""
        return cls(node_count=n)

    def validate(self) -> list[str]:
        """
        Validate the graph invariants.

        Returns:
            list: List of error messages (empty if valid)
        """
        errors = []
        if self.node_count < 0:
            errors.append(f"node_count: must be non-negative, got {self.node_count}")
        for a, b in sorted(self.edges):
            if not (0 <= a < self.node_count and 0 <= b < self.node_count):
                errors.append(f"edge ({a}, {b}): endpoint outside 0..{self.node_count - 1}")
        if self.labels and len(self.labels) != self.node_count:
            errors.append(f"labels: expected {self.node_count} labels, got {len(self.labels)}")
        return errors

    @property
    def edge_count(self) -> int:
        return len(self.edges)

    @cached_property
    def adjacency(self) -> tuple[frozenset[int], ...]:
        neighbors: list[set[int]] = [set() for _ in range(self.node_count)]
        for a, b in self.edges:
            neighbors[a].add(b)
            neighbors[b].add(a)
        return tuple(frozenset(s) for s in neighbors)

    def has_edge(self, a: int, b: int) -> bool:
        return a != b and normalize_edge(a, b) in self.edges

    def sorted_edges(self) -> list[Edge]:
        return sorted(self.edges)

    def original_label(self, node: int) -> int:
        """Map a node back to the id it had in the graph it was drawn from."""
        return self.labels[node] if self.labels else node

    def is_clique(self, nodes: Iterable[int]) -> bool:
        """Check that every pair of the given nodes is adjacent."""
        return all(self.has_edge(a, b) for a, b in combinations(sorted(set(nodes)), 2))

    def induced(self, nodes: Iterable[int]) -> "Graph":
        """
        Induced subgraph on the given nodes.

        Nodes are relabeled 0 .. len(nodes) - 1 in increasing id order; the
        original ids are kept in ``labels``.

        Raises:
            ValueError: If a node is out of range
        """
        chosen = sorted(set(nodes))
        for node in chosen:
            if not 0 <= node < self.node_count:
                raise ValueError(f"Node {node} is outside 0..{self.node_count - 1}")
        position = {node: i for i, node in enumerate(chosen)}
        edges = frozenset(
            (position[a], position[b]) for a, b in self.edges if a in position and b in position
        )
        labels = tuple(self.original_label(node) for node in chosen)
        return Graph(node_count=len(chosen), edges=edges, labels=labels)

    def to_networkx(self) -> nx.Graph:
        graph = nx.Graph()
        graph.add_nodes_from(range(self.node_count))
        graph.add_edges_from(self.edges)
        return graph

    def __str__(self) -> str:
        return f"Graph(n={self.node_count}, m={self.edge_count})"


@dataclass(frozen=True)
class OneFactor:
    """
    A matching: a set of node-disjoint edges.

    Edges are kept sorted by their smaller endpoint, which fixes the
    ancilla assignment of the layered edge detector.
    """

    edges: tuple[Edge, ...]

    def __post_init__(self) -> None:
        ordered = tuple(sorted(normalize_edge(a, b) for a, b in self.edges))
        object.__setattr__(self, "edges", ordered)
        seen: set[int] = set()
        for a, b in ordered:
            if a in seen or b in seen:
                raise ValueError(f"Edges of a 1-factor must be node-disjoint: {ordered}")
            seen.update((a, b))

    @property
    def nodes(self) -> frozenset[int]:
        return frozenset(node for edge in self.edges for node in edge)

    def __len__(self) -> int:
        return len(self.edges)

    def __iter__(self) -> Iterator[Edge]:
        return iter(self.edges)


@dataclass(frozen=True)
class EdgePartition:
    """
    An ordered list of matchings partitioning the edges of a graph.

    Attributes:
        node_count: Node count of the source graph
        classes: The matchings, in construction order
    """

    node_count: int
    classes: tuple[OneFactor, ...] = ()

    def edges(self) -> frozenset[Edge]:
        return frozenset(edge for factor in self.classes for edge in factor)

    def validate(self, graph: Optional[Graph] = None) -> list[str]:
        """
        Validate the partition invariants, optionally against a source graph.

        Returns:
            list: List of error messages (empty if valid)
        """
        errors = []
        seen: set[Edge] = set()
        for i, factor in enumerate(self.classes):
            overlap = seen.intersection(factor.edges)
            if overlap:
                errors.append(f"class {i}: edges {sorted(overlap)} already used by an earlier class")
            seen.update(factor.edges)
        if len(self.classes) > self.node_count:
            errors.append(f"classes: {len(self.classes)} exceeds node count {self.node_count}")
        if graph is not None and seen != graph.edges:
            errors.append("classes: union differs from the graph's edge set")
        return errors

    def __len__(self) -> int:
        return len(self.classes)

    def __iter__(self) -> Iterator[OneFactor]:
        return iter(self.classes)


@dataclass(frozen=True)
class AugmentedGraph:
    """
    A graph extended with q apex nodes adjacent to every other node.

    Apex nodes take the highest indices original_n .. original_n + q - 1.

    Attributes:
        graph: The augmented graph on original_n + q nodes
        q: Number of apex nodes
        original_n: Node count before augmentation
        k: Clique size the augmentation was built for
    """

    graph: Graph
    q: int
    original_n: int
    k: int

    @property
    def n_qubits(self) -> int:
        return self.original_n + self.q

    @property
    def apex_nodes(self) -> range:
        return range(self.original_n, self.n_qubits)

    @property
    def query_size(self) -> int:
        return self.k + self.q


def apex_count(k: int) -> int:
    """Smallest q >= 1 with k + q = 3 (mod 4)."""
    return (3 - k) % 4 or 4


def one_factorization(n: int) -> EdgePartition:
    """
    Round-robin 1-factorization of the complete graph K_n.

    Factor S_i holds the fixed edge {n-1, i} and the rotating pairs
    {(i - j) mod (n-1), (i + j) mod (n-1)} for j = 1 .. n/2 - 1.

    Args:
        n: Even positive node count

    Returns:
        EdgePartition: n - 1 perfect matchings S_0 .. S_{n-2}

    Raises:
        ValueError: If n is odd or not positive
    """
    if n < 2 or n % 2:
        raise ValueError(f"1-factorization needs an even node count >= 2, got {n}")

    modulus = n - 1
    factors = []
    for i in range(modulus):
        edges = [(n - 1, i)]
        edges.extend(((i - j) % modulus, (i + j) % modulus) for j in range(1, n // 2))
        factors.append(OneFactor(tuple(edges)))
    return EdgePartition(node_count=n, classes=tuple(factors))


def partition_edges(g: Graph) -> EdgePartition:
    """
    Partition the edges of g into matchings.

    An odd node count is padded with one phantom node; the factorization of
    the padded complete graph is restricted to g's edges and empty classes
    are dropped.

    Args:
        g: Any graph (edgeless allowed)

    Returns:
        EdgePartition: At most n' - 1 matchings whose union is g's edge set
    """
    padded = g.node_count + (g.node_count % 2)
    if padded < 2 or not g.edges:
        return EdgePartition(node_count=g.node_count)

    classes = []
    for factor in one_factorization(padded):
        kept = tuple(edge for edge in factor if edge in g.edges)
        if kept:
            classes.append(OneFactor(kept))
    logger.debug(f"Partitioned {g} into {len(classes)} classes")
    return EdgePartition(node_count=g.node_count, classes=tuple(classes))


def list_k_cliques(g: Graph, k: int) -> list[tuple[int, ...]]:
    """
    Enumerate every k-clique of g.

    Args:
        g: The graph
        k: Clique size, 1 <= k <= node_count

    Returns:
        list: Sorted node tuples, in lexicographic order

    Raises:
        ValueError: If k is out of range
    """
    if not 1 <= k <= g.node_count:
        raise ValueError(f"k must be in 1..{g.node_count}, got {k}")

    cliques = []
    # enumerate_all_cliques yields cliques in non-decreasing size
    for clique in nx.enumerate_all_cliques(g.to_networkx()):
        if len(clique) > k:
            break
        if len(clique) == k:
            cliques.append(tuple(sorted(clique)))
    return sorted(cliques)


def random_induced_subgraph(g: Graph, n: int, seed: Seed = None) -> Graph:
    """
    Draw n distinct nodes uniformly at random and return their induced subgraph.

    Args:
        g: Source graph
        n: Number of nodes to draw
        seed: Seed or SeedSequence; equal seeds give equal subgraphs

    Returns:
        Graph: Induced subgraph relabeled 0 .. n-1, original ids in ``labels``

    Raises:
        ValueError: If n exceeds the source node count
    """
    if not 0 <= n <= g.node_count:
        raise ValueError(f"Cannot draw {n} nodes from a graph with {g.node_count} nodes")
    rng = np.random.default_rng(seed)
    nodes = rng.choice(g.node_count, size=n, replace=False)
    return g.induced(int(node) for node in nodes)


def augment_apex(g: Graph, k: int) -> AugmentedGraph:
    """
    Append q apex nodes so that k + q = 3 (mod 4) and q >= 1.

    A (k+q)-clique of the result that contains every apex node corresponds
    exactly to a k-clique of g.

    Args:
        g: Original graph
        k: Clique size searched for, 1 <= k <= node_count

    Returns:
        AugmentedGraph: The augmented graph and its parameters

    Raises:
        ValueError: If k is out of range
    """
    if not 1 <= k <= g.node_count:
        raise ValueError(f"k must be in 1..{g.node_count}, got {k}")

    q = apex_count(k)
    total = g.node_count + q
    apex_edges = {
        normalize_edge(apex, other)
        for apex in range(g.node_count, total)
        for other in range(total)
        if other != apex
    }
    graph = Graph(node_count=total, edges=g.edges | apex_edges)
    return AugmentedGraph(graph=graph, q=q, original_n=g.node_count, k=k)
