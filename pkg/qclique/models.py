"""
qclique - Data Models

Data models for benchmark configuration, per-instance records and reports.
"""

from dataclasses import dataclass, asdict, field, fields
from typing import Optional, Any

SCHEMA_VERSION = 1
ORACLES = ("gamma", "exact")


@dataclass
class ExperimentConfig:
    """
    Parameters of one benchmark cell.

    Attributes:
        graph: Edge-list path, or "synthetic:<density|preset>[:<n_total>]"
        n: Nodes per induced subgraph
        k: Clique size searched for
        instances: Number of subgraphs drawn
        shots: Samples per iteration count
        top_window: Most frequent outcomes inspected for a clique
        seed: Root seed; instance seeds are derived from it
        oracle: "gamma", or "exact" for the marking baseline
        n_total: Node count of synthetic source graphs
        one_based: Edge-list node ids start at 1
        header: Edge list starts with a node/edge count line
    """

    graph: str = "synthetic:0.5"
    n: int = 6
    k: int = 3
    instances: int = 100
    shots: int = 1000
    top_window: int = 10
    seed: int = 0
    oracle: str = "gamma"
    n_total: int = 100
    one_based: bool = False
    header: bool = False

    def to_dict(self) -> dict[str, Any]:
        """
        Convert config to dictionary.

        Returns:
            dict: The config as a dict (for JSON serialization)
        """
        return asdict(self)

    @classmethod
    def from_dict(cls, data: dict[str, Any]) -> "ExperimentConfig":
        """
        Create config from dictionary, ignoring unknown keys.

        Args:
            data: Dictionary representation of a config

        Returns:
            ExperimentConfig: A new config instance
        """
        known = {f.name for f in fields(cls)}
        return cls(**{key: value for key, value in data.items() if key in known})

    def validate(self) -> list[str]:
        """
        Validate the config.

        Returns:
            list: List of error messages (empty if valid)
        """
        errors = []
        for f in fields(self):
            value = getattr(self, f.name)
            expected = f.type
            # bool is an int subclass
            if not isinstance(value, expected) or (expected is int and isinstance(value, bool)):
                errors.append(f"{f.name}: expected {expected.__name__}, got {type(value).__name__} {value!r}")
        if errors:
            return errors

        if not self.graph:
            errors.append("graph: This field is required")
        if self.n < 1:
            errors.append(f"n: must be positive, got {self.n}")
        if not 1 <= self.k <= self.n:
            errors.append(f"k: must be in 1..n, got {self.k}")
        if self.instances < 0:
            errors.append(f"instances: must be non-negative, got {self.instances}")
        if not self.shots >= self.top_window >= 1:
            errors.append(f"shots/top_window: need shots >= top_window >= 1, got {self.shots}/{self.top_window}")
        if self.oracle not in ORACLES:
            errors.append(f"oracle: must be one of {ORACLES}, got {self.oracle!r}")
        return errors


@dataclass
class ExperimentRecord:
    """
    Outcome of one clique-containing instance.

    Attributes:
        instance_id: Position of the instance among the draws
        node_ids: Source-graph ids of the subgraph's nodes
        clique_count: Number of k-cliques M, found classically
        gamma_iterations: First successful iteration count, None on failure
        baseline_iterations: Optimal exact-oracle iteration count for M solutions
        success: A k-clique was among the top outcomes within the cap
        ratio: gamma_iterations / baseline_iterations, None on failure
        found_clique: The clique seen (subgraph node ids), None on failure
    """

    instance_id: int
    node_ids: list[int] = field(default_factory=list)
    clique_count: int = 0
    gamma_iterations: Optional[int] = None
    baseline_iterations: int = 1
    success: bool = False
    ratio: Optional[float] = None
    found_clique: Optional[list[int]] = None

    def to_dict(self) -> dict[str, Any]:
        return asdict(self)

    @classmethod
    def from_dict(cls, data: dict[str, Any]) -> "ExperimentRecord":
        return cls(**data)

    def validate(self, iteration_cap: Optional[int] = None) -> list[str]:
        """
        Validate the record, optionally against the iteration cap.

        Returns:
            list: List of error messages (empty if valid)
        """
        errors = []
        if self.success and self.gamma_iterations is None:
            errors.append("gamma_iterations: required for a success")
        if (self.success and iteration_cap is not None and self.gamma_iterations is not None
                and self.gamma_iterations > iteration_cap):
            errors.append(f"gamma_iterations: {self.gamma_iterations} exceeds the cap {iteration_cap}")
        if self.ratio is not None and self.ratio <= 0:
            errors.append(f"ratio: must be positive, got {self.ratio}")
        if self.clique_count < 1:
            errors.append("clique_count: records are only kept for clique-containing instances")
        return errors


@dataclass
class CellSummary:
    """
    Aggregate over one (n, k) cell, shaped like a row of the results table.

    Attributes:
        graph: Graph source
        n: Subgraph size
        k: Clique size
        qubits: Simulated width
        instances: Subgraphs drawn
        cliqueful: Subgraphs with at least one k-clique
        successes: Successful searches
        success_rate: successes / cliqueful, None when no instance had a clique
        geometric_mean_ratio: Geometric mean of the ratios of successful instances
    """

    graph: str
    n: int
    k: int
    qubits: int
    instances: int
    cliqueful: int
    successes: int
    success_rate: Optional[float] = None
    geometric_mean_ratio: Optional[float] = None

    def to_dict(self) -> dict[str, Any]:
        return asdict(self)

    @classmethod
    def from_dict(cls, data: dict[str, Any]) -> "CellSummary":
        return cls(**data)

    def __str__(self) -> str:
        rate = "n/a" if self.success_rate is None else f"{self.success_rate:.0%}"
        ratio = "n/a" if self.geometric_mean_ratio is None else f"{self.geometric_mean_ratio:.3f}"
        return (f"n={self.n} k={self.k} qubits={self.qubits} graph={self.graph} "
                f"generated={self.instances} cliqueful={self.cliqueful} "
                f"successes={self.successes} ({rate}) ratio_gmean={ratio}")


@dataclass
class ExperimentReport:
    """
    A benchmark report: the config echo and one summary per cell.
    """

    config: ExperimentConfig
    cells: list[CellSummary] = field(default_factory=list)
    schema_version: int = SCHEMA_VERSION

    def to_dict(self) -> dict[str, Any]:
        return {
            "schema_version": self.schema_version,
            "config": self.config.to_dict(),
            "cells": [cell.to_dict() for cell in self.cells],
        }

    @classmethod
    def from_dict(cls, data: dict[str, Any]) -> "ExperimentReport":
        return cls(
            config=ExperimentConfig.from_dict(data["config"]),
            cells=[CellSummary.from_dict(cell) for cell in data.get("cells", [])],
            schema_version=data.get("schema_version", SCHEMA_VERSION),
        )
