"""
qclique - Benchmark Module

Graph ingestion, instance generation and the clique-search benchmark:
random induced subgraphs are searched with Gamma (or the exact marking
oracle) under amplitude amplification, and each success is compared with
the optimal iteration count of an exact oracle.
"""

from pathlib import Path
from typing import Iterable, Optional, Union
import csv
import io
import json
import logging

import numpy as np

from qclique.amplification import (
    AASchedule,
    SearchSpaceSpec,
    amplify,
    build_search_prep,
    optimal_iterations,
)
from qclique.graphs import AugmentedGraph, Graph, Seed, augment_apex, list_k_cliques, random_induced_subgraph
from qclique.models import (
    SCHEMA_VERSION,
    CellSummary,
    ExperimentConfig,
    ExperimentRecord,
    ExperimentReport,
)
from qclique.oracles import build_exact_marking_oracle, build_gamma
from qclique.simulator import check_capacity, sample_register

logger = logging.getLogger(__name__)

SYNTHETIC_PREFIX = "synthetic:"
DEFAULT_SYNTHETIC_NODES = 100
# Largest node count an edge list may declare or imply
MAX_EDGE_LIST_NODES = 1_000_000

# Densities of the two brain-connectome graphs the synthetic sources stand in for
DENSITY_PRESETS = {
    "macaque": 0.486,
    "mouse": 0.998,
}

RECORD_COLUMNS = [
    "instance_id",
    "node_ids",
    "clique_count",
    "gamma_iterations",
    "baseline_iterations",
    "success",
    "ratio",
    "found_clique",
]


class EdgeListParseError(ValueError):
    """Raised when an edge-list line cannot be parsed."""

    def __init__(self, path: Union[str, Path], line_number: int, message: str):
        self.path = str(path)
        self.line_number = line_number
        super().__init__(f"{path}:{line_number}: {message}")


def read_edge_list(path: Union[str, Path], one_based: bool = False,
                   header: bool = False) -> tuple[Graph, dict[str, int]]:
    """
    Parse a whitespace-separated edge list.

    Lines starting with '%' or '#' are comments. Columns after the first two
    (weights, timestamps) are ignored. Self-loops and repeated edges are
    dropped and counted.

    Args:
        path: Edge-list file
        one_based: Node ids start at 1
        header: The first data line holds the node count (further numbers ignored)

    Returns:
        tuple: The graph and a dict with 'edges', 'self_loops' and 'duplicates' counts

    Raises:
        OSError: If the file cannot be read
        EdgeListParseError: On a malformed line or an id outside the declared (or maximum) node count
    """
    file_path = Path(path)
    try:
        lines = file_path.read_text(encoding="utf-8").splitlines()
    except OSError as e:
        raise OSError(f"Failed to read edge list {file_path}: {e}") from e

    offset = 1 if one_based else 0
    declared: Optional[int] = None
    edges: set[tuple[int, int]] = set()
    stats = {"edges": 0, "self_loops": 0, "duplicates": 0}
    highest = -1

    for line_number, line in enumerate(lines, start=1):
        stripped = line.strip()
        if not stripped or stripped[0] in "%#":
            continue
        tokens = stripped.split()
        try:
            numbers = [int(token) for token in tokens[:2]]
        except ValueError:
            raise EdgeListParseError(file_path, line_number, f"expected integer node ids, got {stripped!r}")

        if header and declared is None:
            declared = numbers[0]
            if not 0 <= declared <= MAX_EDGE_LIST_NODES:
                raise EdgeListParseError(
                    file_path, line_number, f"node count {declared} outside 0..{MAX_EDGE_LIST_NODES}"
                )
            continue
        if len(numbers) < 2:
            raise EdgeListParseError(file_path, line_number, f"expected 'u v', got {stripped!r}")

        a, b = numbers[0] - offset, numbers[1] - offset
        for node in (a, b):
            if node < 0 or node >= (MAX_EDGE_LIST_NODES if declared is None else declared):
                limit = f" (limit {MAX_EDGE_LIST_NODES} nodes)" if declared is None else f" (declared node count {declared})"
                raise EdgeListParseError(file_path, line_number, f"node id {node + offset} out of range{limit}")
        if a == b:
            stats["self_loops"] += 1
            continue
        edge = (a, b) if a < b else (b, a)
        if edge in edges:
            stats["duplicates"] += 1
            continue
        edges.add(edge)
        highest = max(highest, b if b > a else a)

    node_count = declared if declared is not None else highest + 1
    stats["edges"] = len(edges)
    return Graph.from_edges(node_count, edges), stats


def load_edge_list(path: Union[str, Path], one_based: bool = False, header: bool = False) -> Graph:
    """
    Load an edge list, logging a warning for dropped self-loops and duplicates.

    See read_edge_list for the accepted format and the errors raised.
    """
    graph, stats = read_edge_list(path, one_based=one_based, header=header)
    dropped = stats["self_loops"] + stats["duplicates"]
    if dropped:
        logger.warning(
            f"Dropped {dropped} edges from {path}: "
            f"{stats['self_loops']} self-loops, {stats['duplicates']} duplicates"
        )
    logger.info(f"Loaded {graph} from {path}")
    return graph


def generate_synthetic(n_total: int, density: float, seed: Seed = None) -> Graph:
    """
    Random graph with every possible edge present independently with probability ``density``.

    Raises:
        ValueError: If density is outside [0, 1] or n_total is negative
    """
    if not 0.0 <= density <= 1.0:
        raise ValueError(f"density must be in [0, 1], got {density}")
    if n_total < 0:
        raise ValueError(f"n_total must be non-negative, got {n_total}")
    rng = np.random.default_rng(seed)
    rows, cols = np.triu_indices(n_total, k=1)
    keep = rng.random(rows.size) < density
    return Graph.from_edges(n_total, zip(rows[keep].tolist(), cols[keep].tolist()))


def parse_synthetic_source(source: str) -> tuple[float, int]:
    """
    Parse "synthetic:<density|preset>[:<n_total>]".

    Returns:
        tuple: (density, n_total); n_total is 0 when not given

    Raises:
        ValueError: If the source is not a synthetic source or is malformed
    """
    if not source.startswith(SYNTHETIC_PREFIX):
        raise ValueError(f"Not a synthetic graph source: {source!r}")
    parts = source[len(SYNTHETIC_PREFIX):].split(":")
    if not 1 <= len(parts) <= 2 or not parts[0]:
        raise ValueError(f"Expected synthetic:<density>[:<n_total>], got {source!r}")
    try:
        density = DENSITY_PRESETS[parts[0]] if parts[0] in DENSITY_PRESETS else float(parts[0])
        n_total = int(parts[1]) if len(parts) == 2 else 0
    except ValueError:
        raise ValueError(f"Expected synthetic:<density>[:<n_total>], got {source!r}")
    return density, n_total


def load_graph_source(source: str, seed: int = 0, n_total: int = DEFAULT_SYNTHETIC_NODES,
                      one_based: bool = False, header: bool = False) -> Graph:
    """
    Build a synthetic graph or load an edge-list file.

    Synthetic graphs are drawn from the seed, so equal arguments give equal graphs.

    Args:
        source: Edge-list path, or "synthetic:<density|preset>[:<n_total>]"
        seed: Seed of the synthetic draw
        n_total: Node count when the synthetic source does not give one
        one_based: Edge-list node ids start at 1
        header: Edge list starts with a node count line
    """
    if source.startswith(SYNTHETIC_PREFIX):
        density, nodes = parse_synthetic_source(source)
        graph = generate_synthetic(nodes or n_total, density, np.random.SeedSequence([seed, 0]))
        logger.info(f"Generated synthetic {graph} at density {density}")
        return graph
    return load_edge_list(source, one_based=one_based, header=header)


def resolve_graph(cfg: ExperimentConfig) -> Graph:
    """Build or load the source graph named by the config."""
    return load_graph_source(cfg.graph, cfg.seed, cfg.n_total or DEFAULT_SYNTHETIC_NODES,
                             cfg.one_based, cfg.header)


def decode_outcome(bitstring: str, ag: AugmentedGraph) -> Optional[tuple[int, ...]]:
    """
    Decode a sampled idx bitstring (highest qubit first) into original nodes.

    Returns:
        tuple: The original-graph nodes that are set, or None when an apex bit is 0
    """
    value = int(bitstring, 2)
    if any(not (value >> apex) & 1 for apex in ag.apex_nodes):
        return None
    return tuple(node for node in range(ag.original_n) if (value >> node) & 1)


def geometric_mean(ratios: Iterable[float]) -> Optional[float]:
    """
    exp(mean(log x)); None for an empty input.

    Raises:
        ValueError: If any input is not positive
    """
    values = np.asarray(sorted(ratios), dtype=float)
    if values.size == 0:
        return None
    if np.any(values <= 0):
        raise ValueError(f"Geometric mean needs positive inputs, got {values[values <= 0].tolist()}")
    return float(np.exp(np.mean(np.log(values))))


def run_instance(source: Graph, cfg: ExperimentConfig, instance_id: int,
                 seed: np.random.SeedSequence) -> Optional[ExperimentRecord]:
    """
    Draw one induced subgraph and search it for a k-clique.

    The iteration count is swept t = 1, 2, ... up to the cap; the search
    succeeds at the first t whose top_window most frequent idx outcomes
    contain a k-clique of the subgraph, checked classically.

    Returns:
        ExperimentRecord: The outcome, or None when the subgraph has no k-clique
    """
    subgraph_seed, sampling_seed = seed.spawn(2)
    sub = random_induced_subgraph(source, cfg.n, subgraph_seed)
    cliques = list_k_cliques(sub, cfg.k)
    node_ids = [sub.original_label(node) for node in range(sub.node_count)]
    if not cliques:
        logger.debug(f"Instance {instance_id} has no {cfg.k}-clique, skipping")
        return None

    ag = augment_apex(sub, cfg.k)
    spec = SearchSpaceSpec.from_augmented(ag)
    schedule = AASchedule.for_spec(spec, cfg.shots)
    cap = schedule.max_iterations
    baseline = optimal_iterations(spec.search_space_size, len(cliques))

    if cfg.oracle == "exact":
        prep = build_search_prep(spec, ancillas=False)
        oracle = build_exact_marking_oracle(ag, cfg.k)
    else:
        prep = build_search_prep(spec, ancillas=True)
        oracle = build_gamma(ag)

    idx = prep.register("idx")
    rng = np.random.default_rng(sampling_seed)
    record = ExperimentRecord(
        instance_id=instance_id,
        node_ids=node_ids,
        clique_count=len(cliques),
        baseline_iterations=baseline,
    )
    for t, state in amplify(prep, oracle, cap):
        if t == 0:
            continue
        histogram = sample_register(state, idx, schedule.shots, rng)
        for bitstring, _ in histogram.most_common(cfg.top_window):
            nodes = decode_outcome(bitstring, ag)
            if nodes is not None and len(nodes) == cfg.k and sub.is_clique(nodes):
                record.success = True
                record.gamma_iterations = t
                record.ratio = t / baseline
                record.found_clique = list(nodes)
                break
        if record.success:
            break

    if record.success:
        logger.info(f"Instance {instance_id}: found {record.found_clique} at t={record.gamma_iterations}")
    else:
        logger.info(f"Instance {instance_id}: no {cfg.k}-clique within {cap} iterations")
    return record


def summarize(cfg: ExperimentConfig, records: list[ExperimentRecord]) -> CellSummary:
    """Aggregate records into one (n, k) cell."""
    spec = SearchSpaceSpec.for_clique(cfg.n, cfg.k)
    qubits = spec.total_qubits if cfg.oracle == "gamma" else spec.n_qubits
    successes = [r for r in records if r.success]
    ratios = [r.ratio for r in successes if r.ratio is not None]
    return CellSummary(
        graph=cfg.graph,
        n=cfg.n,
        k=cfg.k,
        qubits=qubits,
        instances=cfg.instances,
        cliqueful=len(records),
        successes=len(successes),
        success_rate=len(successes) / len(records) if records else None,
        geometric_mean_ratio=geometric_mean(ratios),
    )


def run_benchmark(cfg: ExperimentConfig) -> tuple[ExperimentReport, list[ExperimentRecord]]:
    """
    Run one benchmark cell.

    Args:
        cfg: Experiment configuration

    Returns:
        tuple: The report and the records of clique-containing instances, by instance id

    Raises:
        ValueError: If the config is invalid or n exceeds the source graph
        ResourceLimitError: If the simulated width is not allowed, before any simulation
        OSError: If the graph file cannot be read
    """
    errors = cfg.validate()
    if errors:
        raise ValueError(f"Invalid experiment config: {', '.join(errors)}")

    spec = SearchSpaceSpec.for_clique(cfg.n, cfg.k)
    check_capacity(spec.total_qubits if cfg.oracle == "gamma" else spec.n_qubits)

    source = resolve_graph(cfg)
    if cfg.n > source.node_count:
        raise ValueError(f"Cannot draw {cfg.n}-node subgraphs from {source}")

    logger.info(f"Benchmark n={cfg.n} k={cfg.k} oracle={cfg.oracle} instances={cfg.instances}")
    records = []
    for instance_id, seed in enumerate(np.random.SeedSequence(cfg.seed).spawn(cfg.instances)):
        record = run_instance(source, cfg, instance_id, seed)
        if record is not None:
            records.append(record)

    records.sort(key=lambda r: r.instance_id)
    report = ExperimentReport(config=cfg, cells=[summarize(cfg, records)])
    logger.info(f"Benchmark finished: {report.cells[0]}")
    return report, records


def _csv_value(value: object) -> str:
    if value is None:
        return ""
    if isinstance(value, list):
        return " ".join(str(v) for v in value)
    return repr(value) if isinstance(value, float) else str(value)


def format_records_csv(records: list[ExperimentRecord]) -> str:
    """Render records as CSV text, one row per record under a RECORD_COLUMNS header."""
    buffer = io.StringIO()
    writer = csv.DictWriter(buffer, fieldnames=RECORD_COLUMNS, lineterminator="\n")
    writer.writeheader()
    writer.writerows(
        {column: _csv_value(getattr(record, column)) for column in RECORD_COLUMNS}
        for record in records
    )
    return buffer.getvalue()


def export_report(report: ExperimentReport, records: list[ExperimentRecord],
                  path: Union[str, Path], fmt: str = "json") -> Path:
    """
    Write a report as JSON (config, cells and records) or CSV (one row per record).

    Returns:
        Path: The file written

    Raises:
        ValueError: If the format is unknown
        OSError: If the file cannot be written
    """
    file_path = Path(path)
    if fmt == "json":
        document = report.to_dict()
        document["records"] = [record.to_dict() for record in records]
        text = json.dumps(document, indent=2) + "\n"
    elif fmt == "csv":
        text = format_records_csv(records)
    else:
        raise ValueError(f"Unknown report format {fmt!r}, expected json or csv")

    try:
        file_path.write_text(text, encoding="utf-8")
    except OSError as e:
        raise OSError(f"Failed to write report to {file_path}: {e}") from e

    logger.info(f"Wrote {fmt} report with {len(records)} records to {file_path}")
    return file_path


def read_report(path: Union[str, Path]) -> tuple[ExperimentReport, list[ExperimentRecord]]:
    """
    Read a JSON report written by export_report.

    Raises:
        OSError: If the file cannot be read
        ValueError: If the schema version is not supported
    """
    file_path = Path(path)
    try:
        document = json.loads(file_path.read_text(encoding="utf-8"))
    except OSError as e:
        raise OSError(f"Failed to read report {file_path}: {e}") from e
    if document.get("schema_version") != SCHEMA_VERSION:
        raise ValueError(f"{file_path}: unsupported schema version {document.get('schema_version')!r}")
    records = [ExperimentRecord.from_dict(r) for r in document.get("records", [])]
    return ExperimentReport.from_dict(document), records


def _optional(text: str, cast):
    return cast(text) if text != "" else None


def _node_list(text: str) -> list[int]:
    return [int(token) for token in text.split()]


def read_records_csv(path: Union[str, Path]) -> list[ExperimentRecord]:
    """
    Read the records of a CSV report written by export_report.

    Raises:
        OSError: If the file cannot be read
    """
    file_path = Path(path)
    try:
        with file_path.open(encoding="utf-8", newline="") as f:
            rows = list(csv.DictReader(f))
    except OSError as e:
        raise OSError(f"Failed to read records {file_path}: {e}") from e

    return [
        ExperimentRecord(
            instance_id=int(row["instance_id"]),
            node_ids=_node_list(row["node_ids"]),
            clique_count=int(row["clique_count"]),
            gamma_iterations=_optional(row["gamma_iterations"], int),
            baseline_iterations=int(row["baseline_iterations"]),
            success=row["success"] == "True",
            ratio=_optional(row["ratio"], float),
            found_clique=_optional(row["found_clique"], _node_list),
        )
        for row in rows
    ]


def gamma_qubit_count(n: int, k: int) -> int:
    """Width of the Gamma search for a k-clique among n nodes, 2(n + q) + 2."""
    return SearchSpaceSpec.for_clique(n, k).total_qubits
