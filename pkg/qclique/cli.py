"""
qclique - CLI Module

Command-line interface for building, verifying, simulating and
benchmarking the clique-search circuits.
"""

from enum import Enum
from pathlib import Path
from typing import Any, NoReturn, Optional
import json
import logging

import typer

from qclique.amplification import SearchSpaceSpec, build_dicke_prep, build_search_prep, optimal_iterations, run_aa
from qclique.benchmark import (
    DEFAULT_SYNTHETIC_NODES,
    decode_outcome,
    export_report,
    format_records_csv,
    load_graph_source,
    run_benchmark,
)
from qclique.circuit import Circuit, depth, dump_circuit
from qclique.config import get_config
from qclique.graphs import EdgePartition, Graph, augment_apex, list_k_cliques, one_factorization, partition_edges
from qclique.models import ExperimentConfig
from qclique.oracles import (
    build_alpha,
    build_edge_detector,
    build_edge_detector_naive,
    build_exact_marking_oracle,
    build_gamma,
    build_input_preparator,
)
from qclique.simulator import ResourceLimitError
from qclique.verify import SUITES, run_suite

app = typer.Typer(
    name="qclique",
    help="Clique-search circuits built from 1-factorizations, with a statevector simulator",
    add_completion=False,
)

logger = logging.getLogger(__name__)

EXIT_FAILURE = 1
EXIT_USAGE = 2


class OutputFormat(str, Enum):
    text = "text"
    json = "json"
    csv = "csv"


class CircuitKind(str, Enum):
    edge_detector = "edge-detector"
    edge_detector_naive = "edge-detector-naive"
    alpha = "alpha"
    input_preparator = "input-preparator"
    gamma = "gamma"
    exact = "exact"
    dicke = "dicke"
    search_prep = "search-prep"


def _fail(message: str, code: int = EXIT_USAGE) -> NoReturn:
    logger.error(message)
    typer.echo(f"Error: {message}", err=True)
    raise typer.Exit(code)


def _emit(text: str, out: Optional[Path]) -> None:
    """Print text, or write it to a file when --out is given."""
    if out is None:
        typer.echo(text, nl=not text.endswith("\n"))
        return
    try:
        out.write_text(text if text.endswith("\n") else text + "\n", encoding="utf-8")
    except OSError as e:
        _fail(f"Failed to write {out}: {e}", EXIT_FAILURE)
    typer.echo(f"Wrote {out}")


def _seed(seed: Optional[int]) -> int:
    return get_config().get_default_seed() if seed is None else seed


def _format_partition(partition: EdgePartition, fmt: OutputFormat) -> str:
    classes = [[list(edge) for edge in factor] for factor in partition]
    if fmt == OutputFormat.json:
        return json.dumps({"node_count": partition.node_count, "classes": classes})
    if fmt == OutputFormat.csv:
        rows = ["class,a,b"] + [f"{i},{a},{b}" for i, factor in enumerate(classes) for a, b in factor]
        return "\n".join(rows)
    return "\n".join(" ".join(f"{a}-{b}" for a, b in factor) for factor in classes)


def _load(graph: str, seed: int, n_total: int, one_based: bool, header: bool) -> Graph:
    try:
        return load_graph_source(graph, seed, n_total, one_based, header)
    except OSError as e:
        _fail(str(e))
    except ValueError as e:
        _fail(f"Cannot read graph {graph}: {e}")


# Shared option declarations
GRAPH_OPTION = typer.Option(..., "--graph", "-g", help="Edge-list path or synthetic:<density|preset>[:<n_total>]")
SEED_OPTION = typer.Option(None, "--seed", "-s", help="Random seed (default: QCLIQUE_SEED)")
OUT_OPTION = typer.Option(None, "--out", "-o", help="Write output to this file instead of stdout")
ONE_BASED_OPTION = typer.Option(False, "--one-based", help="Edge-list node ids start at 1")
HEADER_OPTION = typer.Option(False, "--header", help="Edge list starts with a node count line")
N_TOTAL_OPTION = typer.Option(DEFAULT_SYNTHETIC_NODES, "--n-total", help="Node count of synthetic graphs")


@app.command()
def factorize(
    n: int = typer.Option(..., "--n", "-n", help="Even node count of the complete graph"),
    out: Optional[Path] = OUT_OPTION,
    fmt: OutputFormat = typer.Option(OutputFormat.text, "--format", "-f", help="Output format"),
):
    """
    Print the round-robin 1-factorization of K_n, one factor per line.
    """
    try:
        partition = one_factorization(n)
    except ValueError as e:
        _fail(f"{e}. K_n has a 1-factorization only for even n")
    _emit(_format_partition(partition, fmt), out)


@app.command()
def partition(
    graph: str = GRAPH_OPTION,
    seed: Optional[int] = SEED_OPTION,
    out: Optional[Path] = OUT_OPTION,
    fmt: OutputFormat = typer.Option(OutputFormat.text, "--format", "-f", help="Output format"),
    n_total: int = N_TOTAL_OPTION,
    one_based: bool = ONE_BASED_OPTION,
    header: bool = HEADER_OPTION,
):
    """
    Partition the edges of a graph into matchings, one class per line.
    """
    g = _load(graph, _seed(seed), n_total, one_based, header)
    _emit(_format_partition(partition_edges(g), fmt), out)


def _build(kind: CircuitKind, g: Optional[Graph], n: Optional[int], k: Optional[int]) -> Circuit:
    if kind in (CircuitKind.input_preparator, CircuitKind.dicke):
        size = n if n is not None else (g.node_count if g is not None else None)
        if size is None:
            raise ValueError(f"{kind.value} needs --n or --graph")
        if kind == CircuitKind.input_preparator:
            return build_input_preparator(size)
        if k is None:
            raise ValueError("dicke needs --k")
        return build_dicke_prep(size, k)

    if g is None:
        raise ValueError(f"{kind.value} needs --graph")
    if kind == CircuitKind.edge_detector:
        return build_edge_detector(g)
    if kind == CircuitKind.edge_detector_naive:
        return build_edge_detector_naive(g)
    if kind == CircuitKind.alpha:
        return build_alpha(g)
    if k is None:
        raise ValueError(f"{kind.value} needs --k")
    ag = augment_apex(g, k)
    if kind == CircuitKind.gamma:
        return build_gamma(ag)
    if kind == CircuitKind.exact:
        return build_exact_marking_oracle(ag, k)
    return build_search_prep(SearchSpaceSpec.from_augmented(ag))


@app.command()
def build(
    kind: CircuitKind = typer.Argument(..., help="Circuit to build"),
    graph: Optional[str] = typer.Option(None, "--graph", "-g", help="Edge-list path or synthetic:<density>[:<n_total>]"),
    n: Optional[int] = typer.Option(None, "--n", "-n", help="Width for input-preparator and dicke"),
    k: Optional[int] = typer.Option(None, "--k", "-k", help="Clique size (gamma, exact, search-prep) or Hamming weight (dicke)"),
    seed: Optional[int] = SEED_OPTION,
    out: Optional[Path] = OUT_OPTION,
    fmt: OutputFormat = typer.Option(OutputFormat.text, "--format", "-f", help="text dumps the gates; json reports depth"),
    n_total: int = N_TOTAL_OPTION,
    one_based: bool = ONE_BASED_OPTION,
    header: bool = HEADER_OPTION,
):
    """
    Build a circuit and print its gates or its depth report.
    """
    g = _load(graph, _seed(seed), n_total, one_based, header) if graph else None
    try:
        circuit = _build(kind, g, n, k)
    except ValueError as e:
        _fail(str(e))

    if fmt == OutputFormat.text:
        _emit(dump_circuit(circuit), out)
        return
    report = depth(circuit)
    if fmt == OutputFormat.json:
        document = {
            "circuit": kind.value,
            "qubits": circuit.qubit_count,
            "registers": {r.name: [r.start, r.size] for r in circuit.registers},
            "depth": report.to_dict(),
        }
        _emit(json.dumps(document, indent=2), out)
    else:
        _emit(f"qubits,layers,weighted_depth,physical\n"
              f"{circuit.qubit_count},{report.layer_count},{report.weighted_depth},{report.physical}", out)


@app.command()
def verify(
    suite: str = typer.Argument(..., help=f"Suite to run: {', '.join(SUITES)} or all"),
    max_n: Optional[int] = typer.Option(None, "--max-n", help="Largest n swept by the suite"),
    seed: Optional[int] = SEED_OPTION,
    out: Optional[Path] = OUT_OPTION,
    fmt: OutputFormat = typer.Option(OutputFormat.text, "--format", "-f", help="text or json summary"),
):
    """
    Run invariant suites; exits 0 only if every check passes.
    """
    names = list(SUITES) if suite == "all" else [suite]
    if any(name not in SUITES for name in names):
        _fail(f"Unknown suite {suite!r}. Available suites: {', '.join(SUITES)}, all")

    results = [run_suite(name, max_n=max_n, seed=_seed(seed)) for name in names]
    if fmt == OutputFormat.json:
        _emit(json.dumps([r.to_dict() for r in results], indent=2), out)
    else:
        lines = []
        for result in results:
            lines.append(str(result))
            lines.extend(f"  {failure}" for failure in result.failures)
            lines.extend(f"  skipped: {message}" for message in result.skipped)
        _emit("\n".join(lines), out)

    if not all(r.passed for r in results):
        raise typer.Exit(EXIT_FAILURE)


@app.command()
def simulate(
    graph: str = GRAPH_OPTION,
    k: int = typer.Option(..., "--k", "-k", help="Clique size"),
    iterations: Optional[int] = typer.Option(None, "--t", "-t", help="AA iterations (default: optimal for the true clique count)"),
    oracle: str = typer.Option("gamma", "--oracle", help="gamma or exact"),
    shots: Optional[int] = typer.Option(None, "--shots", help="Samples (default: QCLIQUE_SHOTS)"),
    top: int = typer.Option(10, "--top", help="Outcomes to show"),
    seed: Optional[int] = SEED_OPTION,
    out: Optional[Path] = OUT_OPTION,
    fmt: OutputFormat = typer.Option(OutputFormat.text, "--format", "-f", help="Output format"),
    n_total: int = N_TOTAL_OPTION,
    one_based: bool = ONE_BASED_OPTION,
    header: bool = HEADER_OPTION,
):
    """
    Search a whole (small) graph for a k-clique and print the most frequent outcomes.
    """
    seed = _seed(seed)
    shots = get_config().get_default_shots() if shots is None else shots
    g = _load(graph, seed, n_total, one_based, header)
    if oracle not in ("gamma", "exact"):
        _fail(f"Unknown oracle {oracle!r}, expected gamma or exact")

    try:
        ag = augment_apex(g, k)
        spec = SearchSpaceSpec.from_augmented(ag)
        cliques = list_k_cliques(g, k)
        t = iterations if iterations is not None else optimal_iterations(spec.search_space_size, max(1, len(cliques)))
        if oracle == "gamma":
            histogram = run_aa(build_search_prep(spec), build_gamma(ag), t, shots, seed)
        else:
            histogram = run_aa(build_search_prep(spec, ancillas=False), build_exact_marking_oracle(ag, k), t, shots, seed)
    except ResourceLimitError as e:
        _fail(str(e), EXIT_FAILURE)
    except ValueError as e:
        _fail(str(e))

    rows: list[dict[str, Any]] = []
    for bitstring, count in histogram.most_common(top):
        nodes = decode_outcome(bitstring, ag)
        clique = nodes is not None and len(nodes) == k and g.is_clique(nodes)
        rows.append({"bitstring": bitstring, "count": count,
                     "nodes": list(nodes) if nodes is not None else None, "clique": clique})

    if fmt == OutputFormat.json:
        document = {"k": k, "t": t, "shots": shots, "clique_count": len(cliques), "outcomes": rows}
        _emit(json.dumps(document, indent=2), out)
    elif fmt == OutputFormat.csv:
        lines = ["bitstring,count,nodes,clique"]
        lines.extend(
            f"{r['bitstring']},{r['count']},{' '.join(map(str, r['nodes'] or []))},{r['clique']}" for r in rows
        )
        _emit("\n".join(lines), out)
    else:
        lines = [f"{g}, k={k}, {len(cliques)} cliques, t={t}, shots={shots}"]
        for r in rows:
            marker = "  clique" if r["clique"] else ""
            lines.append(f"{r['bitstring']} {r['count']:>6} {r['nodes']}{marker}")
        _emit("\n".join(lines), out)


def _read_config_file(path: Path) -> dict[str, Any]:
    try:
        data = json.loads(path.read_text(encoding="utf-8"))
    except OSError as e:
        _fail(f"Failed to read config file {path}: {e}")
    except json.JSONDecodeError as e:
        _fail(f"Config file {path} is not valid JSON: {e}")
    if not isinstance(data, dict):
        _fail(f"Config file {path} must hold a JSON object")
    return data


@app.command()
def bench(
    config_file: Optional[Path] = typer.Option(None, "--config", "-c", help="JSON file of ExperimentConfig fields"),
    graph: Optional[str] = typer.Option(None, "--graph", "-g", help="Edge-list path or synthetic:<density|preset>[:<n_total>]"),
    n: Optional[int] = typer.Option(None, "--n", "-n", help="Nodes per induced subgraph"),
    k: Optional[int] = typer.Option(None, "--k", "-k", help="Clique size"),
    instances: Optional[int] = typer.Option(None, "--instances", help="Subgraphs to draw"),
    shots: Optional[int] = typer.Option(None, "--shots", help="Samples per iteration count"),
    top_window: Optional[int] = typer.Option(None, "--top-window", help="Most frequent outcomes inspected"),
    oracle: Optional[str] = typer.Option(None, "--oracle", help="gamma or exact"),
    n_total: Optional[int] = typer.Option(None, "--n-total", help="Node count of synthetic graphs"),
    one_based: Optional[bool] = typer.Option(None, "--one-based/--zero-based", help="Edge-list id base"),
    header: Optional[bool] = typer.Option(None, "--header/--no-header", help="Edge list starts with a count line"),
    seed: Optional[int] = SEED_OPTION,
    out: Optional[Path] = OUT_OPTION,
    fmt: OutputFormat = typer.Option(OutputFormat.json, "--format", "-f", help="Report format: json or csv (text prints the summary only)"),
):
    """
    Run the clique-search benchmark and write its report.

    Flags override config-file values, which override environment defaults.
    """
    from qclique.__main__ import setup_logging

    setup_logging()
    config = get_config()
    values: dict[str, Any] = {
        "shots": config.get_default_shots(),
        "top_window": config.get_default_top_window(),
        "seed": config.get_default_seed(),
    }
    if config_file is not None:
        values.update(_read_config_file(config_file))
    flags = {
        "graph": graph, "n": n, "k": k, "instances": instances, "shots": shots,
        "top_window": top_window, "oracle": oracle, "n_total": n_total,
        "one_based": one_based, "header": header, "seed": seed,
    }
    values.update({key: value for key, value in flags.items() if value is not None})

    try:
        cfg = ExperimentConfig.from_dict(values)
    except TypeError as e:
        _fail(f"Invalid benchmark config: {e}")
    errors = cfg.validate()
    if errors:
        _fail(f"Invalid benchmark config: {', '.join(errors)}")

    try:
        report, records = run_benchmark(cfg)
    except ResourceLimitError as e:
        _fail(str(e), EXIT_FAILURE)
    except OSError as e:
        _fail(str(e))
    except ValueError as e:
        _fail(str(e))

    for cell in report.cells:
        typer.echo(str(cell))

    if fmt == OutputFormat.text:
        return
    if out is None:
        if fmt == OutputFormat.json:
            document = report.to_dict()
            document["records"] = [record.to_dict() for record in records]
            typer.echo(json.dumps(document, indent=2))
        else:
            typer.echo(format_records_csv(records), nl=False)
        return
    try:
        export_report(report, records, out, fmt.value)
    except OSError as e:
        _fail(str(e), EXIT_FAILURE)
    typer.echo(f"Wrote {fmt.value} report to {out}")


@app.callback()
def main(
    verbose: bool = typer.Option(
        False, "--verbose", "-v", help="Enable verbose logging"
    ),
):
    """
    qclique - Clique-search circuits built from 1-factorizations
    """
    log_level = logging.DEBUG if verbose else logging.WARNING
    logging.basicConfig(
        level=log_level,
        format="%(levelname)s: %(message)s",
    )

    if verbose:
        logger.debug("Verbose logging enabled.")


if __name__ == "__main__":
    app()
