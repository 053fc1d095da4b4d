"""
Shared fixtures for qclique tests.
"""

import logging
from pathlib import Path

import pytest

from qclique.graphs import Graph


@pytest.fixture(autouse=True)
def isolated_env(monkeypatch, tmp_path):
    """Keep config, .env lookup and log files away from the real home directory."""
    for name in [
        "QCLIQUE_MAX_QUBITS",
        "QCLIQUE_MEMORY_LIMIT_MB",
        "QCLIQUE_PRECISION",
        "QCLIQUE_SHOTS",
        "QCLIQUE_TOP_WINDOW",
        "QCLIQUE_SEED",
        "QCLIQUE_LOG_LEVEL",
        "QCLIQUE_LOG_LEVEL_CONSOLE",
        "QCLIQUE_LOG_FILE",
        "QCLIQUE_LOG_MAX_BYTES",
        "QCLIQUE_LOG_BACKUP_COUNT",
    ]:
        monkeypatch.delenv(name, raising=False)
    home = tmp_path / "home"
    home.mkdir()
    monkeypatch.setenv("HOME", str(home))
    monkeypatch.chdir(tmp_path)


@pytest.fixture(autouse=True)
def restore_root_logger():
    """Undo handler changes made by setup_logging()."""
    root = logging.getLogger()
    handlers, level = list(root.handlers), root.level
    yield
    for handler in root.handlers:
        if handler not in handlers:
            handler.close()
    root.handlers[:] = handlers
    root.setLevel(level)


@pytest.fixture
def triangle() -> Graph:
    """K3."""
    return Graph.complete(3)


@pytest.fixture
def path3() -> Graph:
    """Path 0-1-2."""
    return Graph.from_edges(3, [(0, 1), (1, 2)])


@pytest.fixture
def one_triangle() -> Graph:
    """Four nodes whose only triangle is {0, 1, 2}."""
    return Graph.from_edges(4, [(0, 1), (1, 2), (0, 2), (2, 3)])


@pytest.fixture
def edge_list_file(tmp_path) -> Path:
    """A 0-based edge list of the path 0-1-2 with a comment line."""
    path = tmp_path / "edges.txt"
    path.write_text("% path graph\n0 1\n1 2\n")
    return path
