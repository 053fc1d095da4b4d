"""
Verification suite tests.
"""

import pytest

from qclique.verify import SUITES, SuiteResult, run_suite, verify_gamma


class TestSuiteResult:
    """Test SuiteResult bookkeeping."""

    def test_check_records_failures(self):
        """Test only failing messages are kept."""
        result = SuiteResult("demo")

        assert result.check(True, "fine")
        assert not result.check(False, "broken")

        assert result.checks == 2
        assert result.failures == ["broken"]
        assert not result.passed
        assert str(result) == "FAIL demo: 1/2 checks passed"

    def test_to_dict(self):
        """Test serialization to dictionary."""
        result = SuiteResult("demo")
        result.check(True, "fine")

        assert result.to_dict() == {"name": "demo", "passed": True, "checks": 1, "failures": [], "skipped": []}

    def test_skip_is_reported(self):
        """Test skipped widths are listed and counted in the summary."""
        result = SuiteResult("demo")
        result.check(True, "fine")
        result.skip("n=6 k=3: too wide")

        assert result.passed
        assert result.skipped == ["n=6 k=3: too wide"]
        assert str(result) == "PASS demo: 1/1 checks passed (1 skipped)"


class TestSuites:
    """Test the quick suites pass."""

    @pytest.mark.parametrize("name,max_n", [
        ("factorization", None),
        ("partition", None),
        ("depth", 12),
        ("alpha-triangle", None),
        ("eq3-identity", None),
        ("input-preparator", 7),
        ("gamma", 4),
        ("table3-qubits", None),
    ])
    def test_suite_passes(self, name, max_n):
        """Test the suite reports no failures."""
        result = run_suite(name, max_n=max_n)

        assert result.passed, result.failures
        assert result.checks > 0
        assert result.name == name

    @pytest.mark.parametrize("name,max_n", [("alpha-triangle", None), ("gamma", 4)])
    def test_single_precision(self, monkeypatch, name, max_n):
        """Test suites compare at the single-precision tolerance and still pass."""
        monkeypatch.setenv("QCLIQUE_PRECISION", "single")

        result = run_suite(name, max_n=max_n)

        assert result.passed, result.failures
        assert result.checks > 0

    def test_gamma_skips_wide_queries(self):
        """Test widths above max_qubits are reported instead of dropped silently."""
        result = verify_gamma(max_n=4, max_qubits=14)

        assert result.passed, result.failures
        assert len(result.skipped) == 3
        assert result.skipped[0] == "n=3 k=3: 16 qubits exceed max_qubits=14"
        assert "(3 skipped)" in str(result)

    def test_gamma_skips_above_configured_width(self, monkeypatch):
        """Test the configured qubit ceiling turns into skips, not a failure."""
        monkeypatch.setenv("QCLIQUE_MAX_QUBITS", "12")

        result = run_suite("gamma", max_n=3)

        assert result.passed, result.failures
        assert len(result.skipped) == 1
        assert result.skipped[0].startswith("n=3 k=3: ")

    @pytest.mark.slow
    def test_gamma_up_to_six_nodes(self):
        """Test Gamma marks every clique up to n=6, including the 22-qubit k=3 queries."""
        result = run_suite("gamma", max_n=6)

        assert result.passed, result.failures
        assert result.skipped == []

    def test_edge_detector(self):
        """Test detectors on every 4-node graph and random 6-node graphs."""
        result = run_suite("edge-detector", seed=3)

        assert result.passed, result.failures
        # 64 graphs with 6 queries each, before the random graphs
        assert result.checks > 64 * 6

    def test_grover_baseline(self):
        """Test the exact-oracle frequency check runs on clique-containing graphs."""
        result = run_suite("grover-baseline")

        assert result.checks > 0
        assert result.passed, result.failures

    def test_unknown_suite(self):
        """Test unknown names raise ValueError listing the suites."""
        with pytest.raises(ValueError, match="factorization"):
            run_suite("nope")

    def test_suite_names(self):
        """Test the suite registry."""
        assert list(SUITES) == [
            "factorization", "partition", "edge-detector", "depth", "alpha-triangle",
            "eq3-identity", "input-preparator", "gamma", "table3-qubits", "grover-baseline",
        ]
