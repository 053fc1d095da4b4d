"""
Configuration module tests.
"""

import os

import pytest

from qclique.config import Config, get_config


class TestConfig:
    """Test configuration loading and validation."""

    def test_defaults(self):
        """Test documented defaults when nothing is set."""
        config = Config()

        assert config.get_max_qubits() == 26
        assert config.get_memory_limit_bytes() is None
        assert config.get_precision() == "double"
        assert config.get_default_shots() == 1000
        assert config.get_default_top_window() == 10
        assert config.get_default_seed() == 0

    def test_env_overrides(self, monkeypatch):
        """Test environment variables override defaults."""
        monkeypatch.setenv("QCLIQUE_MAX_QUBITS", "20")
        monkeypatch.setenv("QCLIQUE_MEMORY_LIMIT_MB", "64")
        monkeypatch.setenv("QCLIQUE_PRECISION", "Single")
        monkeypatch.setenv("QCLIQUE_SHOTS", "500")

        config = Config()

        assert config.get_max_qubits() == 20
        assert config.get_memory_limit_bytes() == 64 * 1024 * 1024
        assert config.get_precision() == "single"
        assert config.get_default_shots() == 500

    def test_invalid_integer_names_variable(self, monkeypatch):
        """Test a non-integer value raises ValueError naming the variable."""
        monkeypatch.setenv("QCLIQUE_MAX_QUBITS", "many")

        with pytest.raises(ValueError, match="QCLIQUE_MAX_QUBITS"):
            Config().get_max_qubits()

    def test_non_positive_max_qubits(self, monkeypatch):
        """Test a zero qubit ceiling is rejected."""
        monkeypatch.setenv("QCLIQUE_MAX_QUBITS", "0")

        with pytest.raises(ValueError, match="must be positive"):
            Config().get_max_qubits()

    def test_unknown_precision(self, monkeypatch):
        """Test an unknown precision is rejected."""
        monkeypatch.setenv("QCLIQUE_PRECISION", "quad")

        with pytest.raises(ValueError, match="QCLIQUE_PRECISION"):
            Config().get_precision()

    def test_get_config_dir(self):
        """Test config directory path."""
        config_dir = Config().get_config_dir()

        assert config_dir.name == "qclique"
        assert "config" in str(config_dir).lower()

    def test_log_settings(self, monkeypatch):
        """Test log settings and their defaults."""
        monkeypatch.setenv("QCLIQUE_LOG_LEVEL", "DEBUG")
        monkeypatch.setenv("QCLIQUE_LOG_FILE", "run.log")

        config = Config()

        assert config.get_log_level() == "DEBUG"
        assert config.get_log_level_console() == "WARNING"
        assert config.get_log_file().name == "run.log"
        assert config.get_log_max_bytes() == 10 * 1024 * 1024
        assert config.get_log_backup_count() == 10

    def test_config_file_in_config_dir(self):
        """Test values are read from ~/.config/qclique/.env."""
        config_dir = Config().get_config_dir()
        config_dir.mkdir(parents=True)
        (config_dir / ".env").write_text("QCLIQUE_TOP_WINDOW=7\n")

        config = Config()
        try:
            assert config.get_default_top_window() == 7
        finally:
            os.environ.pop("QCLIQUE_TOP_WINDOW", None)

    def test_singleton(self):
        """Test get_config returns the same instance."""
        assert get_config() is get_config()
