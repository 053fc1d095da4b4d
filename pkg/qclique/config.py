"""
qclique - Configuration Module

Configuration management for simulator limits, benchmark defaults and logging.
"""

import os
from pathlib import Path
from typing import Optional
import logging
from dotenv import load_dotenv

logger = logging.getLogger(__name__)

_PRECISIONS = ("double", "single")


class Config:
    """
    Configuration for qclique.

    Loads configuration from environment variables and .env files.
    """

    def __init__(self) -> None:
        """Initialize configuration from environment and .env files."""
        # Load .env from current directory first
        load_dotenv()

        # Also try loading from ~/.config/qclique/.env
        config_dir = self._get_config_dir()
        config_env = config_dir / ".env"
        if config_env.exists():
            load_dotenv(config_env)

        logger.debug("Configuration loaded.")

    @staticmethod
    def _get_int(name: str, default: int) -> int:
        raw = os.getenv(name, str(default))
        try:
            return int(raw)
        except ValueError:
            raise ValueError(f"{name} must be an integer, got {raw!r}") from None

    def get_max_qubits(self) -> int:
        """
        Get the widest register the simulator will allocate.

        Returns:
            int: Maximum qubit count (default: 26)

        Raises:
            ValueError: If QCLIQUE_MAX_QUBITS is not a positive integer
        """
        value = self._get_int("QCLIQUE_MAX_QUBITS", 26)
        if value < 1:
            raise ValueError(f"QCLIQUE_MAX_QUBITS must be positive, got {value}")
        return value

    def get_memory_limit_bytes(self) -> Optional[int]:
        """
        Get the optional cap on amplitude memory.

        Returns:
            Optional[int]: Limit in bytes, or None when QCLIQUE_MEMORY_LIMIT_MB is unset
        """
        if not os.getenv("QCLIQUE_MEMORY_LIMIT_MB"):
            return None
        return self._get_int("QCLIQUE_MEMORY_LIMIT_MB", 0) * 1024 * 1024

    def get_precision(self) -> str:
        """
        Get amplitude precision.

        Returns:
            str: "double" (complex128, default) or "single" (complex64)

        Raises:
            ValueError: If QCLIQUE_PRECISION is not a known precision
        """
        precision = os.getenv("QCLIQUE_PRECISION", "double").strip().lower()
        if precision not in _PRECISIONS:
            raise ValueError(f"QCLIQUE_PRECISION must be one of {_PRECISIONS}, got {precision!r}")
        return precision

    def get_default_shots(self) -> int:
        """
        Get the default shot count.

        Returns:
            int: Shots per measurement (default: 1000)
        """
        return self._get_int("QCLIQUE_SHOTS", 1000)

    def get_default_top_window(self) -> int:
        """
        Get the default success window.

        Returns:
            int: Number of most frequent outcomes inspected (default: 10)
        """
        return self._get_int("QCLIQUE_TOP_WINDOW", 10)

    def get_default_seed(self) -> int:
        """
        Get the seed used when none is given on the command line.

        Returns:
            int: Seed (default: 0)
        """
        return self._get_int("QCLIQUE_SEED", 0)

    def get_config_dir(self) -> Path:
        """
        Get the qclique configuration directory.

        Returns:
            Path: The configuration directory path
        """
        return self._get_config_dir()

    @staticmethod
    def _get_config_dir() -> Path:
        """
        Get the config directory for qclique.

        Uses ~/.config/qclique on Unix-like systems.

        Returns:
            Path: The config directory path
        """
        return Path.home() / ".config" / "qclique"

    def get_log_level(self) -> str:
        """
        Get log level for file logging.

        Returns:
            str: Log level (default: INFO)
        """
        return os.getenv("QCLIQUE_LOG_LEVEL", "INFO")

    def get_log_level_console(self) -> str:
        """
        Get log level for console logging.

        Returns:
            str: Console log level (default: WARNING)
        """
        return os.getenv("QCLIQUE_LOG_LEVEL_CONSOLE", "WARNING")

    def get_log_file(self) -> Path:
        """
        Get the log file path.

        Returns:
            Path: The log file path (default: ~/.config/qclique/qclique.log)
        """
        log_file = self._get_config_dir() / os.getenv("QCLIQUE_LOG_FILE", "qclique.log")
        logger.debug(f"Log file: {log_file}")
        return log_file

    def get_log_max_bytes(self) -> int:
        """
        Get maximum log file size before rotation.

        Returns:
            int: Max bytes (default: 10MB = 10 * 1024 * 1024)
        """
        return self._get_int("QCLIQUE_LOG_MAX_BYTES", 10 * 1024 * 1024)

    def get_log_backup_count(self) -> int:
        """
        Get number of backup log files to keep.

        Returns:
            int: Number of backups (default: 10)
        """
        return self._get_int("QCLIQUE_LOG_BACKUP_COUNT", 10)


# Singleton instance for the whole application
_config: Optional[Config] = None


def get_config() -> Config:
    """
    Get the global configuration instance.

    Returns:
        Config: The configuration singleton
    """
    global _config
    if _config is None:
        _config = Config()
        logger.debug("Global configuration initialized.")
    return _config
