"""
Logging setup tests.
"""

import logging
import logging.handlers

from qclique.__main__ import setup_logging


class TestSetupLogging:
    """Test file and console handler installation."""

    def test_installs_both_handlers(self, monkeypatch):
        """Test a rotating file handler and a console handler are configured."""
        monkeypatch.setenv("QCLIQUE_LOG_MAX_BYTES", "2048")
        monkeypatch.setenv("QCLIQUE_LOG_BACKUP_COUNT", "3")

        setup_logging()

        root = logging.getLogger()
        file_handlers = [h for h in root.handlers if isinstance(h, logging.handlers.RotatingFileHandler)]
        console_handlers = [
            h for h in root.handlers
            if isinstance(h, logging.StreamHandler) and not isinstance(h, logging.FileHandler)
        ]
        assert len(file_handlers) == 1
        assert len(console_handlers) == 1
        assert file_handlers[0].maxBytes == 2048
        assert file_handlers[0].backupCount == 3
        assert console_handlers[0].level == logging.WARNING

    def test_root_level_is_most_verbose(self, monkeypatch):
        """Test the root level is the lower of the two handler levels."""
        monkeypatch.setenv("QCLIQUE_LOG_LEVEL", "ERROR")
        monkeypatch.setenv("QCLIQUE_LOG_LEVEL_CONSOLE", "DEBUG")

        setup_logging()

        assert logging.getLogger().level == logging.DEBUG

    def test_writes_to_log_file(self):
        """Test records reach the file in the config directory."""
        setup_logging()
        logging.getLogger("qclique.test").info("benchmark started")
        for handler in logging.getLogger().handlers:
            handler.flush()

        from qclique.config import get_config

        assert "benchmark started" in get_config().get_log_file().read_text()

    def test_repeated_setup_does_not_duplicate(self):
        """Test calling setup twice keeps two handlers."""
        setup_logging()
        setup_logging()

        assert len(logging.getLogger().handlers) == 2
