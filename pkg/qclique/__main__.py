"""
qclique - Main Entry Point

Runs the typer CLI; long-running commands install file logging through
setup_logging().
"""

import logging
from logging.handlers import RotatingFileHandler

from qclique.config import get_config

logger = logging.getLogger(__name__)


def setup_logging() -> None:
    """
    Set up file and console logging with rotation.

    File logs include timestamps and caller info; the console gets a short
    format at a higher threshold.
    """
    config = get_config()
    log_file = config.get_log_file()
    log_level_file = config.get_log_level()
    log_level_console = config.get_log_level_console()

    log_file.parent.mkdir(parents=True, exist_ok=True)

    root_logger = logging.getLogger()
    root_logger.setLevel(min(
        getattr(logging, log_level_file.upper()),
        getattr(logging, log_level_console.upper()),
    ))
    root_logger.handlers.clear()

    file_formatter = logging.Formatter(
        "%(asctime)s - %(name)s - %(levelname)s - %(filename)s:%(lineno)d - %(message)s",
        datefmt="%Y-%m-%d %H:%M:%S",
    )
    file_handler = RotatingFileHandler(
        log_file,
        maxBytes=config.get_log_max_bytes(),
        backupCount=config.get_log_backup_count(),
    )
    file_handler.setLevel(getattr(logging, log_level_file.upper()))
    file_handler.setFormatter(file_formatter)
    root_logger.addHandler(file_handler)

    console_handler = logging.StreamHandler()
    console_handler.setLevel(getattr(logging, log_level_console.upper()))
    console_handler.setFormatter(logging.Formatter("%(levelname)s: %(message)s"))
    root_logger.addHandler(console_handler)
    logger.debug(f"Logging to {log_file}")


def main() -> None:
    """Main entry point: dispatch to the typer app."""
    from qclique.cli import app

    app()


if __name__ == "__main__":
    main()
