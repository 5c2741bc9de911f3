# src/homfin/core/logger.py

import logging
import logging.handlers
from pathlib import Path
from typing import Optional

import click

# OS-specific log directory
import platformdirs

APP_NAME = "homfin"
LOGGER_NAME = "homfin"

# Console lines stay short; the file keeps source locations for debugging.
CONSOLE_FORMAT = "%(levelname)-8s :: %(message)s"
FILE_FORMAT = "%(asctime)s [%(name)s:%(lineno)d] [%(levelname)-8s] - %(message)s"
LEVEL_COLORS = {
    logging.CRITICAL: "magenta",
    logging.ERROR: "red",
    logging.WARNING: "yellow",
    logging.INFO: "green",
    logging.DEBUG: "blue",
}


def _level(name: str, fallback: int) -> int:
    # Unknown names ("VERBOSE", typos in config.toml) fall back instead of raising.
    return getattr(logging, str(name).upper(), fallback)


class ClickColorHandler(logging.Handler):
    """Writes level-coloured records to stderr, keeping stdout free for reports."""

    def emit(self, record: logging.LogRecord) -> None:
        # Records below the handler level never reach emit().
        try:
            click.secho(self.format(record), fg=LEVEL_COLORS.get(record.levelno, "white"), err=True)
        except Exception:
            self.handleError(record)


def set_console_level(level: str) -> None:
    """Changes console verbosity of the configured logger for this session."""
    for handler in logging.getLogger(LOGGER_NAME).handlers:
        if isinstance(handler, ClickColorHandler):
            handler.setLevel(_level(level, logging.INFO))


def _rotating_file_handler(log_dir: Path, level: str) -> logging.Handler:
    log_dir.mkdir(parents=True, exist_ok=True)
    # homfin.log plus 5 rotated backups
    handler = logging.handlers.RotatingFileHandler(
        log_dir / "homfin.log",
        maxBytes=10 * 1024 * 1024,  # 10 MB
        backupCount=5,
        encoding="utf-8",
    )
    handler.setLevel(_level(level, logging.DEBUG))
    handler.setFormatter(logging.Formatter(FILE_FORMAT))
    return handler


def setup_logging(
    log_level_console: str = "INFO",
    log_level_file: str = "DEBUG",
    log_dir: Optional[Path] = None,
) -> logging.Logger:
    """
    Configures and returns the `homfin` logger.

    Console records go to stderr through click, so table and JSON reports on
    stdout stay machine-readable. The file handler keeps a rotating record of
    every engine stage (Gröbner completion, resolution steps, verdicts) at
    `log_level_file`. Calling this again replaces the handlers.

    Args:
        log_level_console: The minimum level shown on the console.
        log_level_file: The minimum level written to the file.
        log_dir: Directory for homfin.log. Defaults to the per-user log directory.

    Returns:
        The configured logger.
    """
    # Named logger, so sympy's or pytest's handlers are left alone.
    app_logger = logging.getLogger(LOGGER_NAME)

    # The logger passes everything; each handler filters at its own level.
    app_logger.setLevel(logging.DEBUG)
    app_logger.propagate = False

    # A repeated call (tests, CliRunner) must not duplicate output.
    app_logger.handlers.clear()

    # --- Console Handler ---
    console = ClickColorHandler()
    console.setLevel(_level(log_level_console, logging.INFO))
    console.setFormatter(logging.Formatter(CONSOLE_FORMAT))
    app_logger.addHandler(console)

    # --- File Handler ---
    target = Path(log_dir) if log_dir else Path(platformdirs.user_log_dir(APP_NAME))
    try:
        app_logger.addHandler(_rotating_file_handler(target, log_level_file))
        app_logger.debug(f"Engine log file: {target / 'homfin.log'}")
    except OSError as e:
        # console-only logging is still usable
        app_logger.critical(f"Failed to initialize file logger in {target}: {e}")

    return app_logger
