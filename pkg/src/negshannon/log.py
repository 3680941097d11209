"""Logging setup using rich on standard error."""

import logging

from rich.console import Console
from rich.logging import RichHandler

ROOT_LOGGER = "negshannon"

stderr_console = Console(stderr=True)


def get_logger(name: str) -> logging.Logger:
    """Return a logger below the package logger."""
    if name.startswith(ROOT_LOGGER):
        return logging.getLogger(name)
    return logging.getLogger(f"{ROOT_LOGGER}.{name}")


def configure_logging(verbose: bool = False) -> None:
    """Install a RichHandler on the package logger (idempotent)."""
    logger = logging.getLogger(ROOT_LOGGER)
    logger.setLevel(logging.DEBUG if verbose else logging.WARNING)
    if any(isinstance(h, RichHandler) for h in logger.handlers):
        return
    handler = RichHandler(console=stderr_console, show_path=False, rich_tracebacks=False)
    handler.setFormatter(logging.Formatter("%(message)s"))
    logger.addHandler(handler)
    logger.propagate = False
