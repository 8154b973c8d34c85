"""Loguru setup for the command line.

Logs go to stderr (and an optional rotating file) so stdout carries only
command output: tables, summaries and extraction statistics.  Records from
the standard ``logging`` module, e.g. emitted by third-party libraries, are
forwarded to Loguru.
"""

from __future__ import annotations

import logging
import sys
from pathlib import Path
from typing import Optional

from loguru import logger

from ..config.app_config import get_app_config

LOG_FORMAT = (
    "<green>{time:HH:mm:ss.SSS}</green> | "
    "<level>{level: <8}</level> | "
    "<cyan>{name}</cyan>:<cyan>{function}</cyan>:<cyan>{line}</cyan> | "
    "<level>{message}</level>"
)


class InterceptHandler(logging.Handler):
    """Forward standard logging records to Loguru at the caller's depth."""

    def emit(self, record: logging.LogRecord) -> None:
        try:
            level: str | int = logger.level(record.levelname).name
        except (KeyError, ValueError):
            level = record.levelno

        frame, depth = logging.currentframe(), 2
        while frame and frame.f_code.co_filename == logging.__file__:
            frame = frame.f_back
            depth += 1

        logger.opt(depth=depth, exception=record.exc_info).log(level, record.getMessage())


def setup_logging(level: Optional[str] = None) -> "loguru.Logger":
    """Configure Loguru sinks for one CLI invocation.

    Parameters
    ----------
    level: Optional[str]
        Overrides the configured ``LOG_LEVEL`` when given (``--log-level``).

    Returns
    -------
    loguru.Logger
        The configured Loguru logger instance.
    """
    app_config = get_app_config()
    log_level = (level or app_config.log_level).upper()

    logger.remove()
    logger.add(
        sys.stderr,
        level=log_level,
        format=LOG_FORMAT,
        colorize=True,
        backtrace=app_config.app_debug,
        diagnose=app_config.app_debug,
    )

    if app_config.log_file:
        Path(app_config.log_file).parent.mkdir(parents=True, exist_ok=True)
        logger.add(
            app_config.log_file,
            level=log_level,
            format=LOG_FORMAT,
            rotation="10 MB",
            retention="30 days",
            compression="zip",
            # decode workers run in separate processes
            enqueue=True,
            backtrace=True,
            diagnose=app_config.app_debug,
        )

    logging.basicConfig(handlers=[InterceptHandler()], level=logging.WARNING, force=True)
    logger.debug("Logging configured: env={} level={}", app_config.app_env, log_level)
    return logger
