"""General helper functions used across the toolkit."""

from __future__ import annotations

import time
from functools import wraps
from pathlib import Path
from typing import Any, Callable, Iterable, TypeVar

from loguru import logger

T = TypeVar("T")


def log_execution(func: Callable[..., T]) -> Callable[..., T]:
    """Decorator to log the execution of a function and its wall time."""

    @wraps(func)
    def wrapper(*args: Any, **kwargs: Any) -> T:
        logger.debug("Entering {}", func.__name__)
        started = time.perf_counter()
        result = func(*args, **kwargs)
        logger.debug("Exiting {} after {:.3f}s", func.__name__, time.perf_counter() - started)
        return result

    return wrapper


def read_tokenized(path: str | Path) -> list[list[str]]:
    """Read one space-tokenized sentence per line (UTF-8)."""
    with open(path, encoding="utf-8") as handle:
        return [line.rstrip("\n").split() for line in handle]


def write_tokenized(path: str | Path, sentences: Iterable[Iterable[str]]) -> None:
    """Write sentences as space-joined tokens, one per line (UTF-8)."""
    with open(path, "w", encoding="utf-8") as handle:
        for tokens in sentences:
            handle.write(" ".join(tokens) + "\n")
