"""Error handling utilities and custom exceptions."""

from __future__ import annotations

from functools import wraps
from typing import Any, Callable

from loguru import logger
from pydantic import ValidationError


class LevtError(Exception):
    """Base class for every error raised by the decoding toolkit."""

    pass


class ContractViolation(LevtError):
    """Raised when an operation's precondition does not hold.

    Wrong list lengths handed to an edit operation, a deletion decision at a
    boundary symbol or a policy answer of the wrong shape all end up here.
    """

    pass


class DecodeError(LevtError):
    """Raised when a decode cannot proceed with otherwise valid inputs."""

    pass


class LengthLimitExceeded(DecodeError):
    """Raised when a sequence would grow beyond the configured max length."""

    def __init__(self, length: int, max_length: int) -> None:
        super().__init__(f"length limit exceeded: {length} > {max_length}")
        self.length = length
        self.max_length = max_length


class LoadError(LevtError):
    """Raised when an input resource cannot be read or parsed."""

    def __init__(self, path: str, message: str, line: int | None = None) -> None:
        location = f"{path}:{line}" if line is not None else str(path)
        super().__init__(f"{location}: {message}")
        self.path = str(path)
        self.line = line


class EvalError(LevtError):
    """Raised when a metric or benchmark receives unusable inputs."""

    pass


# ---------------------------------------------------------------------------
# Decorators for CLI commands


def handle_cli_errors(func: Callable[..., int]) -> Callable[..., int]:
    """Decorator turning command failures into exit codes.

    Known failures (:class:`LevtError`, file system errors and pydantic
    validation of settings or records) are logged as a single line and
    mapped to exit code 1.  Anything else is logged with its traceback and
    mapped to exit code 2.
    """

    @wraps(func)
    def wrapper(*args: Any, **kwargs: Any) -> int:
        try:
            return func(*args, **kwargs)
        except (LevtError, OSError) as exc:
            logger.error("{} failed: {}", func.__name__, exc)
            return 1
        except ValidationError as exc:
            source = "configuration" if exc.title.endswith("Config") else "data"
            logger.error("{} failed: invalid {} ({}): {}", func.__name__, source, exc.title, exc)
            return 1
        except Exception:
            logger.exception("Unexpected error in {}", func.__name__)
            return 2

    return wrapper
