"""Outcome of a decode run."""

from __future__ import annotations

from dataclasses import dataclass, field

from .decode_state import DecodeState
from .enums import Termination


@dataclass(slots=True)
class DecodeResult:
    """Finished output plus how the loop got there.

    ``output`` holds token surfaces, boundary symbols stripped unless the
    caller asked to keep them.  ``trace`` holds the initial state followed by the state
    after every completed iteration when tracing was requested.
    """

    output: list[str]
    iterations_used: int
    terminated_by: Termination
    final_state: DecodeState
    trace: list[DecodeState] | None = field(default=None)
