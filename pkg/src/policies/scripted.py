"""Replays fixed per-iteration decisions."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional, Sequence

from ..models.decode_state import DecodeState
from ..utils.error_handler import ContractViolation
from .base import Policy, keep_all, no_insertions


@dataclass(frozen=True, slots=True)
class ScriptedStep:
    """Decisions for one iteration; ``None`` means keep all / insert none."""

    keep: Optional[tuple[bool, ...]] = None
    gap_counts: Optional[tuple[int, ...]] = None
    fills: tuple[str, ...] = field(default=())


class ScriptedPolicy(Policy):
    """Answers iteration ``k`` with ``steps[k]``; identity once the script runs out.

    A step must name exactly one fill per placeholder present after the
    mode wrappers have run.
    """

    name = "scripted"

    def __init__(self, steps: Sequence[ScriptedStep]) -> None:
        self.steps = list(steps)

    def _step(self, state: DecodeState) -> ScriptedStep:
        if state.iteration < len(self.steps):
            return self.steps[state.iteration]
        return ScriptedStep()

    def delete(self, source: Sequence[str], state: DecodeState) -> list[bool]:
        keep = self._step(state).keep
        return list(keep) if keep is not None else keep_all(state)

    def placeholders(self, source: Sequence[str], state: DecodeState) -> list[int]:
        counts = self._step(state).gap_counts
        return list(counts) if counts is not None else no_insertions(state)

    def fill(self, source: Sequence[str], state: DecodeState) -> list[str]:
        fills = list(self._step(state).fills)
        if len(fills) != state.placeholder_count:
            raise ContractViolation(
                f"script step {state.iteration} has {len(fills)} fills for {state.placeholder_count} placeholders"
            )
        return fills
