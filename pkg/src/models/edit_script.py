"""Deletion/insertion scripts between two token sequences."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence


@dataclass(frozen=True, slots=True)
class EditScript:
    """Positions to delete and tokens to insert to reach a target.

    Indices refer to the current sequence.  Insertion gap ``g`` lies
    before ``current[g]``; gap ``len(current)`` is the end.
    """

    deletions: frozenset[int] = field(default_factory=frozenset)
    insertions: dict[int, tuple[str, ...]] = field(default_factory=dict)

    @property
    def cost(self) -> int:
        return len(self.deletions) + sum(len(tokens) for tokens in self.insertions.values())

    @property
    def is_empty(self) -> bool:
        return self.cost == 0

    def insertion_count(self, gap: int) -> int:
        return len(self.insertions.get(gap, ()))

    def apply(self, current: Sequence[str]) -> list[str]:
        """Apply deletions and insertions to ``current``."""
        result: list[str] = []
        for index, token in enumerate(current):
            result.extend(self.insertions.get(index, ()))
            if index not in self.deletions:
                result.append(token)
        result.extend(self.insertions.get(len(current), ()))
        return result
