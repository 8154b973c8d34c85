"""The evolving target sequence of a constrained decode."""

from __future__ import annotations

from dataclasses import dataclass, field
from operator import attrgetter
from typing import Optional

from .enums import TokenKind
from .token import BOS, EOS, Constraint, MaskEntry, Token

_KIND = attrgetter("kind")
_SURFACE = attrgetter("surface")


@dataclass(frozen=True, slots=True)
class DecodeState:
    """Target tokens, their constraint mask and the iteration counter.

    ``tokens`` starts with ``<s>`` and ends with ``</s>``.  ``mask`` is
    aligned with ``tokens``; a position belonging to a constraint carries
    ``MaskEntry(constraint_id, offset)``, every other position ``None``.
    ``constraints`` are the phrases the mask refers to.  States are values:
    edit operations return new instances.
    """

    tokens: tuple[Token, ...]
    mask: tuple[Optional[MaskEntry], ...]
    iteration: int = 0
    constraints: tuple[Constraint, ...] = field(default=())

    @classmethod
    def empty(cls) -> "DecodeState":
        return cls((BOS, EOS), (None, None))

    def __len__(self) -> int:
        return len(self.tokens)

    @property
    def surfaces(self) -> list[str]:
        return list(map(_SURFACE, self.tokens))

    @property
    def interior(self) -> list[str]:
        """Surfaces without the boundary symbols."""
        return list(map(_SURFACE, self.tokens[1:-1]))

    @property
    def placeholder_count(self) -> int:
        return list(map(_KIND, self.tokens)).count(TokenKind.PLACEHOLDER)

    @property
    def masked_positions(self) -> dict[int, MaskEntry]:
        return {index: entry for index, entry in enumerate(self.mask) if entry is not None}

    def render(self) -> str:
        return " ".join(self.surfaces)

    def to_record(self) -> dict[str, object]:
        """Serialisable view used by decode traces."""
        return {
            "iteration": self.iteration,
            "tokens": self.surfaces,
            "mask": {str(index): list(entry) for index, entry in self.masked_positions.items()},
        }
