"""Tokens and lexical constraints."""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache
from typing import Iterable, NamedTuple, Sequence

from ..utils.error_handler import ContractViolation
from .enums import TokenKind

JOINER = "@@"


@dataclass(frozen=True, slots=True)
class Token:
    """A single unit of a decode sequence.

    ``surface`` is a subword; a trailing ``@@`` glues it to its successor
    when the sequence is detokenized.
    """

    surface: str
    kind: TokenKind = TokenKind.REGULAR

    @property
    def is_regular(self) -> bool:
        return self.kind is TokenKind.REGULAR

    @property
    def is_boundary(self) -> bool:
        return self.kind is TokenKind.BOS or self.kind is TokenKind.EOS

    @property
    def is_placeholder(self) -> bool:
        return self.kind is TokenKind.PLACEHOLDER

    @classmethod
    def regular(cls, surface: str) -> "Token":
        return cls(surface, TokenKind.REGULAR)

    def __str__(self) -> str:
        return self.surface


BOS = Token("<s>", TokenKind.BOS)
EOS = Token("</s>", TokenKind.EOS)
PLH = Token("[PLH]", TokenKind.PLACEHOLDER)


@lru_cache(maxsize=1 << 16)
def regular_token(surface: str) -> Token:
    """Shared regular token for ``surface``."""
    return Token(surface)


def regular_tokens(surfaces: Iterable[str]) -> tuple[Token, ...]:
    """Wrap plain surfaces as regular tokens."""
    return tuple(map(regular_token, surfaces))


class MaskEntry(NamedTuple):
    """Marks a position as token ``offset`` of constraint ``constraint_id``."""

    constraint_id: int
    offset: int


@dataclass(frozen=True, slots=True)
class Constraint:
    """An ordered target phrase that must survive decoding.

    ``id`` is the 0-based ordinal of the constraint within its sentence.
    ``mask`` holds the mask entries its tokens carry in a decode state.
    """

    tokens: tuple[Token, ...]
    id: int = 0
    mask: tuple[MaskEntry, ...] = field(init=False, repr=False, compare=False)

    def __post_init__(self) -> None:
        if not self.tokens:
            raise ContractViolation("a constraint needs at least one token")
        if not all(token.is_regular for token in self.tokens):
            raise ContractViolation("constraint tokens must be regular tokens")
        object.__setattr__(self, "mask", tuple(MaskEntry(self.id, offset) for offset in range(len(self.tokens))))

    @property
    def surfaces(self) -> tuple[str, ...]:
        return tuple(token.surface for token in self.tokens)

    def __len__(self) -> int:
        return len(self.tokens)


def make_constraints(phrases: Sequence[Sequence[str]]) -> list[Constraint]:
    """Build constraints with ids 0..m-1 from surface phrases."""
    return [Constraint(regular_tokens(phrase), index) for index, phrase in enumerate(phrases)]
