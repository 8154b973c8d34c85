"""Primitive edit operations on decode states.

Deletion, placeholder insertion and placeholder filling are the only ways a
sequence changes during decoding.  Each returns a new :class:`DecodeState`
and carries the constraint mask along: deletion filters it, insertion shifts
it, filling leaves it untouched.  An operation that changes nothing returns
its input state.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import compress
from operator import attrgetter
from typing import Optional, Sequence

from ..config.decode_config import DEFAULT_MAX_LENGTH
from ..models.decode_state import DecodeState
from ..models.enums import TokenKind
from ..models.token import PLH, MaskEntry, Token, regular_token
from ..utils.error_handler import ContractViolation, LengthLimitExceeded

_KIND = attrgetter("kind")


def apply_deletion(state: DecodeState, keep: Sequence[bool]) -> DecodeState:
    """Drop every position whose ``keep`` flag is false.

    Boundary symbols must be kept.  Mask entries of deleted positions
    disappear and the surviving ones move with their tokens.
    """
    if len(keep) != len(state.tokens):
        raise ContractViolation(
            f"deletion expects {len(state.tokens)} keep flags, got {len(keep)}"
        )
    if not (keep[0] and keep[-1]):
        raise ContractViolation("boundary symbols cannot be deleted")

    if all(keep):
        return state
    return DecodeState(
        tuple(compress(state.tokens, keep)),
        tuple(compress(state.mask, keep)),
        state.iteration,
        state.constraints,
    )


def apply_placeholder_insertion(
    state: DecodeState,
    gap_counts: Sequence[int],
    max_length: int = DEFAULT_MAX_LENGTH,
) -> DecodeState:
    """Insert ``gap_counts[g]`` placeholders between tokens ``g`` and ``g + 1``.

    New placeholders are unmasked; existing mask entries shift right by the
    number of placeholders inserted before them.

    Raises
    ------
    ContractViolation
        If the count list has the wrong length or holds a negative count.
    LengthLimitExceeded
        If the resulting sequence would be longer than ``max_length``.
    """
    if len(gap_counts) != len(state.tokens) - 1:
        raise ContractViolation(
            f"placeholder insertion expects {len(state.tokens) - 1} gap counts, got {len(gap_counts)}"
        )
    if gap_counts and min(gap_counts) < 0:
        raise ContractViolation("gap counts must be non-negative")

    added = sum(gap_counts)
    if added == 0:
        return state
    new_length = len(state.tokens) + added
    if new_length > max_length:
        raise LengthLimitExceeded(new_length, max_length)

    tokens = list(state.tokens)
    mask = list(state.mask)
    # right to left, so earlier gaps keep their positions
    for gap in reversed(list(compress(range(len(gap_counts)), gap_counts))):
        count = gap_counts[gap]
        tokens[gap + 1 : gap + 1] = (PLH,) * count
        mask[gap + 1 : gap + 1] = (None,) * count
    return DecodeState(tuple(tokens), tuple(mask), state.iteration, state.constraints)


def fill_placeholders(state: DecodeState, fills: Sequence[Token | str]) -> DecodeState:
    """Replace placeholders, left to right, with ``fills``.

    Plain strings are taken as regular tokens.  Length and mask are
    unchanged.
    """
    kinds = list(map(_KIND, state.tokens))
    expected = kinds.count(TokenKind.PLACEHOLDER)
    if len(fills) != expected:
        raise ContractViolation(f"expected {expected} fill tokens, got {len(fills)}")
    if not expected:
        return state

    tokens = list(state.tokens)
    index = -1
    for fill in fills:
        index = kinds.index(TokenKind.PLACEHOLDER, index + 1)
        token = regular_token(fill) if isinstance(fill, str) else fill
        if token.kind is not TokenKind.REGULAR:
            raise ContractViolation(f"fill token {token.surface!r} is not a regular token")
        tokens[index] = token
    return DecodeState(tuple(tokens), state.mask, state.iteration, state.constraints)


def joins_constraint(left: Optional[MaskEntry], right: Optional[MaskEntry]) -> bool:
    """True when ``right`` directly continues the constraint of ``left``."""
    return (
        left is not None
        and right is not None
        and left.constraint_id == right.constraint_id
        and right.offset == left.offset + 1
    )


def intra_constraint_gaps(mask: Sequence[Optional[MaskEntry]]) -> list[int]:
    """Gaps ``g`` whose flanking positions ``g`` and ``g + 1`` belong to one constraint."""
    return [gap for gap, (left, right) in enumerate(zip(mask, mask[1:])) if right is not None and joins_constraint(left, right)]


@dataclass(frozen=True, slots=True)
class StateViolation:
    """First invariant a state breaks, and where."""

    kind: str
    position: int | None = None
    detail: str = ""

    def __str__(self) -> str:
        where = f" at {self.position}" if self.position is not None else ""
        return f"{self.kind}{where}: {self.detail}" if self.detail else f"{self.kind}{where}"


def validate_state(state: DecodeState, *, contiguous: bool = True) -> StateViolation | None:
    """Check every :class:`DecodeState` invariant.

    Returns ``None`` when the state is valid, otherwise the first violation
    found.  Violation kinds are ``"boundary"``, ``"mask length"``,
    ``"unknown constraint"``, ``"mask/surface mismatch"``,
    ``"mask contiguity"`` and ``"constraint order"``.

    With ``contiguous=False`` a constraint may be interrupted by other tokens
    or lack some of its tokens (modes that allow insertion inside or deletion
    of constraints); its offsets must still increase left to right.
    """
    tokens = state.tokens
    if len(tokens) < 2 or tokens[0].kind is not TokenKind.BOS or tokens[-1].kind is not TokenKind.EOS:
        return StateViolation("boundary", None, "sequence must start with <s> and end with </s>")
    for index in range(1, len(tokens) - 1):
        if tokens[index].is_boundary:
            return StateViolation("boundary", index, "interior boundary symbol")
    if len(state.mask) != len(tokens):
        return StateViolation("mask length", None, f"{len(state.mask)} mask entries for {len(tokens)} tokens")

    last_id = -1
    last_position: dict[int, int] = {}
    last_offset: dict[int, int] = {}
    for index, entry in enumerate(state.mask):
        if entry is None:
            continue
        constraint_id, offset = entry
        if constraint_id >= len(state.constraints) or constraint_id < 0:
            return StateViolation("unknown constraint", index, f"id {constraint_id}")
        constraint = state.constraints[constraint_id]
        if not 0 <= offset < len(constraint) or tokens[index] != constraint.tokens[offset]:
            return StateViolation(
                "mask/surface mismatch", index, f"{tokens[index].surface!r} is not token {offset} of constraint {constraint_id}"
            )
        if constraint_id < last_id:
            return StateViolation("constraint order", index, f"constraint {constraint_id} after {last_id}")
        if constraint_id in last_offset:
            follows = offset > last_offset[constraint_id]
            if contiguous:
                follows = offset == last_offset[constraint_id] + 1 and index == last_position[constraint_id] + 1
            if not follows:
                return StateViolation("mask contiguity", index, f"constraint {constraint_id} offset {offset}")
        elif contiguous and offset != 0:
            return StateViolation("mask contiguity", index, f"constraint {constraint_id} starts at offset {offset}")
        last_id = constraint_id
        last_position[constraint_id] = index
        last_offset[constraint_id] = offset

    if contiguous:
        for constraint_id, offset in last_offset.items():
            if offset != len(state.constraints[constraint_id]) - 1:
                return StateViolation("mask contiguity", last_position[constraint_id], f"constraint {constraint_id} is incomplete")
    return None
