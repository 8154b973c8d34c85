"""The three-classifier contract every decoding policy implements."""

from __future__ import annotations

from abc import ABC, abstractmethod
from typing import Sequence

from ..models.decode_state import DecodeState


class Policy(ABC):
    """Stand-in for the deletion, placeholder and token classifiers.

    Every prediction is conditioned on the source sentence and the current
    target state.  Answers must have the exact shapes the edit operations
    expect: one keep flag per position (true at the boundaries), one count
    per gap, one regular token per placeholder.
    """

    name: str = "policy"

    def begin(self, source: Sequence[str]) -> "Policy":
        """Return the instance that serves one decode of ``source``.

        Stateless policies serve every decode themselves.  Policies holding
        per-decode state (generators, scripts) return a fresh copy.
        """
        return self

    @abstractmethod
    def delete(self, source: Sequence[str], state: DecodeState) -> list[bool]:
        """Keep (True) or delete (False) decision per position."""

    @abstractmethod
    def placeholders(self, source: Sequence[str], state: DecodeState) -> list[int]:
        """Number of placeholders to insert in every gap."""

    @abstractmethod
    def fill(self, source: Sequence[str], state: DecodeState) -> list[str]:
        """One token surface per placeholder, left to right."""


def keep_all(state: DecodeState) -> list[bool]:
    return [True] * len(state.tokens)


def no_insertions(state: DecodeState) -> list[int]:
    return [0] * (len(state.tokens) - 1)


UNK = "<unk>"


class IdentityPolicy(Policy):
    """Keeps every token and inserts nothing; decoding stops after one pass."""

    name = "identity"

    def delete(self, source: Sequence[str], state: DecodeState) -> list[bool]:
        return keep_all(state)

    def placeholders(self, source: Sequence[str], state: DecodeState) -> list[int]:
        return no_insertions(state)

    def fill(self, source: Sequence[str], state: DecodeState) -> list[str]:
        return [UNK] * state.placeholder_count


class AdversarialPolicy(Policy):
    """Deletes everything deletable and never inserts."""

    name = "adversarial"

    def delete(self, source: Sequence[str], state: DecodeState) -> list[bool]:
        keep = [False] * len(state.tokens)
        keep[0] = keep[-1] = True
        return keep

    def placeholders(self, source: Sequence[str], state: DecodeState) -> list[int]:
        return no_insertions(state)

    def fill(self, source: Sequence[str], state: DecodeState) -> list[str]:
        return [UNK] * state.placeholder_count
