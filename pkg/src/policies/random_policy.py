"""Seeded random policy for stress-testing constraint enforcement."""

from __future__ import annotations

import copy
from typing import Sequence

import numpy as np

from ..models.decode_state import DecodeState
from ..utils.error_handler import ContractViolation
from .base import Policy, keep_all, no_insertions
from .oracle import source_seed

DEFAULT_INSERT_CAP = 3
DEFAULT_EDIT_RATE = 0.75


class RandomPolicy(Policy):
    """Draws keep flags, gap counts and fill tokens from a seeded generator.

    Each decode gets its own generator seeded from ``seed`` and the source
    sentence, so results are reproducible and independent of decode order.
    Every iteration opens with :meth:`delete`, which first decides whether
    the iteration edits at all: with probability ``1 - edit_rate`` it keeps
    everything and inserts nothing, which ends the decode.  An editing
    iteration deletes each position with ``delete_rate``, inserts into each
    gap with ``insert_rate`` (into one random gap when none was drawn) and
    caps gap counts at ``cap``.  How long a decode runs therefore does not
    depend on how long the sequence is.
    """

    name = "random"

    def __init__(
        self,
        seed: int,
        vocab: Sequence[str],
        delete_rate: float = 0.3,
        insert_rate: float = 0.15,
        cap: int = DEFAULT_INSERT_CAP,
        edit_rate: float = DEFAULT_EDIT_RATE,
    ) -> None:
        if not vocab:
            raise ContractViolation("random policy needs a non-empty vocabulary")
        if cap < 1:
            raise ContractViolation("insertion cap must be at least 1")
        if not 0.0 <= edit_rate <= 1.0:
            raise ContractViolation(f"edit rate must lie in [0, 1], got {edit_rate}")
        self.seed = seed
        self.vocab = list(vocab)
        self.delete_rate = delete_rate
        self.insert_rate = insert_rate
        self.cap = cap
        self.edit_rate = edit_rate
        self._rng = np.random.default_rng(seed)
        self._editing = True

    def begin(self, source: Sequence[str]) -> "RandomPolicy":
        instance = copy.copy(self)
        instance._rng = np.random.default_rng(source_seed(self.seed, source))
        instance._editing = True
        return instance

    def delete(self, source: Sequence[str], state: DecodeState) -> list[bool]:
        self._editing = bool(self._rng.random() < self.edit_rate)
        if not self._editing:
            return keep_all(state)
        keep = (self._rng.random(len(state.tokens)) >= self.delete_rate).tolist()
        keep[0] = keep[-1] = True
        return keep

    def placeholders(self, source: Sequence[str], state: DecodeState) -> list[int]:
        if not self._editing:
            return no_insertions(state)
        gaps = len(state.tokens) - 1
        counts = self._rng.integers(1, self.cap + 1, size=gaps)
        chosen = self._rng.random(gaps) < self.insert_rate
        if gaps and not chosen.any():
            chosen[self._rng.integers(gaps)] = True
        return np.where(chosen, counts, 0).tolist()

    def fill(self, source: Sequence[str], state: DecodeState) -> list[str]:
        picks = self._rng.integers(len(self.vocab), size=state.placeholder_count)
        vocab = self.vocab
        return [vocab[index] for index in picks.tolist()]
