"""Reference-seeking policies built on the del/ins alignment."""

from __future__ import annotations

import copy
import zlib
from typing import Optional, Sequence

import numpy as np

from ..models.decode_state import DecodeState
from ..models.edit_script import EditScript
from ..models.token import MaskEntry
from ..services.edit_ops import intra_constraint_gaps
from ..utils.error_handler import ContractViolation
from .alignment import align_del_ins, align_protected
from .base import UNK, Policy


def _reduced_view(state: DecodeState) -> tuple[list[str], list[Optional[MaskEntry]], list[int]]:
    """Interior surfaces and mask without placeholders, plus each placeholder's gap."""
    surfaces: list[str] = []
    mask: list[Optional[MaskEntry]] = []
    placeholder_gaps: list[int] = []
    for token, entry in zip(state.tokens[1:-1], state.mask[1:-1]):
        if token.is_placeholder:
            placeholder_gaps.append(len(surfaces))
        else:
            surfaces.append(token.surface)
            mask.append(entry)
    return surfaces, mask, placeholder_gaps


def source_seed(seed: int, source: Sequence[str]) -> list[int]:
    """Seed material for one decode: the policy seed plus a stable source hash."""
    return [seed, zlib.crc32(" ".join(source).encode("utf-8"))]


class OraclePolicy(Policy):
    """Answers every classifier with the edit script toward a reference.

    The script is recomputed on each call.  Masked tokens are kept and
    constraint-internal gaps left alone whenever the reference allows it,
    so constraints that occur in the reference are matched as a whole.
    """

    name = "oracle"

    def __init__(self, reference: Sequence[str], respect_mask: bool = True) -> None:
        self.reference = tuple(reference)
        self.respect_mask = respect_mask

    def target(self, state: DecodeState) -> tuple[str, ...]:
        return self.reference

    def script(self, surfaces: Sequence[str], mask: Sequence[Optional[MaskEntry]], target: Sequence[str]) -> EditScript:
        if self.respect_mask and any(entry is not None for entry in mask):
            protected_positions = [index for index, entry in enumerate(mask) if entry is not None]
            # interior gap g sits between surfaces[g - 1] and surfaces[g]
            protected_gaps = [gap + 1 for gap in intra_constraint_gaps(mask)]
            script = align_protected(surfaces, target, protected_positions, protected_gaps)
            if script is not None:
                return script
        return align_del_ins(surfaces, target)

    def delete(self, source: Sequence[str], state: DecodeState) -> list[bool]:
        surfaces, mask, _ = _reduced_view(state)
        script = self.script(surfaces, mask, self.target(state))
        return [True] + [index not in script.deletions for index in range(len(surfaces))] + [True]

    def placeholders(self, source: Sequence[str], state: DecodeState) -> list[int]:
        surfaces, mask, _ = _reduced_view(state)
        script = self.script(surfaces, mask, self.target(state))
        return [script.insertion_count(gap) for gap in range(len(surfaces) + 1)]

    def fill(self, source: Sequence[str], state: DecodeState) -> list[str]:
        surfaces, mask, placeholder_gaps = _reduced_view(state)
        if not placeholder_gaps:
            return []
        script = self.script(surfaces, mask, self.target(state))
        fills: list[str] = []
        used: dict[int, int] = {}
        for gap in placeholder_gaps:
            tokens = script.insertions.get(gap, ())
            slot = used.get(gap, 0)
            used[gap] = slot + 1
            fills.append(self.fill_token(tokens[slot] if slot < len(tokens) else UNK))
        return fills

    def fill_token(self, intended: str) -> str:
        return intended


class NoisyOraclePolicy(OraclePolicy):
    """An oracle with a mind of its own.

    It aims at ``belief``, its own translation, which may lack the terms.
    When the first state it sees already holds constraint tokens it adopts
    ``reference`` (which contains them) with probability ``adopt_rate``.
    Each fill is replaced by a random ``vocab`` token with probability
    ``noise_rate``.  Draws come from a generator seeded per decode.
    """

    name = "noisy-oracle"

    def __init__(
        self,
        reference: Sequence[str],
        belief: Sequence[str],
        vocab: Sequence[str],
        seed: int = 0,
        adopt_rate: float = 0.7,
        noise_rate: float = 0.1,
    ) -> None:
        super().__init__(reference)
        if not vocab:
            raise ContractViolation("noisy oracle vocabulary must not be empty")
        self.belief = tuple(belief)
        self.vocab = list(vocab)
        self.seed = seed
        self.adopt_rate = adopt_rate
        self.noise_rate = noise_rate
        self._rng = np.random.default_rng(seed)
        self._adopted: bool | None = None

    def begin(self, source: Sequence[str]) -> "NoisyOraclePolicy":
        instance = copy.copy(self)
        instance._rng = np.random.default_rng(source_seed(self.seed, source))
        instance._adopted = None
        return instance

    @property
    def adopted(self) -> bool | None:
        return self._adopted

    def target(self, state: DecodeState) -> tuple[str, ...]:
        if self._adopted is None:
            has_constraints = any(entry is not None for entry in state.mask)
            self._adopted = has_constraints and self._rng.random() < self.adopt_rate
        return self.reference if self._adopted else self.belief

    def script(self, surfaces: Sequence[str], mask: Sequence[Optional[MaskEntry]], target: Sequence[str]) -> EditScript:
        # only an adopting model knows where the constraints are
        if self._adopted:
            return super().script(surfaces, mask, target)
        return align_del_ins(surfaces, target)

    def fill_token(self, intended: str) -> str:
        if self._rng.random() < self.noise_rate:
            return self.vocab[int(self._rng.integers(len(self.vocab)))]
        return intended
