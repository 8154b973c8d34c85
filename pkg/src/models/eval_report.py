"""Evaluation and benchmark reports."""

from __future__ import annotations

from typing import Optional

from pydantic import BaseModel, Field

from .enums import MatchLevel


class EvalReport(BaseModel):
    """Metrics for one system output.

    Fractions lie in [0, 1]; BLEU scores in [0, 100].  ``bleu_constrained``
    is computed over the sentences carrying at least one constraint and is
    ``None`` when there are none.
    """

    system: str = "system"
    term_usage: float = Field(..., ge=0.0, le=1.0)
    bleu: float = Field(..., ge=0.0, le=100.0)
    bleu_constrained: Optional[float] = Field(default=None, ge=0.0, le=100.0)
    order_rate: float = Field(..., ge=0.0, le=1.0)
    speed: Optional[float] = Field(default=None, ge=0.0, description="Sentences per second.")
    p_value: Optional[float] = Field(default=None, ge=0.0, le=1.0)
    sentences: int = 0
    constrained_sentences: int = 0
    match_level: MatchLevel = MatchLevel.SUBWORD


class ModeSpeed(BaseModel):
    """Throughput of one decoding mode."""

    mode: str
    label: str
    runs: list[float] = Field(..., description="Sentences per second of every repetition.")
    median: float
    overhead_pct: float = Field(0.0, description="Slowdown relative to the baseline median, in percent.")


class BenchReport(BaseModel):
    """Per-mode throughput table of one benchmark run."""

    policy: str
    sentences: int
    repetitions: int
    workers: int
    modes: list[ModeSpeed]

    def speed_of(self, mode: str) -> ModeSpeed:
        for row in self.modes:
            if row.mode == mode:
                return row
        raise KeyError(mode)
