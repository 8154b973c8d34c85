"""Bilingual term dictionaries and per-sentence constraint sets."""

from __future__ import annotations

from typing import Optional

from pydantic import BaseModel, ConfigDict, Field, field_validator, model_validator

from .token import Constraint, make_constraints


class DictionaryEntry(BaseModel):
    """One source phrase → target phrase translation."""

    model_config = ConfigDict(frozen=True)

    source: tuple[str, ...]
    target: tuple[str, ...]

    @field_validator("source", "target")
    @classmethod
    def validate_phrase(cls, value: tuple[str, ...]) -> tuple[str, ...]:
        if not value or any(not word for word in value):
            raise ValueError("dictionary phrases must be non-empty")
        return value


class TermDictionary(BaseModel):
    """Dictionary entries in file order plus where they came from.

    Duplicate source phrases are allowed; each is one sense of the term.
    """

    model_config = ConfigDict(frozen=True)

    entries: tuple[DictionaryEntry, ...] = Field(default_factory=tuple)
    provenance: str = ""

    def __len__(self) -> int:
        return len(self.entries)


class ConstraintRecord(BaseModel):
    """A matched entry: the source words it covered and its target tokens."""

    source: list[str]
    target: list[str]
    span: Optional[tuple[int, int]] = Field(default=None, exclude=True)

    @field_validator("target")
    @classmethod
    def validate_target(cls, value: list[str]) -> list[str]:
        if not value:
            raise ValueError("constraint target must be non-empty")
        return value


class ConstraintSet(BaseModel):
    """Constraints of one sentence, ordered by source position.

    Serialises to the JSON Lines record
    ``{"id": int, "constraints": [{"source": [...], "target": [...]}]}``.
    """

    sentence_id: int = Field(alias="id")
    constraints: list[ConstraintRecord] = Field(default_factory=list)

    model_config = ConfigDict(populate_by_name=True)

    @model_validator(mode="after")
    def validate_spans(self) -> "ConstraintSet":
        spans = [record.span for record in self.constraints if record.span is not None]
        for (_, previous_end), (start, _) in zip(spans, spans[1:]):
            if start < previous_end:
                raise ValueError("constraint source spans must be ordered and non-overlapping")
        return self

    def __len__(self) -> int:
        return len(self.constraints)

    @property
    def targets(self) -> list[list[str]]:
        return [list(record.target) for record in self.constraints]

    def to_constraints(self) -> list[Constraint]:
        """Decoder constraints with ids in source order."""
        return make_constraints(self.targets)

    def to_json_line(self) -> str:
        return self.model_dump_json(by_alias=True)


class ExtractionSummary(BaseModel):
    """Corpus statistics reported after constraint extraction."""

    sentences: int
    constrained_sentences: int
    total_constraints: int
    unique_source_terms: int

    @property
    def average_per_constrained_sentence(self) -> float:
        if not self.constrained_sentences:
            return 0.0
        return self.total_constraints / self.constrained_sentences
