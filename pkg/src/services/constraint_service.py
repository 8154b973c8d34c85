"""Dictionary loading and per-sentence constraint extraction.

Source phrases are matched case-sensitively on surface words.  Overlapping
matches are resolved leftmost-longest: at each position the longest
matching phrase wins and scanning resumes after it.  When a reference is
given, a source match only counts if one of its senses also occurs in the
reference.
"""

from __future__ import annotations

from pathlib import Path
from typing import Iterable, Optional, Sequence

import numpy as np
from loguru import logger
from pydantic import ValidationError
from subword_nmt.apply_bpe import BPE

from ..models.term_dictionary import (
    ConstraintRecord,
    ConstraintSet,
    DictionaryEntry,
    ExtractionSummary,
    TermDictionary,
)
from ..utils.error_handler import ContractViolation, LoadError
from ..utils.subwords import segment_subwords


def _read_lines(path: str | Path, what: str) -> list[str]:
    try:
        with open(path, encoding="utf-8") as handle:
            return handle.read().splitlines()
    except OSError as exc:
        raise LoadError(str(path), f"cannot read {what} ({exc.strerror or exc})") from exc
    except UnicodeDecodeError as exc:
        raise LoadError(str(path), f"{what} is not valid UTF-8") from exc


def load_dictionary(path: str | Path) -> TermDictionary:
    """Read a ``source phrase<TAB>target phrase`` file.

    Blank lines are skipped.  A line without exactly one tab or with an
    empty side raises :class:`LoadError` naming the line.
    """
    entries: list[DictionaryEntry] = []
    for number, line in enumerate(_read_lines(path, "dictionary"), start=1):
        if not line.strip():
            continue
        parts = line.split("\t")
        if len(parts) != 2:
            raise LoadError(str(path), f"expected one tab, found {len(parts) - 1}", line=number)
        source, target = (part.split() for part in parts)
        if not source or not target:
            raise LoadError(str(path), "empty source or target phrase", line=number)
        entries.append(DictionaryEntry(source=tuple(source), target=tuple(target)))
    logger.debug("Loaded {} dictionary entries from {}", len(entries), path)
    return TermDictionary(entries=tuple(entries), provenance=str(path))


def load_frequency_list(path: str | Path) -> list[str]:
    """Read a ranked word list, most frequent first.

    Only the first column is used, so ``word<TAB>count`` files work too.
    """
    words = [line.split()[0] for line in _read_lines(path, "frequency list") if line.strip()]
    logger.debug("Loaded {} ranked words from {}", len(words), path)
    return words


def filter_frequent(dictionary: TermDictionary, freq_list: Sequence[str], k: int = 500) -> TermDictionary:
    """Drop entries whose source is a single word among the ``k`` most frequent."""
    if k < 0:
        raise ContractViolation(f"k must be non-negative, got {k}")
    frequent = set(freq_list[:k])
    kept = tuple(
        entry for entry in dictionary.entries if not (len(entry.source) == 1 and entry.source[0] in frequent)
    )
    logger.debug("Frequency filter (top {}) removed {} entries", k, len(dictionary) - len(kept))
    return TermDictionary(entries=kept, provenance=dictionary.provenance)


def sample_dictionary(dictionary: TermDictionary, fraction: float, seed: int = 0) -> TermDictionary:
    """Keep a seeded ``fraction`` of the entries, in file order."""
    if not 0.0 < fraction <= 1.0:
        raise ContractViolation(f"sample fraction must be in (0, 1], got {fraction}")
    size = len(dictionary)
    count = int(round(fraction * size))
    chosen = np.sort(np.random.default_rng(seed).choice(size, size=count, replace=False))
    entries = tuple(dictionary.entries[int(index)] for index in chosen)
    return TermDictionary(entries=entries, provenance=f"{dictionary.provenance} (sample {fraction:g}, seed {seed})")


def _occurs(phrase: Sequence[str], tokens: Sequence[str]) -> bool:
    width = len(phrase)
    return any(tuple(tokens[start : start + width]) == tuple(phrase) for start in range(len(tokens) - width + 1))


class TermMatcher:
    """Index of dictionary source phrases keyed by their first word."""

    def __init__(self, dictionary: TermDictionary) -> None:
        self.dictionary = dictionary
        self._senses: dict[tuple[str, ...], list[tuple[str, ...]]] = {}
        for entry in dictionary.entries:
            self._senses.setdefault(entry.source, []).append(entry.target)
        self._by_first: dict[str, list[tuple[str, ...]]] = {}
        for phrase in self._senses:
            self._by_first.setdefault(phrase[0], []).append(phrase)
        for phrases in self._by_first.values():
            phrases.sort(key=len, reverse=True)

    def candidates(self, source: Sequence[str], start: int) -> list[tuple[str, ...]]:
        """Source phrases occurring at ``start``, longest first."""
        return [
            phrase
            for phrase in self._by_first.get(source[start], [])
            if tuple(source[start : start + len(phrase)]) == phrase
        ]

    def sense(self, phrase: tuple[str, ...], reference: Optional[Sequence[str]]) -> Optional[tuple[str, ...]]:
        """First target of ``phrase`` (occurring in ``reference`` when one is given)."""
        senses = self._senses[phrase]
        if reference is None:
            return senses[0]
        return next((target for target in senses if _occurs(target, reference)), None)

    def match(self, source: Sequence[str], reference: Optional[Sequence[str]] = None) -> list[tuple[int, int, tuple[str, ...]]]:
        """Leftmost-longest non-overlapping matches as ``(start, end, target)``."""
        matches: list[tuple[int, int, tuple[str, ...]]] = []
        position = 0
        while position < len(source):
            for phrase in self.candidates(source, position):
                target = self.sense(phrase, reference)
                if target is not None:
                    end = position + len(phrase)
                    matches.append((position, end, target))
                    position = end
                    break
            else:
                position += 1
        return matches


def extract_constraints(
    source: Sequence[str],
    reference: Optional[Sequence[str]],
    dictionary: TermDictionary | TermMatcher,
    bpe: Optional[BPE] = None,
    sentence_id: int = 0,
) -> ConstraintSet:
    """Constraints of one sentence in source order, targets segmented into subwords."""
    matcher = dictionary if isinstance(dictionary, TermMatcher) else TermMatcher(dictionary)
    records = [
        ConstraintRecord(
            source=list(source[start:end]),
            target=segment_subwords(target, bpe),
            span=(start, end),
        )
        for start, end, target in matcher.match(source, reference)
    ]
    return ConstraintSet(sentence_id=sentence_id, constraints=records)


def summarize(sets: Sequence[ConstraintSet]) -> ExtractionSummary:
    constrained = [constraint_set for constraint_set in sets if len(constraint_set)]
    return ExtractionSummary(
        sentences=len(sets),
        constrained_sentences=len(constrained),
        total_constraints=sum(len(constraint_set) for constraint_set in constrained),
        unique_source_terms=len(
            {tuple(record.source) for constraint_set in constrained for record in constraint_set.constraints}
        ),
    )


def extract_corpus(
    sources: Sequence[Sequence[str]],
    references: Optional[Sequence[Sequence[str]]],
    dictionary: TermDictionary,
    bpe: Optional[BPE] = None,
) -> tuple[list[ConstraintSet], ExtractionSummary]:
    """Extract constraints for every sentence and summarise the result."""
    if references is not None and len(references) != len(sources):
        raise ContractViolation(f"{len(sources)} source sentences but {len(references)} references")
    matcher = TermMatcher(dictionary)
    sets = [
        extract_constraints(source, references[index] if references is not None else None, matcher, bpe, index)
        for index, source in enumerate(sources)
    ]
    summary = summarize(sets)
    logger.info(
        "Extracted {} constraints for {}/{} sentences ({:.2f} per constrained sentence, {} unique terms)",
        summary.total_constraints,
        summary.constrained_sentences,
        summary.sentences,
        summary.average_per_constrained_sentence,
        summary.unique_source_terms,
    )
    return sets, summary


def read_constraint_sets(path: str | Path) -> list[ConstraintSet]:
    """Read the JSON Lines constraints file, one record per sentence."""
    sets: list[ConstraintSet] = []
    for number, line in enumerate(_read_lines(path, "constraints file"), start=1):
        if not line.strip():
            continue
        try:
            sets.append(ConstraintSet.model_validate_json(line))
        except ValidationError as exc:
            raise LoadError(str(path), f"invalid constraint record: {exc.errors()[0]['msg']}", line=number) from exc
    return sets


def write_constraint_sets(path: str | Path, sets: Iterable[ConstraintSet]) -> None:
    with open(path, "w", encoding="utf-8") as handle:
        for constraint_set in sets:
            handle.write(constraint_set.to_json_line() + "\n")
