"""Seeded synthetic translation task for ablations and benchmarks.

Every sentence pairs filler words with one to a few dictionary terms.  The
reference contains every term's target phrase in source order; the
"belief" translation is the reference with some term phrases dropped, as a
model that ignores terminology would produce.  Filler and term vocabularies
are disjoint, and odd-numbered terms translate to two subword tokens.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from ..models.term_dictionary import ConstraintRecord, ConstraintSet, DictionaryEntry, TermDictionary


@dataclass(frozen=True, slots=True)
class SyntheticSentence:
    source: tuple[str, ...]
    reference: tuple[str, ...]
    belief: tuple[str, ...]
    constraints: ConstraintSet


@dataclass(frozen=True, slots=True)
class SyntheticCorpus:
    """Sentences plus the vocabularies they were drawn from."""

    sentences: list[SyntheticSentence]
    vocab: list[str]
    terms: TermDictionary = field(default_factory=TermDictionary)

    def __len__(self) -> int:
        return len(self.sentences)

    @property
    def sources(self) -> list[list[str]]:
        return [list(sentence.source) for sentence in self.sentences]

    @property
    def references(self) -> list[list[str]]:
        return [list(sentence.reference) for sentence in self.sentences]

    @property
    def constraint_sets(self) -> list[ConstraintSet]:
        return [sentence.constraints for sentence in self.sentences]


def _term(index: int) -> DictionaryEntry:
    if index % 2:
        return DictionaryEntry(source=(f"src{index}", "term"), target=(f"Term{index}@@", f"teil{index}"))
    return DictionaryEntry(source=(f"src{index}",), target=(f"Term{index}",))


def build_synthetic_corpus(
    n: int,
    seed: int = 0,
    *,
    vocab_size: int = 200,
    term_count: int = 50,
    min_length: int = 4,
    max_length: int = 12,
    max_constraints: int = 3,
    drop_rate: float = 0.2,
) -> SyntheticCorpus:
    """Build ``n`` sentences deterministically from ``seed``."""
    rng = np.random.default_rng(seed)
    vocab = [f"w{index}" for index in range(vocab_size)]
    terms = [_term(index) for index in range(term_count)]

    sentences: list[SyntheticSentence] = []
    for sentence_id in range(n):
        length = int(rng.integers(min_length, max_length + 1))
        fillers = rng.integers(vocab_size, size=length)
        count = int(rng.integers(1, min(max_constraints, term_count) + 1))
        chosen = rng.choice(term_count, size=count, replace=False)
        gaps = np.sort(rng.integers(0, length + 1, size=count))
        dropped = rng.random(count) < drop_rate

        source: list[str] = []
        reference: list[str] = []
        belief: list[str] = []
        records: list[ConstraintRecord] = []
        slot = 0
        for position in range(length + 1):
            while slot < count and gaps[slot] == position:
                term = terms[int(chosen[slot])]
                start = len(source)
                source.extend(term.source)
                reference.extend(term.target)
                if not dropped[slot]:
                    belief.extend(term.target)
                records.append(
                    ConstraintRecord(source=list(term.source), target=list(term.target), span=(start, len(source)))
                )
                slot += 1
            if position < length:
                word = int(fillers[position])
                source.append(f"s{word}")
                reference.append(vocab[word])
                belief.append(vocab[word])

        sentences.append(
            SyntheticSentence(
                source=tuple(source),
                reference=tuple(reference),
                belief=tuple(belief),
                constraints=ConstraintSet(sentence_id=sentence_id, constraints=records),
            )
        )
    return SyntheticCorpus(
        sentences=sentences,
        vocab=vocab,
        terms=TermDictionary(entries=tuple(terms), provenance=f"synthetic (seed {seed})"),
    )
