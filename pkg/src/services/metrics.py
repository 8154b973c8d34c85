"""Term usage, BLEU, bootstrap significance and constraint-order metrics.

A constraint counts as generated when its target phrase occurs as a
contiguous run of output tokens.  Identical phrases given more than once
need as many non-overlapping occurrences, claimed greedily left to right.
"""

from __future__ import annotations

from collections import Counter
from typing import Optional, Sequence, Union

import numpy as np
from sacrebleu.metrics import BLEU

from ..models.enums import MatchLevel
from ..models.term_dictionary import ConstraintSet
from ..utils.error_handler import ContractViolation, EvalError
from ..utils.subwords import join_subwords

MAX_ORDER = 4

Phrases = Sequence[Sequence[str]]
ConstraintsLike = Union[ConstraintSet, Phrases]


def _phrases(constraints: ConstraintsLike) -> list[tuple[str, ...]]:
    if isinstance(constraints, ConstraintSet):
        return [tuple(target) for target in constraints.targets]
    return [tuple(phrase) for phrase in constraints]


def _at_level(tokens: Sequence[str], level: MatchLevel) -> list[str]:
    return join_subwords(tokens) if level is MatchLevel.WORD else list(tokens)


def find_occurrences(phrase: Sequence[str], tokens: Sequence[str]) -> list[int]:
    """Start positions of non-overlapping occurrences, leftmost first."""
    width = len(phrase)
    target = list(phrase)
    starts: list[int] = []
    position = 0
    while position + width <= len(tokens):
        if list(tokens[position : position + width]) == target:
            starts.append(position)
            position += width
        else:
            position += 1
    return starts


def _all_starts(phrase: Sequence[str], tokens: Sequence[str]) -> list[int]:
    width = len(phrase)
    target = list(phrase)
    return [start for start in range(len(tokens) - width + 1) if list(tokens[start : start + width]) == target]


def locate_constraints(output: Sequence[str], phrases: Sequence[Sequence[str]]) -> list[Optional[int]]:
    """Occurrence start claimed by each constraint, or None if it is missing.

    Constraints claim in the order given: each takes the leftmost occurrence
    at or after the start claimed by the previous located constraint, and
    the leftmost one otherwise.  Occurrences claimed for an identical phrase
    may not overlap.
    """
    starts: dict[tuple[str, ...], list[int]] = {}
    claimed: dict[tuple[str, ...], list[int]] = {}
    located: list[Optional[int]] = []
    previous = 0
    for phrase in phrases:
        key = tuple(phrase)
        if key not in starts:
            starts[key] = _all_starts(key, output)
            claimed[key] = []
        width = len(key)
        free = [start for start in starts[key] if all(abs(start - other) >= width for other in claimed[key])]
        following = [start for start in free if start >= previous]
        chosen = following[0] if following else (free[0] if free else None)
        if chosen is not None:
            claimed[key].append(chosen)
            previous = chosen
        located.append(chosen)
    return located


def _generated_count(output: Sequence[str], phrases: Sequence[Sequence[str]]) -> int:
    needed = Counter(tuple(phrase) for phrase in phrases)
    return sum(min(count, len(find_occurrences(key, output))) for key, count in needed.items())


def _check_sizes(outputs: Sequence[object], constraint_sets: Sequence[object]) -> None:
    if len(outputs) != len(constraint_sets):
        raise ContractViolation(f"{len(outputs)} outputs but {len(constraint_sets)} constraint sets")


def term_usage(
    outputs: Sequence[Sequence[str]],
    constraint_sets: Sequence[ConstraintsLike],
    level: MatchLevel = MatchLevel.SUBWORD,
) -> float:
    """Generated constraints divided by given constraints; 1.0 when none are given."""
    _check_sizes(outputs, constraint_sets)
    generated = total = 0
    for output, constraints in zip(outputs, constraint_sets):
        phrases = [_at_level(phrase, level) for phrase in _phrases(constraints)]
        if not phrases:
            continue
        total += len(phrases)
        generated += _generated_count(_at_level(output, level), phrases)
    return generated / total if total else 1.0


def order_statistics(
    outputs: Sequence[Sequence[str]],
    constraint_sets: Sequence[ConstraintsLike],
    level: MatchLevel = MatchLevel.SUBWORD,
) -> tuple[int, int]:
    """Adjacent pairs of generated constraints appearing in source order, and all such pairs."""
    _check_sizes(outputs, constraint_sets)
    in_order = pairs = 0
    for output, constraints in zip(outputs, constraint_sets):
        phrases = [_at_level(phrase, level) for phrase in _phrases(constraints)]
        positions = [p for p in locate_constraints(_at_level(output, level), phrases) if p is not None]
        for first, second in zip(positions, positions[1:]):
            pairs += 1
            in_order += first <= second
    return in_order, pairs


def order_rate(
    constraint_sets: Sequence[ConstraintsLike],
    outputs: Sequence[Sequence[str]],
    level: MatchLevel = MatchLevel.SUBWORD,
) -> float:
    """Fraction of adjacent generated-constraint pairs kept in order; 1.0 without pairs."""
    in_order, pairs = order_statistics(outputs, constraint_sets, level)
    return in_order / pairs if pairs else 1.0


# ---------------------------------------------------------------------------
# BLEU


def _ngrams(tokens: Sequence[str], order: int) -> Counter[tuple[str, ...]]:
    return Counter(tuple(tokens[index : index + order]) for index in range(len(tokens) - order + 1))


def sentence_statistics(hyp: Sequence[str], ref: Sequence[str]) -> list[int]:
    """Clipped n-gram matches, hypothesis n-gram totals, and both lengths."""
    correct: list[int] = []
    total: list[int] = []
    for order in range(1, MAX_ORDER + 1):
        hyp_counts = _ngrams(hyp, order)
        ref_counts = _ngrams(ref, order)
        correct.append(sum(min(count, ref_counts[gram]) for gram, count in hyp_counts.items()))
        total.append(max(len(hyp) - order + 1, 0))
    return correct + total + [len(hyp), len(ref)]


def bleu_statistics(hyps: Sequence[Sequence[str]], refs: Sequence[Sequence[str]]) -> np.ndarray:
    """Per-sentence BLEU sufficient statistics, shape ``(n, 2 * MAX_ORDER + 2)``."""
    if len(hyps) != len(refs):
        raise EvalError(f"{len(hyps)} hypotheses but {len(refs)} references")
    if not hyps:
        raise EvalError("cannot score an empty corpus")
    return np.array([sentence_statistics(hyp, ref) for hyp, ref in zip(hyps, refs)], dtype=np.int64)


def bleu_from_statistics(totals: np.ndarray, smooth: str = "none") -> float:
    """Corpus BLEU from summed sufficient statistics."""
    values = [int(value) for value in totals]
    score = BLEU.compute_bleu(
        correct=values[:MAX_ORDER],
        total=values[MAX_ORDER : 2 * MAX_ORDER],
        sys_len=values[-2],
        ref_len=values[-1],
        smooth_method=smooth,
        effective_order=True,
    )
    # exp(mean(log p)) can land a rounding error above 100
    return min(float(score.score), 100.0)


def corpus_bleu(hyps: Sequence[Sequence[str]], refs: Sequence[Sequence[str]], smooth: str = "none") -> float:
    """Corpus BLEU on the tokens as given, one reference per hypothesis."""
    return bleu_from_statistics(bleu_statistics(hyps, refs).sum(axis=0), smooth)


def bootstrap_significance(
    hyps_a: Sequence[Sequence[str]],
    hyps_b: Sequence[Sequence[str]],
    refs: Sequence[Sequence[str]],
    samples: int = 1000,
    seed: int = 0,
    smooth: str = "none",
) -> float:
    """Paired bootstrap p-value for "system A scores higher BLEU than system B".

    Counts the resamples where A does not beat B, ties included.
    """
    if samples < 100:
        raise EvalError(f"bootstrap needs at least 100 samples, got {samples}")
    if len(hyps_a) != len(hyps_b):
        raise EvalError(f"systems differ in size: {len(hyps_a)} vs {len(hyps_b)}")
    stats_a = bleu_statistics(hyps_a, refs)
    stats_b = bleu_statistics(hyps_b, refs)
    indices = np.random.default_rng(seed).integers(0, len(refs), size=(samples, len(refs)))
    not_better = 0
    for row in indices:
        score_a = bleu_from_statistics(stats_a[row].sum(axis=0), smooth)
        score_b = bleu_from_statistics(stats_b[row].sum(axis=0), smooth)
        not_better += score_a <= score_b
    return not_better / samples


# ---------------------------------------------------------------------------
# Random insertion baseline


def random_insertion(output: Sequence[str], constraints: ConstraintsLike, seed: int = 0) -> list[str]:
    """Insert every missing constraint at a seeded random gap.

    Constraints already present are left where they are, and no gap inside
    one of them (or inside an inserted phrase) is chosen.
    """
    rng = np.random.default_rng(seed)
    phrases = _phrases(constraints)
    result = list(output)
    located = locate_constraints(result, phrases)
    spans = [(start, start + len(phrase)) for start, phrase in zip(located, phrases) if start is not None]

    for phrase, start in zip(phrases, located):
        if start is not None:
            continue
        gaps = [gap for gap in range(len(result) + 1) if not any(left < gap < right for left, right in spans)]
        gap = gaps[int(rng.integers(len(gaps)))]
        result[gap:gap] = phrase
        spans = [(left + len(phrase), right + len(phrase)) if left >= gap else (left, right) for left, right in spans]
        spans.append((gap, gap + len(phrase)))
    return result
