"""Constrained iterative refinement.

The loop starts from the initial state (the constraints between the boundary symbols, or
just the boundaries in baseline mode) and repeats deletion, placeholder
insertion and token filling until the token sequence stops changing or the
iteration cap is reached.  Mode-dependent wrappers sit between the policy
and the edit operations: masked tokens are forced to "keep" from no-del on,
and intra-constraint gaps are forced to zero placeholders in no-ins mode.
"""

from __future__ import annotations

from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from functools import partial
from itertools import compress
from operator import is_not, or_
from typing import Sequence

from loguru import logger

from ..config.decode_config import DEFAULT_MAX_LENGTH, DecodeConfig
from ..models.decode_result import DecodeResult
from ..models.decode_state import DecodeState
from ..models.enums import DecodeMode, Termination
from ..models.token import BOS, EOS, Constraint, MaskEntry, Token
from ..policies.base import Policy
from ..utils.error_handler import ContractViolation, DecodeError, LengthLimitExceeded
from .edit_ops import (
    apply_deletion,
    apply_placeholder_insertion,
    fill_placeholders,
    joins_constraint,
)

_IS_MASKED = partial(is_not, None)


def init_state(constraints: Sequence[Constraint], max_length: int = DEFAULT_MAX_LENGTH) -> DecodeState:
    """Build ``<s> C1 ... Cm </s>`` with every constraint token masked."""
    tokens: tuple[Token, ...] = (BOS,)
    mask: tuple[MaskEntry | None, ...] = (None,)
    for expected_id, constraint in enumerate(constraints):
        if constraint.id != expected_id:
            raise ContractViolation(f"constraint ids must be 0..m-1 in order, got {constraint.id} at {expected_id}")
        tokens += constraint.tokens
        mask += constraint.mask
    total = len(tokens) + 1
    if total > max_length:
        raise DecodeError(f"constraints need {total} tokens, more than max length {max_length}")
    return DecodeState(tokens + (EOS,), mask + (None,), 0, tuple(constraints))


def enforce_no_delete(keep: Sequence[bool], state: DecodeState) -> list[bool]:
    """Force "keep" on every masked position."""
    if len(keep) != len(state.tokens):
        raise ContractViolation(f"expected {len(state.tokens)} keep flags, got {len(keep)}")
    if all(keep):
        return list(keep)
    return list(map(or_, map(bool, keep), map(_IS_MASKED, state.mask)))


def enforce_no_insert_within(gap_counts: Sequence[int], state: DecodeState) -> list[int]:
    """Zero the gaps between consecutive tokens of the same constraint."""
    if len(gap_counts) != len(state.tokens) - 1:
        raise ContractViolation(f"expected {len(state.tokens) - 1} gap counts, got {len(gap_counts)}")
    counts = list(gap_counts)
    mask = state.mask
    # only gaps that received placeholders can need zeroing
    for gap in list(compress(range(len(counts)), counts)):
        if joins_constraint(mask[gap], mask[gap + 1]):
            counts[gap] = 0
    return counts


def step(
    state: DecodeState,
    source: Sequence[str],
    policy: Policy,
    config: DecodeConfig,
) -> tuple[DecodeState, bool]:
    """Run one deletion → placeholder → fill pass.

    Returns the new state (iteration incremented) and whether its token
    surfaces differ from the input's.
    """
    mode = config.mode
    keep = policy.delete(source, state)
    if mode.includes(DecodeMode.NO_DELETE) and not all(keep):
        keep = enforce_no_delete(keep, state)
    deleted = apply_deletion(state, keep)

    counts = policy.placeholders(source, deleted)
    if mode.includes(DecodeMode.NO_INSERT) and any(counts):
        counts = enforce_no_insert_within(counts, deleted)
    inserted = apply_placeholder_insertion(deleted, counts, config.max_length)

    filled = fill_placeholders(inserted, policy.fill(source, inserted))
    # unchanged edits hand back the very same tuple
    changed = filled.tokens is not state.tokens and (
        len(filled.tokens) != len(state.tokens) or filled.tokens != state.tokens
    )
    return DecodeState(filled.tokens, filled.mask, state.iteration + 1, filled.constraints), changed


def decode(
    source: Sequence[str],
    constraints: Sequence[Constraint],
    policy: Policy,
    config: DecodeConfig,
    *,
    trace: bool = False,
    strip_boundaries: bool = True,
) -> DecodeResult:
    """Decode ``source`` until a fixpoint, the iteration cap or the length limit.

    In baseline mode ``constraints`` is never read.  A step that would
    exceed the length limit is abandoned and the previous state returned.
    """
    if config.mode is DecodeMode.BASELINE:
        state = DecodeState.empty()
    else:
        state = init_state(constraints, config.max_length)

    sentence_policy = policy.begin(source)
    states: list[DecodeState] | None = [state] if trace else None
    terminated_by = Termination.ITERATION_CAP
    while state.iteration < config.max_iterations:
        try:
            state, changed = step(state, source, sentence_policy, config)
        except LengthLimitExceeded as exc:
            logger.warning("Decode stopped at iteration {}: {}", state.iteration, exc)
            terminated_by = Termination.LENGTH_LIMIT
            break
        if states is not None:
            states.append(state)
        if not changed:
            terminated_by = Termination.FIXPOINT
            break

    logger.trace("Decoded in {} iterations ({})", state.iteration, terminated_by.value)
    output = state.interior if strip_boundaries else state.surfaces
    return DecodeResult(
        output=output,
        iterations_used=state.iteration,
        terminated_by=terminated_by,
        final_state=state,
        trace=states,
    )


@dataclass(frozen=True, slots=True)
class DecodeItem:
    """One sentence to decode with the policy assigned to it."""

    source: tuple[str, ...]
    constraints: tuple[Constraint, ...]
    policy: Policy


def _decode_chunk(items: Sequence[DecodeItem], config: DecodeConfig, trace: bool) -> list[DecodeResult]:
    return [decode(item.source, item.constraints, item.policy, config, trace=trace) for item in items]


def _chunks(items: Sequence[DecodeItem], parts: int) -> list[Sequence[DecodeItem]]:
    size = -(-len(items) // parts)
    return [items[start : start + size] for start in range(0, len(items), size)]


def decode_corpus(
    items: Sequence[DecodeItem],
    config: DecodeConfig,
    workers: int = 1,
    *,
    trace: bool = False,
) -> list[DecodeResult]:
    """Decode every item, in input order, optionally over a process pool."""
    if workers <= 1 or len(items) < 2:
        return _decode_chunk(items, config, trace)

    chunks = _chunks(list(items), workers)
    results: list[DecodeResult] = []
    with ProcessPoolExecutor(max_workers=workers) as pool:
        futures = [pool.submit(_decode_chunk, chunk, config, trace) for chunk in chunks]
        for future in futures:
            results.extend(future.result())
    return results
