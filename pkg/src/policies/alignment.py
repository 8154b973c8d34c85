"""Insertion/deletion edit distance with a deterministic backtrace.

There is no substitution: replacing a token costs one deletion plus one
insertion, matching the two edit types of the decoder.
"""

from __future__ import annotations

from typing import Collection, Sequence

from ..models.edit_script import EditScript
from ..utils.error_handler import ContractViolation

_INF = float("inf")


def edit_distance_table(
    current: Sequence[str],
    target: Sequence[str],
    protected_positions: Collection[int] = (),
    protected_gaps: Collection[int] = (),
) -> list[list[float]]:
    """Wagner–Fischer table of minimum del/ins costs between all prefixes.

    ``table[i][j]`` is the cheapest way to turn ``current[:i]`` into
    ``target[:j]``.  Positions in ``protected_positions`` cannot be deleted
    and gaps in ``protected_gaps`` cannot receive insertions; infeasible
    cells hold infinity.
    """
    n, m = len(current), len(target)
    table = [[_INF] * (m + 1) for _ in range(n + 1)]
    table[0][0] = 0
    for i in range(n + 1):
        insert_allowed = i not in protected_gaps
        row = table[i]
        above = table[i - 1] if i > 0 else None
        delete_allowed = i > 0 and (i - 1) not in protected_positions
        for j in range(m + 1):
            if i == 0 and j == 0:
                continue
            best = _INF
            if above is not None:
                if j > 0 and current[i - 1] == target[j - 1]:
                    best = above[j - 1]
                if delete_allowed and above[j] + 1 < best:
                    best = above[j] + 1
            if j > 0 and insert_allowed and row[j - 1] + 1 < best:
                best = row[j - 1] + 1
            row[j] = best
    return table


def align_protected(
    current: Sequence[str],
    target: Sequence[str],
    protected_positions: Collection[int] = (),
    protected_gaps: Collection[int] = (),
) -> EditScript | None:
    """Minimum-cost script respecting the protections, or None if none exists.

    The backtrace walks from the end and prefers a match (diagonal), then a
    deletion (up), then an insertion (left).
    """
    table = edit_distance_table(current, target, protected_positions, protected_gaps)
    i, j = len(current), len(target)
    if table[i][j] == _INF:
        return None

    deletions: set[int] = set()
    insertions: dict[int, list[str]] = {}
    while i > 0 or j > 0:
        cost = table[i][j]
        if i > 0 and j > 0 and current[i - 1] == target[j - 1] and table[i - 1][j - 1] == cost:
            i, j = i - 1, j - 1
        elif i > 0 and (i - 1) not in protected_positions and table[i - 1][j] + 1 == cost:
            deletions.add(i - 1)
            i -= 1
        else:
            insertions.setdefault(i, []).append(target[j - 1])
            j -= 1

    return EditScript(
        deletions=frozenset(deletions),
        insertions={gap: tuple(reversed(tokens)) for gap, tokens in sorted(insertions.items())},
    )


def align_del_ins(
    current: Sequence[str],
    target: Sequence[str],
    protected_positions: Collection[int] = (),
    protected_gaps: Collection[int] = (),
) -> EditScript:
    """Return a minimum-cost deletion/insertion script from ``current`` to ``target``.

    Both sequences exclude boundary symbols.  Without protections a script
    always exists and its cost is the del/ins edit distance.
    """
    script = align_protected(current, target, protected_positions, protected_gaps)
    if script is None:
        raise ContractViolation("no edit script respects the protected positions and gaps")
    return script


def edit_distance(current: Sequence[str], target: Sequence[str]) -> int:
    """Unprotected del/ins edit distance."""
    return int(edit_distance_table(current, target)[len(current)][len(target)])
