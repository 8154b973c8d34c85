"""Build policies from ``--policy`` specifications."""

from __future__ import annotations

from typing import Callable, Sequence

from ..utils.error_handler import ContractViolation
from .base import UNK, AdversarialPolicy, IdentityPolicy, Policy
from .oracle import OraclePolicy
from .random_policy import DEFAULT_INSERT_CAP, RandomPolicy

PolicyFactory = Callable[[int], Policy]

POLICY_SPECS = "oracle:REFS | random:SEED | adversarial | identity"


def parse_policy_spec(spec: str) -> tuple[str, str | None]:
    """Split ``kind:argument`` into its parts."""
    kind, _, argument = spec.partition(":")
    kind = kind.strip().lower()
    if kind not in {"oracle", "random", "adversarial", "identity"}:
        raise ContractViolation(f"unknown policy {spec!r}; expected {POLICY_SPECS}")
    if kind in {"oracle", "random"} and not argument:
        raise ContractViolation(f"policy {kind!r} needs an argument ({POLICY_SPECS})")
    return kind, argument or None


def policy_factory(
    spec: str,
    *,
    references: Sequence[Sequence[str]] | None = None,
    vocab: Sequence[str] = (),
    insert_cap: int = DEFAULT_INSERT_CAP,
) -> PolicyFactory:
    """Return a function mapping a sentence index to the policy decoding it.

    Oracle policies need the reference sentences (read by the caller from
    the file named in the spec); the random policy draws fills from
    ``vocab``.
    """
    kind, argument = parse_policy_spec(spec)
    if kind == "oracle":
        if references is None:
            raise ContractViolation("oracle policy needs reference sentences")
        oracles = [OraclePolicy(reference) for reference in references]
        return lambda index: oracles[index]
    if kind == "random":
        try:
            seed = int(argument or "")
        except ValueError as exc:
            raise ContractViolation(f"random policy seed must be an integer, got {argument!r}") from exc
        if seed < 0:
            raise ContractViolation(f"random policy seed must not be negative, got {seed}")
        shared: Policy = RandomPolicy(seed, vocab or [UNK], cap=insert_cap)
    elif kind == "adversarial":
        shared = AdversarialPolicy()
    else:
        shared = IdentityPolicy()
    return lambda index: shared
