"""Decoding policies standing in for the deletion, placeholder and token classifiers."""

from .alignment import align_del_ins, align_protected, edit_distance  # noqa: F401
from .base import AdversarialPolicy, IdentityPolicy, Policy  # noqa: F401
from .factory import parse_policy_spec, policy_factory  # noqa: F401
from .oracle import NoisyOraclePolicy, OraclePolicy  # noqa: F401
from .random_policy import RandomPolicy  # noqa: F401
from .scripted import ScriptedPolicy, ScriptedStep  # noqa: F401


def oracle_policy(reference: list[str]) -> OraclePolicy:
    """Policy converging on ``reference``."""
    return OraclePolicy(reference)


def adversarial_policy() -> AdversarialPolicy:
    """Policy deleting everything deletable."""
    return AdversarialPolicy()


def random_policy(seed: int, vocab: list[str]) -> RandomPolicy:
    """Seeded random policy over ``vocab``."""
    return RandomPolicy(seed, vocab)
