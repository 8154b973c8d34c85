from __future__ import annotations

from itertools import combinations, product

import numpy as np
import pytest

from src.config.decode_config import DecodeConfig
from src.models.decode_state import DecodeState
from src.models.enums import DecodeMode, Termination
from src.models.token import make_constraints
from src.policies import adversarial_policy, oracle_policy, random_policy
from src.policies.alignment import align_del_ins, align_protected, edit_distance
from src.policies.base import AdversarialPolicy, IdentityPolicy
from src.policies.factory import parse_policy_spec, policy_factory
from src.policies.oracle import NoisyOraclePolicy, OraclePolicy
from src.policies.random_policy import RandomPolicy
from src.services.decoder_service import decode, init_state
from src.utils.error_handler import ContractViolation

ALPHABET = "abcd"


def brute_force_distance(current: str, target: str) -> int:
    """Deletion/insertion distance via the longest common subsequence found by enumeration."""
    for size in range(min(len(current), len(target)), -1, -1):
        targets = {"".join(picked) for picked in combinations(target, size)}
        if any("".join(picked) in targets for picked in combinations(current, size)):
            return len(current) + len(target) - 2 * size
    raise AssertionError("unreachable")


def check_pair(current: str, target: str) -> None:
    script = align_del_ins(list(current), list(target))
    assert script.cost == brute_force_distance(current, target)
    assert script.apply(list(current)) == list(target)
    assert edit_distance(list(current), list(target)) == script.cost


def test_alignment_is_minimal_on_all_short_pairs():
    words = ["".join(letters) for size in range(4) for letters in product(ALPHABET, repeat=size)]
    for current, target in product(words, repeat=2):
        check_pair(current, target)


def test_alignment_is_minimal_on_random_pairs_up_to_eight():
    rng = np.random.default_rng(8)
    for _ in range(1500):
        current = "".join(rng.choice(list(ALPHABET), size=int(rng.integers(0, 9))))
        target = "".join(rng.choice(list(ALPHABET), size=int(rng.integers(0, 9))))
        check_pair(current, target)


def test_alignment_prefers_deletion_before_insertion_when_walking_back():
    script = align_del_ins(["x", "y"], ["a", "b"])

    assert script.deletions == frozenset({0, 1})
    assert script.insertions == {0: ("a", "b")}


def test_protected_alignment_respects_positions_and_gaps():
    current = ["a", "X", "Y", "b"]

    kept = align_protected(current, ["c", "X", "Y", "d"], protected_positions={1, 2}, protected_gaps={2})
    blocked = align_protected(current, ["a", "X", "c", "Y", "b"], protected_positions={1, 2}, protected_gaps={2})

    assert kept is not None and not kept.deletions & {1, 2}
    assert kept.apply(current) == ["c", "X", "Y", "d"]
    assert blocked is None
    with pytest.raises(ContractViolation):
        align_del_ins(current, ["a", "X", "c", "Y", "b"], protected_positions={1, 2}, protected_gaps={2})


def test_oracle_converges_on_random_references():
    rng = np.random.default_rng(200)
    vocab = [f"t{index}" for index in range(6)]
    for _ in range(200):
        reference = [vocab[int(index)] for index in rng.integers(len(vocab), size=int(rng.integers(1, 11)))]

        result = decode(["src"], [], OraclePolicy(reference), DecodeConfig(mode=DecodeMode.BASELINE))

        assert result.output == reference
        assert result.terminated_by is Termination.FIXPOINT


def test_oracle_keeps_constraints_found_in_the_reference(make_config):
    reference = "In Nevada ist ein Pilot@@ projekt abgeschlossen .".split()
    constraints = make_constraints([["Nevada"], ["Pilot@@", "projekt"]])

    for mode in (DecodeMode.CONSTRAINT_INSERTION, DecodeMode.NO_DELETE, DecodeMode.NO_INSERT):
        result = decode([], constraints, OraclePolicy(reference), make_config(mode))
        assert result.output == reference
        assert result.terminated_by is Termination.FIXPOINT


def test_oracle_keeps_random_reference_phrases_in_no_insert_mode(make_config):
    rng = np.random.default_rng(21)
    vocab = [f"t{index}" for index in range(5)]
    config = make_config(DecodeMode.NO_INSERT)
    for _ in range(300):
        reference = [vocab[int(index)] for index in rng.integers(len(vocab), size=int(rng.integers(1, 13)))]
        phrases, position = [], 0
        while len(phrases) < 3:
            start = position + int(rng.integers(0, 3))
            end = start + int(rng.integers(1, 4))
            if end > len(reference):
                break
            phrases.append(reference[start:end])
            position = end

        result = decode(["src"], make_constraints(phrases), OraclePolicy(reference), config)

        assert result.output == reference
        assert result.terminated_by is Termination.FIXPOINT


def test_oracle_drops_constraints_missing_from_reference_unless_forced(make_config):
    constraints = make_constraints([["Term@@", "teil"]])
    reference = ["a", "b", "c"]

    inserted = decode([], constraints, OraclePolicy(reference), make_config(DecodeMode.CONSTRAINT_INSERTION))
    forced = decode([], constraints, OraclePolicy(reference), make_config(DecodeMode.NO_INSERT))

    assert inserted.output == reference
    assert forced.output == ["a", "b", "c", "Term@@", "teil"]


def test_random_policy_is_reproducible_per_source():
    policy = RandomPolicy(seed=1, vocab=["a", "b"])
    state = init_state(make_constraints([["k"]]))

    first = policy.begin(["x", "y"])
    second = policy.begin(["x", "y"])
    other = policy.begin(["z"])

    assert first is not policy
    assert first.delete(["x", "y"], state) == second.delete(["x", "y"], state)
    assert first.placeholders(["x", "y"], state) == second.placeholders(["x", "y"], state)
    assert len(other.placeholders(["z"], state)) == 2


def test_random_policy_answers_have_the_right_shape():
    policy = RandomPolicy(seed=4, vocab=["a", "b"], cap=2).begin(["s"])
    state = init_state(make_constraints([["k", "l"], ["m"]]))

    keep = policy.delete(["s"], state)
    counts = policy.placeholders(["s"], state)

    assert len(keep) == 5 and keep[0] and keep[-1]
    assert len(counts) == 4 and all(0 <= count <= 2 for count in counts)
    with pytest.raises(ContractViolation):
        RandomPolicy(seed=0, vocab=[])
    with pytest.raises(ContractViolation):
        RandomPolicy(seed=0, vocab=["a"], edit_rate=1.5)


def test_random_policy_idle_iteration_changes_nothing():
    policy = RandomPolicy(seed=2, vocab=["a"], delete_rate=1.0, insert_rate=1.0, edit_rate=0.0).begin(["s"])
    state = init_state(make_constraints([["k", "l"]]))

    assert policy.delete(["s"], state) == [True] * 4
    assert policy.placeholders(["s"], state) == [0, 0, 0]
    assert decode(["s"], [], policy, DecodeConfig(mode=DecodeMode.BASELINE)).iterations_used == 1


def test_random_policy_editing_iteration_inserts_somewhere():
    for seed in range(50):
        policy = RandomPolicy(seed=seed, vocab=["a"], insert_rate=0.0, cap=2, edit_rate=1.0).begin(["s"])
        state = init_state(make_constraints([["k"], ["l"]]))

        policy.delete(["s"], state)
        counts = policy.placeholders(["s"], state)

        assert sum(1 for count in counts if count) == 1
        assert 1 <= sum(counts) <= 2


def test_identity_and_adversarial_policies():
    state = init_state(make_constraints([["k"]]))

    assert IdentityPolicy().delete([], state) == [True, True, True]
    assert IdentityPolicy().placeholders([], state) == [0, 0]
    assert AdversarialPolicy().delete([], state) == [True, False, True]
    assert IdentityPolicy().begin([]) is not None


def test_noisy_oracle_adoption(make_config):
    constraints = make_constraints([["Term1"]])
    reference = ["a", "Term1", "b"]
    belief = ["a", "b"]

    adopting = NoisyOraclePolicy(reference, belief, vocab=["a", "b"], adopt_rate=1.0, noise_rate=0.0)
    stubborn = NoisyOraclePolicy(reference, belief, vocab=["a", "b"], adopt_rate=0.0, noise_rate=0.0)

    assert decode([], constraints, adopting, make_config(DecodeMode.CONSTRAINT_INSERTION)).output == reference
    assert decode([], constraints, stubborn, make_config(DecodeMode.CONSTRAINT_INSERTION)).output == belief
    assert decode([], constraints, adopting, make_config(DecodeMode.BASELINE)).output == belief


def test_noisy_oracle_instances_do_not_share_state():
    policy = NoisyOraclePolicy(["a"], ["b"], vocab=["c"], adopt_rate=1.0)
    state = init_state(make_constraints([["a"]]))

    instance = policy.begin(["s"])
    instance.target(state)

    assert instance.adopted is True
    assert policy.adopted is None
    assert policy.begin(["s"]).adopted is None
    assert instance.target(DecodeState.empty()) == ("a",)


def test_parse_policy_spec():
    assert parse_policy_spec("oracle:refs.txt") == ("oracle", "refs.txt")
    assert parse_policy_spec("random:7") == ("random", "7")
    assert parse_policy_spec("adversarial") == ("adversarial", None)
    with pytest.raises(ContractViolation):
        parse_policy_spec("beam:5")
    with pytest.raises(ContractViolation):
        parse_policy_spec("random")


def test_policy_factory_builds_per_sentence_policies():
    oracles = policy_factory("oracle:refs.txt", references=[["a"], ["b"]])
    shared = policy_factory("random:3", vocab=["x"])

    assert oracles(1).reference == ("b",)
    assert shared(0) is shared(5)
    assert isinstance(policy_factory("identity")(0), IdentityPolicy)
    with pytest.raises(ContractViolation):
        policy_factory("random:seven")
    with pytest.raises(ContractViolation):
        policy_factory("random:-1")
    with pytest.raises(ContractViolation):
        policy_factory("oracle:refs.txt")


def test_policy_constructors():
    assert oracle_policy(["a", "b"]).reference == ("a", "b")
    assert isinstance(adversarial_policy(), AdversarialPolicy)
    assert random_policy(2, ["a"]).seed == 2
