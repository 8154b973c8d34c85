"""``decode``: run constrained decoding over a corpus."""

from __future__ import annotations

import argparse
import json
from collections import Counter
from pathlib import Path
from typing import Sequence

from loguru import logger

from ..config.eval_config import get_eval_config
from ..config.run_config import RunConfig
from ..models.decode_result import DecodeResult
from ..models.enums import Termination
from ..models.term_dictionary import ConstraintSet
from ..policies.factory import POLICY_SPECS, parse_policy_spec, policy_factory
from ..services.constraint_service import read_constraint_sets
from ..services.decoder_service import DecodeItem, decode_corpus
from ..utils.error_handler import ContractViolation, handle_cli_errors
from ..utils.helpers import log_execution, read_tokenized, write_tokenized


def register(subparsers: argparse._SubParsersAction, parents: Sequence[argparse.ArgumentParser]) -> None:
    parser = subparsers.add_parser(
        "decode",
        parents=list(parents),
        help="decode source sentences under lexical constraints",
    )
    parser.add_argument("--source", required=True, help="tokenized source sentences, one per line")
    parser.add_argument("--constraints", help="constraints JSONL (one record per source sentence)")
    parser.add_argument("--policy", required=True, help=f"decoding policy: {POLICY_SPECS}")
    parser.add_argument("--vocab", help="fill vocabulary of the random policy, one token per line")
    parser.add_argument("--output", required=True, help="hypotheses to write, one per line")
    parser.set_defaults(handler=run_decode)


def load_items(
    sources: list[list[str]],
    constraint_sets: list[ConstraintSet] | None,
    policy_spec: str,
    vocab_path: str | None = None,
) -> list[DecodeItem]:
    """Pair every source with its constraints and policy."""
    if constraint_sets is not None and len(constraint_sets) != len(sources):
        raise ContractViolation(f"{len(sources)} source sentences but {len(constraint_sets)} constraint records")

    kind, argument = parse_policy_spec(policy_spec)
    references = None
    if kind == "oracle":
        references = read_tokenized(argument or "")
        if len(references) != len(sources):
            raise ContractViolation(f"{len(sources)} source sentences but {len(references)} oracle references")
    if vocab_path:
        vocab = [line.strip() for line in Path(vocab_path).read_text(encoding="utf-8").splitlines() if line.strip()]
    else:
        vocab = sorted({token for sentence in sources for token in sentence})
    policies = policy_factory(
        policy_spec,
        references=references,
        vocab=vocab,
        insert_cap=get_eval_config().random_insert_cap,
    )

    items = []
    for index, source in enumerate(sources):
        constraints = constraint_sets[index].to_constraints() if constraint_sets is not None else []
        items.append(DecodeItem(tuple(source), tuple(constraints), policies(index)))
    return items


def write_trace(path: Path, results: Sequence[DecodeResult]) -> None:
    """Write every traced state as a JSON Lines record tagged with its sentence."""
    with open(path, "w", encoding="utf-8") as handle:
        for sentence, result in enumerate(results):
            for state in result.trace or []:
                record = {"sentence": sentence, **state.to_record()}
                handle.write(json.dumps(record, ensure_ascii=False) + "\n")


@handle_cli_errors
@log_execution
def run_decode(args: argparse.Namespace) -> int:
    run = RunConfig.from_args(args)
    sources = read_tokenized(args.source)
    constraint_sets = read_constraint_sets(args.constraints) if args.constraints else None
    items = load_items(sources, constraint_sets, args.policy, args.vocab)

    results = decode_corpus(items, run.decode_config(), run.workers, trace=run.trace is not None)
    write_tokenized(args.output, (result.output for result in results))
    if run.trace is not None:
        write_trace(run.trace, results)

    terminations = Counter(result.terminated_by for result in results)
    if terminations[Termination.LENGTH_LIMIT]:
        logger.warning("{} sentences hit the length limit", terminations[Termination.LENGTH_LIMIT])
    logger.info(
        "Decoded {} sentences in mode {} ({})",
        len(results),
        run.mode.value,
        ", ".join(f"{reason.value}: {count}" for reason, count in sorted(terminations.items())),
    )
    return 0
