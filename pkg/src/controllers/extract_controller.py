"""``extract``: annotate a corpus with dictionary constraints."""

from __future__ import annotations

import argparse
from typing import Sequence

from loguru import logger

from ..config.run_config import RunConfig
from ..services.constraint_service import (
    extract_corpus,
    filter_frequent,
    load_dictionary,
    load_frequency_list,
    sample_dictionary,
    write_constraint_sets,
)
from ..utils.error_handler import ContractViolation, handle_cli_errors
from ..utils.helpers import log_execution, read_tokenized
from ..utils.subwords import load_bpe_codes


def register(subparsers: argparse._SubParsersAction, parents: Sequence[argparse.ArgumentParser]) -> None:
    parser = subparsers.add_parser(
        "extract",
        parents=list(parents),
        help="match dictionary terms and write constraints as JSON Lines",
    )
    parser.add_argument("--source", required=True, help="tokenized source sentences, one per line")
    parser.add_argument("--reference", help="tokenized references; keep only terms whose translation occurs there")
    parser.add_argument("--bpe-codes", help="subword-nmt merges used to segment target phrases")
    parser.add_argument("--output", required=True, help="constraints JSONL to write")
    parser.set_defaults(handler=run_extract)


@handle_cli_errors
@log_execution
def run_extract(args: argparse.Namespace) -> int:
    run = RunConfig.from_args(args)
    if run.dictionary is None:
        raise ContractViolation("extract needs a dictionary (--dict)")

    dictionary = load_dictionary(run.dictionary)
    if run.freq_list is not None:
        dictionary = filter_frequent(dictionary, load_frequency_list(run.freq_list), run.freq_top_k)
    if run.sample is not None:
        dictionary = sample_dictionary(dictionary, run.sample, run.seed)
    logger.info("Using {} dictionary entries", len(dictionary))

    sources = read_tokenized(args.source)
    references = read_tokenized(args.reference) if args.reference else None
    bpe = load_bpe_codes(args.bpe_codes) if args.bpe_codes else None

    sets, summary = extract_corpus(sources, references, dictionary, bpe)
    write_constraint_sets(args.output, sets)

    print(f"sentences: {summary.sentences}")
    print(f"sentences with constraints: {summary.constrained_sentences}")
    print(f"constraints: {summary.total_constraints}")
    print(f"average per constrained sentence: {summary.average_per_constrained_sentence:.2f}")
    print(f"unique source terms: {summary.unique_source_terms}")
    return 0
