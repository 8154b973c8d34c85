"""``bench``: decoding speed per mode, and the mode ablation."""

from __future__ import annotations

import argparse
import json
from pathlib import Path
from typing import Sequence

from ..config.eval_config import get_eval_config
from ..config.run_config import RunConfig
from ..models.enums import DecodeMode
from ..policies.factory import POLICY_SPECS, parse_policy_spec, policy_factory
from ..services.benchmark_service import ALL_MODES, bench_throughput
from ..services.constraint_service import read_constraint_sets
from ..services.decoder_service import DecodeItem
from ..services.evaluation_service import format_bench_table, format_report_table, run_mode_ablation
from ..services.synthetic_corpus import build_synthetic_corpus
from ..utils.error_handler import ContractViolation, handle_cli_errors
from ..utils.helpers import log_execution, read_tokenized
from .decode_controller import load_items


def register(subparsers: argparse._SubParsersAction, parents: Sequence[argparse.ArgumentParser]) -> None:
    parser = subparsers.add_parser(
        "bench",
        parents=list(parents),
        help="measure sentences per second in every mode",
    )
    parser.add_argument("--synthetic", type=int, default=10000, help="size of the synthetic corpus (default 10000)")
    parser.add_argument("--source", help="benchmark on this source file instead of a synthetic corpus")
    parser.add_argument("--constraints", help="constraints JSONL for --source")
    parser.add_argument("--policy", default="identity", help=f"decoding policy: {POLICY_SPECS}")
    parser.add_argument(
        "--modes",
        nargs="+",
        choices=[mode.value for mode in DecodeMode],
        help="modes to compare (default: all four)",
    )
    parser.add_argument("--repetitions", type=int, help="timed runs per mode (default from EVAL_BENCH_REPETITIONS)")
    parser.add_argument("--ablation", action="store_true", help="report Term%% and BLEU per mode with the noisy oracle")
    parser.add_argument("--json", help="also write the report as JSON to this path")
    parser.set_defaults(handler=run_bench)


def synthetic_items(size: int, seed: int, policy_spec: str) -> list[DecodeItem]:
    corpus = build_synthetic_corpus(size, seed)
    kind, _ = parse_policy_spec(policy_spec)
    policies = policy_factory(
        policy_spec,
        references=corpus.references if kind == "oracle" else None,
        vocab=corpus.vocab,
        insert_cap=get_eval_config().random_insert_cap,
    )
    return [
        DecodeItem(sentence.source, tuple(sentence.constraints.to_constraints()), policies(index))
        for index, sentence in enumerate(corpus.sentences)
    ]


@handle_cli_errors
@log_execution
def run_bench(args: argparse.Namespace) -> int:
    run = RunConfig.from_args(args)
    if args.synthetic <= 0:
        raise ContractViolation("--synthetic must be positive")

    if args.ablation:
        corpus = build_synthetic_corpus(args.synthetic, run.seed)
        reports = run_mode_ablation(corpus, run.decode_config(), run.seed, workers=run.workers)
        if args.json:
            payload = [report.model_dump(mode="json") for report in reports]
            Path(args.json).write_text(json.dumps(payload, indent=2) + "\n", encoding="utf-8")
        print(format_report_table(reports))
        return 0

    if args.source:
        sources = read_tokenized(args.source)
        constraint_sets = read_constraint_sets(args.constraints) if args.constraints else None
        items = load_items(sources, constraint_sets, args.policy)
    else:
        items = synthetic_items(args.synthetic, run.seed, args.policy)

    modes = [DecodeMode(mode) for mode in args.modes] if args.modes else list(ALL_MODES)
    report = bench_throughput(
        modes,
        items,
        run.decode_config(),
        policy_name=parse_policy_spec(args.policy)[0],
        repetitions=args.repetitions or get_eval_config().bench_repetitions,
        workers=run.workers,
    )
    if args.json:
        Path(args.json).write_text(report.model_dump_json(indent=2) + "\n", encoding="utf-8")
    print(format_bench_table(report))
    return 0
