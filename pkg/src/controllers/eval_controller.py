"""``eval``: score hypotheses for terminology use and BLEU."""

from __future__ import annotations

import argparse
from pathlib import Path
from typing import Sequence

from ..config.eval_config import get_eval_config
from ..config.run_config import RunConfig
from ..models.enums import MatchLevel
from ..models.term_dictionary import ConstraintSet
from ..services.constraint_service import read_constraint_sets
from ..services.evaluation_service import evaluate, format_report_table
from ..services.metrics import bootstrap_significance
from ..utils.error_handler import EvalError, handle_cli_errors
from ..utils.helpers import log_execution, read_tokenized


def register(subparsers: argparse._SubParsersAction, parents: Sequence[argparse.ArgumentParser]) -> None:
    parser = subparsers.add_parser(
        "eval",
        parents=list(parents),
        help="report Term%%, BLEU and constraint order for a hypothesis file",
    )
    parser.add_argument("--hyps", required=True, help="hypotheses, one tokenized sentence per line")
    parser.add_argument("--refs", required=True, help="references, one tokenized sentence per line")
    parser.add_argument("--constraints", help="constraints JSONL; without it no sentence is constrained")
    parser.add_argument("--bootstrap", nargs=2, metavar=("A", "B"), help="test whether system A beats system B")
    parser.add_argument("--bootstrap-samples", type=int, help="bootstrap resamples (default from EVAL_BOOTSTRAP_SAMPLES)")
    parser.add_argument("--level", choices=[level.value for level in MatchLevel], help="constraint matching level")
    parser.add_argument("--smooth", choices=["none", "floor", "add-k", "exp"], help="BLEU smoothing method")
    parser.add_argument("--system", default="system", help="row label of the report")
    parser.add_argument("--json", help="also write the report as JSON to this path")
    parser.set_defaults(handler=run_eval)


@handle_cli_errors
@log_execution
def run_eval(args: argparse.Namespace) -> int:
    run = RunConfig.from_args(args)
    eval_config = get_eval_config()
    level = MatchLevel(args.level) if args.level else eval_config.match_level
    smooth = args.smooth or eval_config.bleu_smoothing

    hyps = read_tokenized(args.hyps)
    refs = read_tokenized(args.refs)
    if args.constraints:
        constraint_sets = read_constraint_sets(args.constraints)
    else:
        constraint_sets = [ConstraintSet(sentence_id=index) for index in range(len(hyps))]

    p_value = None
    if args.bootstrap:
        system_a, system_b = (read_tokenized(path) for path in args.bootstrap)
        if len(system_a) != len(refs) or len(system_b) != len(refs):
            raise EvalError("bootstrap systems and references differ in size")
        samples = args.bootstrap_samples or eval_config.bootstrap_samples
        p_value = bootstrap_significance(system_a, system_b, refs, samples=samples, seed=run.seed, smooth=smooth)

    report = evaluate(hyps, refs, constraint_sets, system=args.system, level=level, smooth=smooth, p_value=p_value)
    if args.json:
        Path(args.json).write_text(report.model_dump_json(indent=2) + "\n", encoding="utf-8")

    print(format_report_table([report]))
    print(f"order rate: {report.order_rate * 100:.2f}%")
    if p_value is not None:
        print(f"bootstrap p-value: {p_value:.4f}")
    return 0
