"""Command-line entry point.

This module builds the argument parser, configures logging and dispatches
to the subcommand controllers.  The ``levt-lexicon`` console script points
to :func:`main`.
"""

from __future__ import annotations

import argparse
import sys
from typing import Optional, Sequence

from .controllers import bench_controller, decode_controller, eval_controller, extract_controller
from .models.enums import DecodeMode
from .utils.logger import setup_logging


def shared_arguments() -> argparse.ArgumentParser:
    """Flags every subcommand accepts."""
    shared = argparse.ArgumentParser(add_help=False)
    group = shared.add_argument_group("shared options")
    group.add_argument("--mode", choices=[mode.value for mode in DecodeMode], help="constraint enforcement mode")
    group.add_argument("--max-iters", dest="max_iters", type=int, help="refinement iteration cap (default 10)")
    group.add_argument("--seed", type=int, help="seed of every random draw (default 0)")
    group.add_argument("--workers", type=int, help="decoding processes (default 1)")
    group.add_argument("--dict", help="dictionary TSV: source phrase<TAB>target phrase")
    group.add_argument("--freq-list", dest="freq_list", help="ranked word list used to drop frequent terms")
    group.add_argument("--freq-top-k", dest="freq_top_k", type=int, help="frequent words to drop (default 500)")
    group.add_argument("--sample", type=float, help="fraction of dictionary entries to sample")
    group.add_argument("--trace", help="write per-iteration decode states as JSON Lines")
    group.add_argument(
        "--log-level",
        dest="log_level",
        type=str.upper,
        choices=["TRACE", "DEBUG", "INFO", "SUCCESS", "WARNING", "ERROR", "CRITICAL"],
        help="override LOG_LEVEL",
    )
    return shared


def build_parser() -> argparse.ArgumentParser:
    """Create the parser with every subcommand registered."""
    parser = argparse.ArgumentParser(
        prog="levt-lexicon",
        description="Lexically constrained Levenshtein Transformer decoding toolkit.",
    )
    subparsers = parser.add_subparsers(dest="command", required=True)
    parents = [shared_arguments()]
    for controller in (extract_controller, decode_controller, eval_controller, bench_controller):
        controller.register(subparsers, parents)
    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    setup_logging(args.log_level)
    return args.handler(args)


if __name__ == "__main__":
    sys.exit(main())
