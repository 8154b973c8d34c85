"""System evaluation, the four-mode ablation and report tables."""

from __future__ import annotations

import time
from typing import Optional, Sequence

from loguru import logger

from ..config.decode_config import DecodeConfig
from ..models.enums import DecodeMode, MatchLevel
from ..models.eval_report import BenchReport, EvalReport
from ..models.term_dictionary import ConstraintSet
from ..policies.oracle import NoisyOraclePolicy
from ..utils.error_handler import EvalError
from .benchmark_service import ALL_MODES
from .decoder_service import DecodeItem, decode_corpus
from .metrics import corpus_bleu, order_rate, term_usage
from .synthetic_corpus import SyntheticCorpus


def evaluate(
    hyps: Sequence[Sequence[str]],
    refs: Sequence[Sequence[str]],
    constraint_sets: Sequence[ConstraintSet],
    *,
    system: str = "system",
    level: MatchLevel = MatchLevel.SUBWORD,
    smooth: str = "none",
    speed: Optional[float] = None,
    p_value: Optional[float] = None,
) -> EvalReport:
    """Score one system output against references and constraints."""
    if len(hyps) != len(refs):
        raise EvalError(f"{len(hyps)} hypotheses but {len(refs)} references")
    if len(constraint_sets) != len(hyps):
        raise EvalError(f"{len(hyps)} hypotheses but {len(constraint_sets)} constraint records")

    constrained = [index for index, constraints in enumerate(constraint_sets) if len(constraints)]
    bleu_constrained = None
    if constrained:
        bleu_constrained = corpus_bleu([hyps[i] for i in constrained], [refs[i] for i in constrained], smooth)

    report = EvalReport(
        system=system,
        term_usage=term_usage(hyps, constraint_sets, level),
        bleu=corpus_bleu(hyps, refs, smooth),
        bleu_constrained=bleu_constrained,
        order_rate=order_rate(constraint_sets, hyps, level),
        speed=speed,
        p_value=p_value,
        sentences=len(hyps),
        constrained_sentences=len(constrained),
        match_level=level,
    )
    logger.debug("Evaluated {}: Term% {:.2f}, BLEU {:.2f}", system, report.term_usage * 100, report.bleu)
    return report


def run_mode_ablation(
    corpus: SyntheticCorpus,
    config: DecodeConfig,
    seed: int = 0,
    *,
    modes: Sequence[DecodeMode] = ALL_MODES,
    workers: int = 1,
    adopt_rate: float = 0.7,
    noise_rate: float = 0.1,
) -> list[EvalReport]:
    """Decode ``corpus`` in every mode with the seeded noisy oracle.

    Each sentence's policy aims at the belief translation and, once it sees
    constraint tokens, adopts the reference with probability ``adopt_rate``.
    """
    policies = [
        NoisyOraclePolicy(
            sentence.reference,
            sentence.belief,
            corpus.vocab,
            seed=seed,
            adopt_rate=adopt_rate,
            noise_rate=noise_rate,
        )
        for sentence in corpus.sentences
    ]
    items = [
        DecodeItem(sentence.source, tuple(sentence.constraints.to_constraints()), policy)
        for sentence, policy in zip(corpus.sentences, policies)
    ]

    reports: list[EvalReport] = []
    for mode in modes:
        started = time.perf_counter()
        results = decode_corpus(items, config.with_mode(mode), workers)
        elapsed = time.perf_counter() - started
        report = evaluate(
            [result.output for result in results],
            corpus.references,
            corpus.constraint_sets,
            system=mode.label,
            speed=len(items) / elapsed if elapsed > 0 else None,
        )
        logger.info("{}: Term% {:.2f}, BLEU {:.2f}", mode.label, report.term_usage * 100, report.bleu)
        reports.append(report)
    return reports


def _cell(value: Optional[float], scale: float = 1.0) -> str:
    return "-" if value is None else f"{value * scale:.2f}"


def format_report_table(reports: Sequence[EvalReport]) -> str:
    """Plain-text table: System, Term%, BLEU Full, BLEU Constr., sent/sec."""
    header = ("System", "Term%", "BLEU Full", "BLEU Constr.", "sent/sec")
    rows = [
        (
            report.system,
            _cell(report.term_usage, 100.0),
            _cell(report.bleu),
            _cell(report.bleu_constrained),
            _cell(report.speed),
        )
        for report in reports
    ]
    return _render(header, rows)


def format_bench_table(report: BenchReport) -> str:
    """Plain-text table: System, sent/sec (median), Overhead%."""
    header = ("System", "sent/sec", "Overhead%")
    rows = [(row.label, f"{row.median:.2f}", f"{row.overhead_pct:+.2f}") for row in report.modes]
    return _render(header, rows)


def _render(header: Sequence[str], rows: Sequence[Sequence[str]]) -> str:
    widths = [max(len(str(row[column])) for row in [header, *rows]) for column in range(len(header))]
    lines = []
    for line in [header, *rows]:
        cells = [cell.ljust(width) if column == 0 else cell.rjust(width) for column, (cell, width) in enumerate(zip(line, widths))]
        lines.append("  ".join(cells))
    lines.insert(1, "  ".join("-" * width for width in widths))
    return "\n".join(line.rstrip() for line in lines)
