"""Decoding throughput per mode.

Only the decode loop is timed: items (sources, decoder constraints and
policy) are built before the clock starts, and nothing is written.
Repetitions interleave the modes so slow drift of the machine affects all
of them alike.
"""

from __future__ import annotations

import gc
import time
from typing import Sequence

import numpy as np
from loguru import logger

from ..config.decode_config import DecodeConfig
from ..models.enums import DecodeMode
from ..models.eval_report import BenchReport, ModeSpeed
from ..utils.error_handler import EvalError
from .decoder_service import DecodeItem, decode_corpus

ALL_MODES = (
    DecodeMode.BASELINE,
    DecodeMode.CONSTRAINT_INSERTION,
    DecodeMode.NO_DELETE,
    DecodeMode.NO_INSERT,
)


def _time_run(items: Sequence[DecodeItem], config: DecodeConfig, workers: int) -> float:
    # garbage collection stays off while the clock runs
    collecting = gc.isenabled()
    gc.disable()
    try:
        started = time.perf_counter()
        decode_corpus(items, config, workers)
        elapsed = time.perf_counter() - started
    finally:
        if collecting:
            gc.enable()
    return len(items) / elapsed if elapsed > 0 else float("inf")


def bench_throughput(
    modes: Sequence[DecodeMode],
    items: Sequence[DecodeItem],
    config: DecodeConfig,
    *,
    policy_name: str = "policy",
    repetitions: int = 3,
    workers: int = 1,
    warmup: int = 50,
) -> BenchReport:
    """Median sentences per second of every mode over ``repetitions`` runs.

    Each item carries its own policy.  Overhead is the slowdown of each
    mode's median relative to baseline (or to the first mode when baseline
    is not benchmarked), in percent.
    """
    if not items:
        raise EvalError("cannot benchmark an empty corpus")
    if repetitions < 3:
        raise EvalError(f"need at least 3 repetitions, got {repetitions}")
    if not modes:
        raise EvalError("no modes to benchmark")

    configs = {mode: config.with_mode(mode) for mode in modes}
    for mode in modes:
        decode_corpus(items[:warmup], configs[mode])

    runs: dict[DecodeMode, list[float]] = {mode: [] for mode in modes}
    for repetition in range(repetitions):
        for mode in modes:
            speed = _time_run(items, configs[mode], workers)
            runs[mode].append(speed)
            logger.debug("Run {} mode {}: {:.2f} sent/sec", repetition + 1, mode.value, speed)

    medians = {mode: float(np.median(values)) for mode, values in runs.items()}
    reference = medians.get(DecodeMode.BASELINE, medians[modes[0]])
    rows = []
    for mode in modes:
        overhead = (reference - medians[mode]) / reference * 100.0 if reference > 0 else 0.0
        rows.append(
            ModeSpeed(mode=mode.value, label=mode.label, runs=runs[mode], median=medians[mode], overhead_pct=overhead)
        )
        logger.info("{}: {:.2f} sent/sec (overhead {:+.2f}%)", mode.label, medians[mode], overhead)

    return BenchReport(
        policy=policy_name,
        sentences=len(items),
        repetitions=repetitions,
        workers=workers,
        modes=rows,
    )
