from __future__ import annotations

import pytest
from loguru import logger
from pydantic import ValidationError

from src.config.decode_config import DecodeConfig
from src.config.eval_config import EvalConfig
from src.models.enums import DecodeMode
from src.models.eval_report import EvalReport
from src.policies.factory import policy_factory
from src.utils.error_handler import handle_cli_errors


def test_insert_cap_must_allow_an_insertion():
    with pytest.raises(ValidationError, match="EVAL_RANDOM_INSERT_CAP must be at least 1"):
        EvalConfig(EVAL_RANDOM_INSERT_CAP=0)

    config = EvalConfig(EVAL_RANDOM_INSERT_CAP=1)

    assert policy_factory("random:0", vocab=["a"], insert_cap=config.random_insert_cap)(0).cap == 1


def test_decode_config_accepts_mode_aliases():
    assert DecodeConfig(DECODE_MODE="no-insert").mode is DecodeMode.NO_INSERT
    with pytest.raises(ValidationError, match="DECODE_MODE must be one of"):
        DecodeConfig(DECODE_MODE="greedy")


@pytest.fixture
def messages():
    captured: list[str] = []
    sink = logger.add(captured.append, format="{message}", level="ERROR")
    yield captured
    logger.remove(sink)


def test_cli_errors_name_the_model_that_failed_validation(messages):
    @handle_cli_errors
    def run_with_bad_settings() -> int:
        EvalConfig(EVAL_BOOTSTRAP_SAMPLES=5)
        return 0

    @handle_cli_errors
    def run_with_bad_report() -> int:
        EvalReport(term_usage=1.0, bleu=101.0, order_rate=1.0)
        return 0

    assert run_with_bad_settings() == 1
    assert run_with_bad_report() == 1
    assert "run_with_bad_settings failed: invalid configuration (EvalConfig)" in messages[0]
    assert "run_with_bad_report failed: invalid data (EvalReport)" in messages[1]
