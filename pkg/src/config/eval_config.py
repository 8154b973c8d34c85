from functools import lru_cache
from typing import Literal

from dotenv import load_dotenv
from pydantic import Field, field_validator
from pydantic_settings import BaseSettings, SettingsConfigDict

from ..models.enums import MatchLevel

load_dotenv()


class EvalConfig(BaseSettings):
    """Settings for extraction filters, metrics and benchmarks."""

    bootstrap_samples: int = Field(1000, alias="EVAL_BOOTSTRAP_SAMPLES")
    freq_top_k: int = Field(500, alias="EVAL_FREQ_TOP_K")
    random_insert_cap: int = Field(3, alias="EVAL_RANDOM_INSERT_CAP")
    bench_repetitions: int = Field(3, alias="EVAL_BENCH_REPETITIONS")
    match_level: MatchLevel = Field(MatchLevel.SUBWORD, alias="EVAL_MATCH_LEVEL")
    bleu_smoothing: Literal["none", "floor", "add-k", "exp"] = Field("none", alias="EVAL_BLEU_SMOOTHING")

    @field_validator("bootstrap_samples")
    def validate_bootstrap_samples(cls, value: int) -> int:
        if value < 100:
            raise ValueError("EVAL_BOOTSTRAP_SAMPLES must be at least 100")
        return value

    @field_validator("freq_top_k")
    def validate_freq_top_k(cls, value: int) -> int:
        if value < 0:
            raise ValueError("EVAL_FREQ_TOP_K must not be negative")
        return value

    @field_validator("random_insert_cap")
    def validate_random_insert_cap(cls, value: int) -> int:
        if value < 1:
            raise ValueError("EVAL_RANDOM_INSERT_CAP must be at least 1")
        return value

    @field_validator("bench_repetitions")
    def validate_bench_repetitions(cls, value: int) -> int:
        if value < 3:
            raise ValueError("EVAL_BENCH_REPETITIONS must be at least 3")
        return value

    model_config = SettingsConfigDict(env_file=".env", extra="ignore", populate_by_name=True)


@lru_cache()
def get_eval_config() -> EvalConfig:
    """Return a cached evaluation configuration."""

    return EvalConfig()
