"""Resolved settings of one CLI invocation.

Command-line flags win over environment configuration, which wins over the
built-in defaults.
"""

from __future__ import annotations

from argparse import Namespace
from pathlib import Path
from typing import Any, Optional

from pydantic import BaseModel, Field, field_validator

from ..models.enums import DecodeMode
from .app_config import get_app_config
from .decode_config import DecodeConfig, get_decode_config
from .eval_config import get_eval_config


class RunConfig(BaseModel):
    """Shared flags of every subcommand, after merging with configuration."""

    command: str
    mode: DecodeMode
    max_iterations: int = Field(..., gt=0)
    max_length: int = Field(..., ge=2)
    seed: int = Field(0, ge=0)
    workers: int = Field(1, gt=0)
    dictionary: Optional[Path] = None
    freq_list: Optional[Path] = None
    freq_top_k: int = Field(500, ge=0)
    sample: Optional[float] = Field(None, gt=0.0, le=1.0)
    trace: Optional[Path] = None

    @field_validator("mode", mode="before")
    @classmethod
    def parse_mode(cls, value: DecodeMode | str) -> DecodeMode:
        return value if isinstance(value, DecodeMode) else DecodeMode(value)

    @classmethod
    def from_args(cls, args: Namespace) -> "RunConfig":
        app_config = get_app_config()
        decode_config = get_decode_config()
        eval_config = get_eval_config()

        def pick(name: str, default: Any) -> Any:
            value = getattr(args, name, None)
            return default if value is None else value

        return cls(
            command=args.command,
            mode=pick("mode", decode_config.mode),
            max_iterations=pick("max_iters", decode_config.max_iterations),
            max_length=decode_config.max_length,
            seed=pick("seed", app_config.seed),
            workers=pick("workers", app_config.workers),
            dictionary=pick("dict", None),
            freq_list=pick("freq_list", None),
            freq_top_k=pick("freq_top_k", eval_config.freq_top_k),
            sample=pick("sample", None),
            trace=pick("trace", None),
        )

    def decode_config(self, mode: Optional[DecodeMode] = None) -> DecodeConfig:
        return DecodeConfig(
            mode=mode or self.mode,
            max_iterations=self.max_iterations,
            max_length=self.max_length,
        )
