from functools import lru_cache

from dotenv import load_dotenv
from pydantic import Field, field_validator
from pydantic_settings import BaseSettings, SettingsConfigDict

from ..models.enums import DecodeMode

load_dotenv()

DEFAULT_MAX_ITERATIONS = 10
DEFAULT_MAX_LENGTH = 200


class DecodeConfig(BaseSettings):
    """Settings controlling one constrained decoding run."""

    mode: DecodeMode = Field(DecodeMode.NO_INSERT, alias="DECODE_MODE")
    max_iterations: int = Field(DEFAULT_MAX_ITERATIONS, alias="DECODE_MAX_ITERATIONS")
    max_length: int = Field(DEFAULT_MAX_LENGTH, alias="DECODE_MAX_LENGTH")

    @field_validator("mode", mode="before")
    @classmethod
    def parse_mode(cls, value: DecodeMode | str) -> DecodeMode:
        if isinstance(value, DecodeMode):
            return value
        try:
            return DecodeMode(value)
        except ValueError as exc:
            choices = ", ".join(mode.value for mode in DecodeMode)
            raise ValueError(f"DECODE_MODE must be one of: {choices}") from exc

    @field_validator("max_iterations")
    def validate_max_iterations(cls, value: int) -> int:
        if value <= 0:
            raise ValueError("DECODE_MAX_ITERATIONS must be positive")
        return value

    @field_validator("max_length")
    def validate_max_length(cls, value: int) -> int:
        # <s> and </s> alone take two slots
        if value < 2:
            raise ValueError("DECODE_MAX_LENGTH must be at least 2")
        return value

    def with_mode(self, mode: DecodeMode) -> "DecodeConfig":
        """Return a copy of this configuration running in ``mode``."""
        return self.model_copy(update={"mode": mode})

    model_config = SettingsConfigDict(env_file=".env", extra="ignore", populate_by_name=True)


@lru_cache()
def get_decode_config() -> DecodeConfig:
    """Return a cached decoding configuration."""

    return DecodeConfig()
