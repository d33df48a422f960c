"""
Configuration management for ordlab.

Flat settings read from the environment (ORDLAB_*) or a .env file, plus the
validated per-invocation SessionConfig the CLI builds from them.
"""

from functools import lru_cache
from typing import Literal

from pydantic import BaseModel, Field, field_validator
from pydantic_settings import BaseSettings, SettingsConfigDict


OutputFormat = Literal["json", "csv", "text"]


# =============================================================================
# SETTINGS
# =============================================================================

class Settings(BaseSettings):
    """Library and CLI defaults loaded from environment variables."""

    model_config = SettingsConfigDict(
        env_prefix="ORDLAB_",
        env_file=".env",
        env_file_encoding="utf-8",
        extra="ignore",
    )

    # Group
    default_n: int = 2

    # Reals - digits refined before a stream comparison gives up
    digit_budget: int = 256

    # Ball radii used by the checks
    default_radius: int = 5
    distinctness_radius: int = 8

    # Identification
    identify_radius: int = 8
    identify_precision: int = 4
    stabilizer_depth: int = 64  # conjugation powers tried before accepting a rational base

    # Realizations
    realization_stage: int = 64

    # Reproducibility / output
    seed: int = 0
    output_format: OutputFormat = "json"
    log_level: str = "WARNING"


@lru_cache()
def get_settings() -> Settings:
    """Get cached settings instance."""
    return Settings()


# Global settings instance
settings = get_settings()


# =============================================================================
# SESSION CONFIG
# =============================================================================

class SessionConfig(BaseModel):
    """Validated parameters of one CLI invocation."""

    n: int = Field(default=2, ge=2)
    budget: int = Field(default=256, ge=16)
    radius: int = Field(default=5, ge=0)
    seed: int = 0
    output_format: OutputFormat = "json"

    @field_validator("output_format", mode="before")
    @classmethod
    def _lower_format(cls, value: str) -> str:
        return value.lower() if isinstance(value, str) else value

    @classmethod
    def from_settings(cls, **overrides) -> "SessionConfig":
        """Build a session from Settings, letting non-None overrides win."""
        current = get_settings()
        values = {
            "n": current.default_n,
            "budget": current.digit_budget,
            "radius": current.default_radius,
            "seed": current.seed,
            "output_format": current.output_format,
        }
        values.update({key: value for key, value in overrides.items() if value is not None})
        return cls(**values)
