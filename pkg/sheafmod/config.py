"""Configuration management using pydantic-settings."""

from enum import Enum
from pathlib import Path

from dotenv import load_dotenv
from pydantic import Field
from pydantic_settings import BaseSettings, SettingsConfigDict

# Load .env file from current directory
_env_file = Path.cwd() / ".env"
if _env_file.exists():
    load_dotenv(_env_file)


class OutputFormat(str, Enum):
    """Report rendering for the CLI."""

    TEXT = "text"
    JSON = "json"


class LimitsConfig(BaseSettings):
    """Size guardrails for exhaustive constructions and checks."""

    model_config = SettingsConfigDict(env_prefix="SHEAFMOD_LIMITS_")

    max_poset: int = Field(default=16, ge=0, le=16, description="Largest poset for down-set frames")
    max_frame: int = Field(default=4096, ge=1, description="Largest frame carrier built as tables")
    max_free_carrier: int = Field(
        default=4096,
        ge=1,
        description="Bound on |B|^|S| for free modules and matrix modules",
    )
    max_generated_poset: int = Field(default=5, ge=0, le=8)
    max_elements: int = Field(
        default=10,
        ge=0,
        description="Bound on the category of elements of a generated presheaf",
    )
    max_fiber: int = Field(default=3, ge=0, le=3)
    max_generated_carrier: int = Field(
        default=64,
        ge=1,
        description="Generated étale carriers above this size are regenerated",
    )
    exhaustive_meet_carrier: int = Field(default=12, ge=0)
    random_meet_subsets: int = Field(default=10_000, ge=1)
    basis_search_carrier: int = Field(default=16, ge=0)
    exhaustive_subset_frame: int = Field(default=64, ge=0)
    regeneration_attempts: int = Field(default=50, ge=1)

    def capped(self, max_size: int | None) -> "LimitsConfig":
        """Lower the carrier guardrails to ``max_size``; raising them is refused."""
        if max_size is None:
            return self
        if max_size > self.max_frame:
            raise ValueError(f"--max-size may only lower the guardrail (at most {self.max_frame})")
        return self.model_copy(
            update={
                "max_frame": max_size,
                "max_free_carrier": min(self.max_free_carrier, max_size),
                "max_generated_carrier": min(self.max_generated_carrier, max_size),
            }
        )


class SuiteConfig(BaseSettings):
    """Defaults for the seeded verification battery."""

    model_config = SettingsConfigDict(env_prefix="SHEAFMOD_SUITE_")

    seed: int = Field(default=7, ge=0, lt=2**64)
    count: int = Field(default=100, ge=0)
    random_tables: int = Field(
        default=100,
        ge=0,
        description="Random function tables per instance for the adjointable/hom check",
    )


class AppConfig(BaseSettings):
    """Main application configuration."""

    model_config = SettingsConfigDict(
        env_file=".env",
        env_file_encoding="utf-8",
        env_prefix="SHEAFMOD_",
        extra="ignore",
    )

    limits: LimitsConfig = Field(default_factory=LimitsConfig)
    suite: SuiteConfig = Field(default_factory=SuiteConfig)

    output_format: OutputFormat = Field(default=OutputFormat.TEXT)
    verbose: bool = Field(default=False)


def load_config() -> AppConfig:
    """Load configuration from environment and .env file."""
    return AppConfig(
        limits=LimitsConfig(),
        suite=SuiteConfig(),
    )
