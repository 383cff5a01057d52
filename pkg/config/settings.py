"""
Configuration settings for the matrix prover.
Handles environment variables and provides typed configuration.
"""

from typing import Optional

try:
    from pydantic import Field
    from pydantic_settings import BaseSettings, SettingsConfigDict
except ImportError:
    raise ImportError(
        "Please install pydantic-settings: pip install pydantic-settings"
    )


VERSION = "0.3.0"


class Settings(BaseSettings):
    """Prover settings loaded from MATRIXPROVE_* environment variables."""

    model_config = SettingsConfigDict(
        env_prefix="MATRIXPROVE_",
        env_file=".env",
        env_file_encoding="utf-8",
        case_sensitive=False,
        extra="ignore",
    )

    # Core
    environment: str = Field(default="development")
    log_level: str = Field(default="WARNING")
    log_format: str = Field(default="text")
    log_dir: Optional[str] = Field(default=None)

    # Search
    mode: str = Field(default="intuitionistic")
    timeout_seconds: float = Field(default=60.0, gt=0)
    depth_start: int = Field(default=1, ge=1)
    depth_max: int = Field(default=32, ge=1)
    copy_cap: int = Field(default=5, ge=1)
    prefix_alternative_cap: int = Field(default=16, ge=1)
    restricted_backtracking: bool = Field(default=False)

    # Checking
    path_bound: int = Field(default=2 ** 20, ge=1)
    sequent_backtrack_depth: int = Field(default=4, ge=0)
    atom_bound: int = Field(default=20, ge=1)

    # Reserved for randomized strategies; the search is deterministic.
    seed: Optional[int] = Field(default=None)


# Global settings instance
settings = Settings()


def get_settings() -> Settings:
    """Get the global settings instance."""
    return settings


def is_test() -> bool:
    """Check if running under the test suite."""
    return settings.environment.lower() == "test"
