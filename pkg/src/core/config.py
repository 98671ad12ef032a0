"""
Configuration Management Module

This module handles the process-wide settings of the simulator: logging,
default seed, Monte-Carlo sample counts, quadrature tolerance and output
locations. Scenario parameters live in scenario config files (see
src/models/schemas.py), not here.

Author: Adryan R A
"""

from pydantic import Field, field_validator
from pydantic_settings import BaseSettings, SettingsConfigDict
from dotenv import load_dotenv


class Settings(BaseSettings):
    """
    Application settings and configuration management.

    Every field can be overridden through an environment variable of the same
    name or through a `.env` file in the working directory.
    """

    model_config = SettingsConfigDict(
        env_file=".env",
        env_file_encoding="utf-8",
        case_sensitive=True,
        extra="ignore",
    )

    # Application Configuration
    DEBUG: bool = Field(default=False, description="Enable debug mode")
    LOG_LEVEL: str = Field(default="INFO", description="Logging level")
    TOOL_VERSION: str = Field(default="1.0.0", description="Version stamped into every output file")

    # Monte-Carlo Configuration
    DEFAULT_SEED: int = Field(default=20170101, description="Seed used when neither config nor CLI gives one")
    DESK_SYMBOLS: int = Field(default=10_000, description="Symbols per estimate at desk scale")
    FULL_SYMBOLS: int = Field(default=100_000, description="Symbols per estimate with --paper-scale")
    BURST_SYMBOLS: int = Field(default=200, description="CP-OFDM symbols per Monte-Carlo trial")
    MIN_MC_SYMBOLS: int = Field(default=100, description="Smallest symbol count accepted by table estimation")
    MAX_THREADS: int = Field(default=1, description="Worker threads for trial execution")

    # Numerics Configuration
    QUAD_REL_TOL: float = Field(default=1e-6, description="Relative tolerance of adaptive quadrature")
    DB_FLOOR: float = Field(default=-120.0, description="Lowest dB value written to result files")

    # Output Configuration
    OUTPUT_DIR: str = Field(default="results", description="Default directory for run outputs")

    @field_validator("LOG_LEVEL")
    @classmethod
    def validate_log_level(cls, v: str) -> str:
        """Validate log level is one of the standard levels."""
        valid_levels = ["DEBUG", "INFO", "WARNING", "ERROR", "CRITICAL"]
        if v.upper() not in valid_levels:
            raise ValueError(f"LOG_LEVEL must be one of {valid_levels}")
        return v.upper()

    @field_validator("QUAD_REL_TOL")
    @classmethod
    def validate_rel_tol(cls, v: float) -> float:
        """Validate quadrature tolerance is a small positive number."""
        if not 0 < v < 1:
            raise ValueError("QUAD_REL_TOL must be between 0 and 1")
        return v

    @field_validator("DESK_SYMBOLS", "FULL_SYMBOLS", "BURST_SYMBOLS", "MIN_MC_SYMBOLS", "MAX_THREADS")
    @classmethod
    def validate_positive(cls, v: int) -> int:
        """Validate counts are strictly positive."""
        if v < 1:
            raise ValueError("counts must be positive")
        return v


def load_settings() -> Settings:
    """
    Load and return application settings.

    Returns:
        Settings: Configured application settings instance
    """
    load_dotenv()
    return Settings()


# Global settings instance
settings = load_settings()
