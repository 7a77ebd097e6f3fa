"""Configuration settings for the doped Clifford decoder."""

from pydantic import Field
from pydantic_settings import BaseSettings, SettingsConfigDict


class Settings(BaseSettings):
    """Configuration settings for the decoder library, CLI and MCP server."""

    # Logging
    log_level: str = Field(
        default="INFO",
        description="Logging level"
    )

    # Experiment output
    decoder_output_dir: str = Field(
        default="results",
        description="Default directory for experiment CSV and sidecar files"
    )
    default_seed: int = Field(
        default=2024,
        description="Seed used when no explicit seed is given"
    )
    worker_count: int = Field(
        default=1,
        description="Number of worker processes for experiment fan-out (0 = all cores)"
    )

    # Oracle
    oracle_mode: str = Field(
        default="exact",
        pattern="^(exact|shots)$",
        description="Default oracle mode"
    )
    dense_max_qubits: int = Field(
        default=12,
        description="Largest qubit count accepted by the dense simulator"
    )
    fail_probability: float = Field(
        default=1e-6,
        gt=0.0,
        lt=1.0,
        description="Failure probability used for the Hoeffding shot count"
    )

    # Learning
    decompose_retries: int = Field(
        default=3,
        description="Fresh-seed retries when the decomposition check fails"
    )

    # Hayden-Preskill averages
    hp_exact_max_qubits: int = Field(
        default=6,
        description="Largest |D| averaged by exact enumeration"
    )
    hp_monte_carlo_samples: int = Field(
        default=4096,
        description="Samples per average when the Monte Carlo fallback is used"
    )
    enumeration_limit: int = Field(
        default=2**20,
        description="Maximum number of terms in an enumerated Pauli sum"
    )

    # Development
    debug: bool = Field(
        default=False,
        description="Enable debug mode"
    )

    # Pydantic v2 style configuration
    model_config = SettingsConfigDict(
        env_file=".env",
        env_file_encoding="utf-8",
        case_sensitive=False,
        extra="ignore",
    )


# Global settings instance
settings = Settings()
