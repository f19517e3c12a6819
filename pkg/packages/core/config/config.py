"""Configuration system using Pydantic Settings."""

from typing import Optional

from pydantic import BaseModel, ConfigDict, Field
from pydantic_settings import BaseSettings, SettingsConfigDict


class Tolerances(BaseModel):
    """Numerical contracts shared by every module."""

    model_config = ConfigDict(frozen=True, extra="forbid")

    trace: float = Field(default=1e-10, gt=0, description="Allowed |trace - 1| at construction")
    hermiticity: float = Field(
        default=1e-12, gt=0, description="Allowed max |rho - rho^dagger|"
    )
    positivity: float = Field(
        default=1e-9, gt=0, description="Allowed magnitude of negative eigenvalues"
    )
    unitarity: float = Field(
        default=1e-8, gt=0, description="Allowed column-norm error of displacement matrices"
    )
    truncation: float = Field(
        default=1e-6,
        gt=0,
        description="Probability mass one operation may push past the Fock cut-off",
    )
    integration_drift: float = Field(
        default=1e-7, gt=0, description="Allowed trace drift of the integrator"
    )
    series_term: float = Field(
        default=1e-16, gt=0, description="Stop superoperator series below this term norm"
    )
    series_target: float = Field(
        default=1e-12, gt=0, description="Target for the adaptive weighted-series length"
    )
    series_tail: float = Field(
        default=1e-10, gt=0, description="Tail estimate above which the weighted sum fails"
    )
    singular_weight: float = Field(
        default=1e-12, gt=0, description="Minimum |denominator| of the weight function"
    )
    clamp: float = Field(
        default=1e-12, gt=0, description="Negative round-off probabilities clamped to zero"
    )
    probe_roundtrip: float = Field(
        default=1e-6, gt=0, description="Allowed probe synthesis/inversion mismatch"
    )


class Settings(BaseSettings):
    """Process-wide settings, read from the environment and .env."""

    model_config = SettingsConfigDict(
        env_file=".env",
        env_file_encoding="utf-8",
        env_prefix="CAVITY_RECON_",
        env_nested_delimiter="__",
        extra="ignore",
        case_sensitive=False,
    )

    app_name: str = Field(default="cavity-recon")
    log_level: str = Field(default="INFO")
    log_colors: bool = Field(default=True)
    threads: int = Field(default=0, ge=0, description="Worker threads for scans (0 = auto)")
    strong_coupling_ratio: float = Field(
        default=10.0,
        gt=0,
        description="Minimum lambda/gamma for the probe to count as strong coupling",
    )
    tolerances: Tolerances = Field(default_factory=Tolerances)


# Global settings instance
_settings: Optional[Settings] = None


def get_settings() -> Settings:
    """Get or create the global settings instance.

    Returns:
        The global Settings instance
    """
    global _settings
    if _settings is None:
        _settings = Settings()
    return _settings


def init_settings(**overrides: object) -> Settings:
    """Initialize (or re-initialize) the settings at application startup.

    Args:
        **overrides: Field values taking precedence over the environment

    Returns:
        The initialized Settings instance
    """
    global _settings
    _settings = Settings(**overrides)  # type: ignore[arg-type]
    return _settings


def resolve_tolerances(tolerances: Optional[Tolerances] = None) -> Tolerances:
    """Return the given tolerances or the process-wide defaults."""
    return tolerances if tolerances is not None else get_settings().tolerances
