"""
config.py

PURPOSE: Configuration loading and settings management.
DEPENDENCIES: pydantic, pydantic-settings

ARCHITECTURE NOTES:
Configuration comes from multiple sources (in priority order):
1. CLI flags (highest priority)
2. Environment variables (FRACPK_*)
3. Config file (TOML, one table per command)
4. Defaults (lowest priority)

Tolerances live here so that every module reads them from one place;
results never depend on the thread count.
"""

import tomllib
from pathlib import Path
from typing import Any

from pydantic import Field, field_validator
from pydantic_settings import BaseSettings

from fracpoincare.errors import UsageError


class OpenTelemetrySettings(BaseSettings):
    """Settings for OpenTelemetry observability."""

    enabled: bool = Field(
        default=False,
        description="Enable OpenTelemetry tracing",
    )
    service_name: str = Field(
        default="fracpoincare",
        description="Service name for traces",
    )
    endpoint: str = Field(
        default="",
        description="OTLP endpoint (empty = console only)",
    )

    model_config = {"env_prefix": "FRACPK_OTEL_"}


class QuadratureSettings(BaseSettings):
    """Tolerances for adaptive quadrature."""

    epsrel: float = Field(
        default=1e-8,
        gt=0.0,
        lt=1.0,
        description="Relative tolerance for box-box energies",
    )
    epsabs: float = Field(
        default=0.0,
        ge=0.0,
        description="Absolute tolerance (0 = relative only)",
    )
    limit: int = Field(
        default=200,
        ge=10,
        description="Maximum subintervals per adaptive integration",
    )
    max_panels: int = Field(
        default=2**20,
        ge=1,
        description="Hard cap on total panels over one energy evaluation",
    )

    model_config = {"env_prefix": "FRACPK_QUAD_"}


class MonteCarloSettings(BaseSettings):
    """Defaults for the Monte Carlo oracle."""

    samples: int = Field(
        default=2**16,
        ge=1000,
        description="Samples per estimate",
    )
    stratification: int = Field(
        default=8,
        ge=1,
        le=64,
        description="Strata per axis",
    )

    model_config = {"env_prefix": "FRACPK_MC_"}


class EigenSettings(BaseSettings):
    """Eigensolver thresholds."""

    dense_limit: int = Field(
        default=4096,
        ge=1,
        description="Largest system solved with the dense generalized solver",
    )
    symmetry_rtol: float = Field(
        default=1e-12,
        gt=0.0,
        description="Relative asymmetry tolerated before rejecting a matrix",
    )
    ladder: tuple[int, ...] = Field(
        default=(64, 128, 256),
        description="Refinement ladder for Richardson extrapolation",
    )
    max_cells: int = Field(
        default=2**14,
        ge=16,
        description="Cell budget per domain in the asymptotics experiment",
    )
    iterative_tol: float = Field(
        default=1e-10,
        gt=0.0,
        description="Convergence tolerance of the shift-invert Lanczos solver",
    )

    model_config = {"env_prefix": "FRACPK_EIGEN_"}

    @field_validator("ladder")
    @classmethod
    def ladder_ascending(cls, v: tuple[int, ...]) -> tuple[int, ...]:
        """The ladder must be strictly increasing with at least three rungs."""
        if len(v) < 3 or any(b <= a for a, b in zip(v, v[1:], strict=False)):
            raise ValueError("ladder needs at least three strictly increasing cell counts")
        return v


class Settings(BaseSettings):
    """Main application settings."""

    data_dir: Path = Field(
        default_factory=lambda: Path.home() / ".fracpoincare",
        description="Directory for outputs and user caches",
    )
    constants_path: Path | None = Field(
        default=None,
        description="Override for the reference-constants cache file",
    )
    log_level: str = Field(
        default="WARNING",
        description="Logging level",
    )
    threads: int = Field(
        default=1,
        ge=1,
        le=256,
        description="Worker threads (never changes results)",
    )
    seed: int = Field(
        default=42,
        ge=0,
        lt=2**64,
        description="Default seed for Monte Carlo oracles",
    )
    quadrature: QuadratureSettings = Field(
        default_factory=QuadratureSettings,
        description="Quadrature settings",
    )
    montecarlo: MonteCarloSettings = Field(
        default_factory=MonteCarloSettings,
        description="Monte Carlo settings",
    )
    eigen: EigenSettings = Field(
        default_factory=EigenSettings,
        description="Eigensolver settings",
    )
    otel: OpenTelemetrySettings = Field(
        default_factory=OpenTelemetrySettings,
        description="OpenTelemetry settings",
    )

    model_config = {"env_prefix": "FRACPK_"}

    def ensure_data_dir(self) -> Path:
        """Ensure data directory exists and return it."""
        self.data_dir.mkdir(parents=True, exist_ok=True)
        return self.data_dir


def get_settings(**overrides: Any) -> Settings:
    """
    Get application settings, loading from environment.

    Keyword arguments that are not None override environment values,
    which is how CLI flags take precedence.
    """
    explicit = {key: value for key, value in overrides.items() if value is not None}
    return Settings(**explicit)


def load_config_file(path: Path) -> dict[str, Any]:
    """
    Load a TOML config file.

    Returns:
        The parsed document; command parameters live in per-command tables.

    Raises:
        UsageError: If the file is missing or malformed.
    """
    try:
        with open(path, "rb") as f:
            return tomllib.load(f)
    except FileNotFoundError:
        raise UsageError(f"Config file not found: {path}") from None
    except tomllib.TOMLDecodeError as e:
        raise UsageError(f"Invalid config file {path}: {e}") from None
