"""
run.py

PURPOSE: Per-command parameter schemas and the validated RunConfig.
DEPENDENCIES: pydantic, config

ARCHITECTURE NOTES:
Every CLI command validates its parameters here before it computes anything.
Parameters come from the command's table in an optional TOML config file,
overridden by flags that were actually given. List-valued parameters accept
both TOML arrays and the comma-separated strings the flags use, so the two
sources share one schema.

Validation failures become UsageError naming the first invalid field, which
the CLI maps to exit code 2.
"""

import math
from enum import StrEnum
from pathlib import Path
from typing import Any, Literal

from pydantic import BaseModel, ConfigDict, Field, ValidationError, field_validator, model_validator

from fracpoincare.config import load_config_file
from fracpoincare.errors import UsageError
from fracpoincare.models.geometry import AxisBox, parse_bound
from fracpoincare.models.params import CexParams, FormMode


class Command(StrEnum):
    """Commands that run a computation."""

    VERIFY_KERNELS = "verify-kernels"
    SEMINORM = "seminorm"
    COUNTEREXAMPLE = "counterexample"
    CHECK = "check"
    EIGEN = "eigen"
    ASYMPTOTICS = "asymptotics"
    CONSTANTS = "constants"


def split_list(value: Any) -> Any:
    """Turn "a,b,c" into ["a", "b", "c"]; other values pass through."""
    if isinstance(value, str):
        return [item.strip() for item in value.split(",") if item.strip()]
    return value


def _bound(value: Any) -> float:
    return parse_bound(float(value) if isinstance(value, str) else value)


def parse_window(value: Any) -> AxisBox | None:
    """A window from "x0,x1,y0,y1" (or "x0,x1" in 1D), a list of pairs, or an AxisBox."""
    if value is None or isinstance(value, AxisBox):
        return value
    items = split_list(value)
    if items and not isinstance(items[0], list | tuple):
        if len(items) % 2:
            raise ValueError("window needs lo,hi pairs")
        items = [items[i : i + 2] for i in range(0, len(items), 2)]
    return AxisBox.of(*((_bound(lo), _bound(hi)) for lo, hi in items))


class DomainSource(BaseModel):
    """Where a command reads its domain from: a JSON file or a gallery name."""

    domain: Path | None = Field(default=None, description="Domain JSON file")
    gallery: str | None = Field(default=None, description="Shipped gallery domain")

    @model_validator(mode="after")
    def exactly_one_source(self) -> "DomainSource":
        if (self.domain is None) == (self.gallery is None):
            raise ValueError("give exactly one of --domain or --gallery")
        if self.domain is not None and not self.domain.exists():
            raise ValueError(f"domain file not found: {self.domain}")
        return self


class VerifyKernelsParams(BaseModel):
    s: float = Field(..., gt=0.0, lt=1.0)
    cases: int = Field(default=20, ge=1, le=1000)
    samples: int | None = Field(default=None, ge=1000)


class SeminormParams(DomainSource):
    s: float = Field(..., gt=0.0, lt=0.5, description="Indicators need s < 1/2")
    angles: int | None = Field(default=None, ge=2, description="Also run the slice decomposition")
    line_spacing: float = Field(default=0.01, gt=0.0)

    @field_validator("angles")
    @classmethod
    def even_angles(cls, v: int | None) -> int | None:
        if v is not None and v % 2:
            raise ValueError("angles must be even")
        return v


class CounterexampleParams(BaseModel):
    s: float = Field(..., gt=0.0, lt=1.0)
    beta: float = Field(default=3.0, gt=0.0)
    A: float = Field(default=3.0, gt=0.0)
    k: tuple[int, ...] = Field(default=(8, 16, 32, 64), min_length=1)
    diagnostics: bool = False

    @field_validator("k", mode="before")
    @classmethod
    def split_k(cls, v: Any) -> Any:
        return split_list(v)

    @model_validator(mode="after")
    def regime(self) -> "CounterexampleParams":
        if not self.s < 0.5:
            raise ValueError(f"the counterexample requires s < 1/2 (got s = {self.s})")
        return self

    def cex(self) -> CexParams:
        return CexParams(s=self.s, beta=self.beta, A=self.A, k_list=self.k)


class CheckParams(DomainSource):
    condition: Literal["density", "ls", "interval", "necessary"]
    s: float = Field(..., gt=0.0, lt=1.0)
    R: float | None = Field(default=None, gt=0.0)
    window: AxisBox | None = None
    grid: int = Field(default=64, ge=4)
    directions: str = Field(default="arc:0:0.5:16", description="arc:<a>:<b>:<count>")
    line_samples: int = Field(default=64, ge=1)
    mode: Literal["plain", "extended"] = "plain"
    resolution: int = Field(default=64, ge=8)
    p1_unit: float | None = Field(default=None, gt=0.0)

    @field_validator("window", mode="before")
    @classmethod
    def window_from_text(cls, v: Any) -> AxisBox | None:
        return parse_window(v)

    @field_validator("directions")
    @classmethod
    def arc_spec(cls, v: str) -> str:
        parts = v.split(":")
        if len(parts) != 4 or parts[0] != "arc":
            raise ValueError("directions must look like arc:<a>:<b>:<count>")
        a, b, count = float(parts[1]), float(parts[2]), int(parts[3])
        if not (math.isfinite(a) and math.isfinite(b) and b > a and count >= 1):
            raise ValueError("arc needs finite a < b and count >= 1")
        return v

    @model_validator(mode="after")
    def regime(self) -> "CheckParams":
        if self.condition in ("ls", "interval") and not self.s > 0.5:
            raise ValueError(f"the {self.condition} condition requires s > 1/2 (got s = {self.s})")
        if self.condition == "necessary" and self.mode == "extended" and not self.s < 0.5:
            raise ValueError(f"extended balls require s < 1/2 (got s = {self.s})")
        if self.condition == "density" and self.R is None:
            raise ValueError("the density condition needs --R")
        return self

    def arc(self) -> tuple[float, float, int]:
        _, a, b, count = self.directions.split(":")
        return float(a), float(b), int(count)


class EigenParams(DomainSource):
    s: float = Field(..., gt=0.0, lt=1.0)
    mode: FormMode = FormMode.FULL
    ladder: tuple[int, ...] | None = None
    grid: tuple[int, ...] | None = Field(default=None, description="One fixed grid, e.g. 64x16")
    k: int = Field(default=1, ge=1, description="Eigenvalues reported on a fixed grid")

    @field_validator("ladder", mode="before")
    @classmethod
    def split_ladder(cls, v: Any) -> Any:
        return split_list(v)

    @field_validator("grid", mode="before")
    @classmethod
    def split_grid(cls, v: Any) -> Any:
        if isinstance(v, str):
            return [item.strip() for item in v.lower().split("x")]
        return v

    @field_validator("grid")
    @classmethod
    def grid_cells(cls, v: tuple[int, ...] | None) -> tuple[int, ...] | None:
        if v is not None and any(n < 4 for n in v):
            raise ValueError("every grid axis needs at least 4 cells")
        return v

    @model_validator(mode="after")
    def one_discretization(self) -> "EigenParams":
        if self.grid is not None and self.ladder is not None:
            raise ValueError("give either --grid or --ladder, not both")
        if self.grid is None and self.k > 1:
            raise ValueError("--k needs a fixed --grid; the ladder reports the first eigenvalue")
        return self


class AsymptoticsParams(BaseModel):
    s: float = Field(..., gt=0.0, lt=1.0)
    omega: tuple[float, float] = (0.0, 1.0)
    ells: tuple[float, ...] = (2.0, 4.0, 8.0, 16.0)
    k: int = Field(default=3, ge=1)
    h: float | None = Field(default=None, gt=0.0)

    @field_validator("omega", "ells", mode="before")
    @classmethod
    def split_values(cls, v: Any) -> Any:
        return split_list(v)

    @model_validator(mode="after")
    def regime(self) -> "AsymptoticsParams":
        if not self.s < 0.5:
            raise ValueError(f"the asymptotics experiment requires s < 1/2 (got s = {self.s})")
        if not self.omega[0] < self.omega[1]:
            raise ValueError("omega must be a nonempty interval")
        if any(b <= a for a, b in zip(self.ells, self.ells[1:], strict=False)):
            raise ValueError("ells must be strictly ascending")
        return self


class ConstantsParams(BaseModel):
    regenerate: bool = False
    s: float | None = Field(default=None, gt=0.0, lt=1.0)


COMMAND_SCHEMAS: dict[Command, type[BaseModel]] = {
    Command.VERIFY_KERNELS: VerifyKernelsParams,
    Command.SEMINORM: SeminormParams,
    Command.COUNTEREXAMPLE: CounterexampleParams,
    Command.CHECK: CheckParams,
    Command.EIGEN: EigenParams,
    Command.ASYMPTOTICS: AsymptoticsParams,
    Command.CONSTANTS: ConstantsParams,
}


class RunConfig(BaseModel):
    """A fully validated command invocation."""

    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    command: Command
    params: BaseModel
    output: Path | None = None
    seed: int = Field(default=42, ge=0, lt=2**64)
    threads: int = Field(default=1, ge=1)
    epsrel: float | None = Field(default=None, gt=0.0, description="Quadrature tolerance override")


def first_error(error: ValidationError) -> str:
    """The first validation error as "loc: msg"."""
    detail = error.errors()[0]
    loc = " -> ".join(str(x) for x in detail["loc"]) or "parameters"
    return f"{loc}: {detail['msg']}"


def parse_and_validate(
    command: Command,
    flags: dict[str, Any],
    config_file: Path | None = None,
    output: Path | None = None,
    seed: int = 42,
    threads: int = 1,
    epsrel: float | None = None,
) -> RunConfig:
    """
    Merge config-file and flag parameters and validate them against the command's schema.

    Raises:
        UsageError: Naming the first invalid field.
    """
    merged: dict[str, Any] = {}
    if config_file is not None:
        table = load_config_file(config_file).get(command.value, {})
        if not isinstance(table, dict):
            raise UsageError(f"[{command.value}] in {config_file} must be a table")
        merged.update(table)
    merged.update({key: value for key, value in flags.items() if value is not None})
    try:
        params = COMMAND_SCHEMAS[command].model_validate(merged)
    except ValidationError as e:
        raise UsageError(f"{command.value}: {first_error(e)}") from None
    except ValueError as e:
        raise UsageError(f"{command.value}: {e}") from None
    return RunConfig(
        command=command, params=params, output=output, seed=seed, threads=threads, epsrel=epsrel
    )
