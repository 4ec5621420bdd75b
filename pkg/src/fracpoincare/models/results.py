"""
results.py

PURPOSE: Result records returned by the numerical modules and serialized by the CLI.
DEPENDENCIES: pydantic, numpy

ARCHITECTURE NOTES:
Results are plain pydantic models so the CLI can dump them as JSON with
model_dump(mode="json"). Eigenvectors are kept on EigResult for callers but
excluded from serialization.
"""

import math
from enum import StrEnum
from typing import Any

import numpy as np
from pydantic import BaseModel, ConfigDict, Field, model_validator

from fracpoincare.models.energy import EnergyMethod, EnergyValue
from fracpoincare.models.params import CexParams, FormMode, GridSpec


class SeminormBreakdown(BaseModel):
    """Decomposition of an indicator seminorm into perimeters and cross terms."""

    model_config = ConfigDict(frozen=True)

    perimeter_terms: tuple[float, ...] = Field(..., description="Per_s of each support box")
    cross_terms: float = Field(..., ge=0.0, description="Sum over ordered pairs of E(B_i, B_j)")
    total: float = Field(..., ge=0.0, description="The seminorm [f]^2")
    area: float = Field(..., gt=0.0)
    quotient: float = Field(..., ge=0.0)
    method: EnergyMethod
    abserr: float = Field(default=0.0, ge=0.0)
    truncation_bound: float = Field(default=0.0, ge=0.0)

    def as_energy(self) -> EnergyValue:
        """The total as an EnergyValue with the same provenance."""
        if self.method is EnergyMethod.CLOSED_FORM:
            return EnergyValue.closed_form(self.total)
        return EnergyValue.quadrature(self.total, self.abserr, self.truncation_bound)


class QuotientRow(BaseModel):
    """One row of the counterexample experiment."""

    model_config = ConfigDict(frozen=True)

    k: int = Field(..., ge=1)
    k0: int = Field(..., ge=1)
    seminorm: float = Field(..., gt=0.0)
    area: float = Field(..., gt=0.0)
    quotient: float = Field(..., gt=0.0)
    step4_bound: float = Field(..., gt=0.0)

    @model_validator(mode="after")
    def quotient_is_ratio(self) -> "QuotientRow":
        if not math.isclose(self.quotient, self.seminorm / self.area, rel_tol=1e-12):
            raise ValueError("quotient must equal seminorm / area")
        return self


class QuotientTable(BaseModel):
    """The quotient sequence with the parameters and tolerances used."""

    model_config = ConfigDict(frozen=True)

    rows: tuple[QuotientRow, ...]
    params: CexParams
    tolerances: dict[str, float] = Field(default_factory=dict)
    diagnostics: dict[int, dict[str, float]] = Field(default_factory=dict)

    def fitted_constant(self) -> tuple[float, float]:
        """
        Least-squares constant C with quotient ~ C * step4_bound (in log space).

        Returns:
            (C_fit, spread) where spread is the max/min ratio of quotient/(C*bound).
        """
        logs = [math.log(r.quotient / r.step4_bound) for r in self.rows]
        c_fit = math.exp(sum(logs) / len(logs))
        ratios = [r.quotient / (c_fit * r.step4_bound) for r in self.rows]
        return c_fit, max(ratios) / min(ratios)

    def log_slope(self) -> float:
        """Least-squares slope of log(quotient) against log(k)."""
        xs = [math.log(r.k) for r in self.rows]
        ys = [math.log(r.quotient) for r in self.rows]
        return _slope(xs, ys)


class Verdict(StrEnum):
    """Outcome of a condition check."""

    HOLDS = "holds"
    FAILS = "fails"
    INCONCLUSIVE = "inconclusive"


class ConditionReport(BaseModel):
    """Outcome of a sufficient or necessary condition check."""

    model_config = ConfigDict(frozen=True)

    condition: str
    verdict: Verdict
    witness: dict[str, Any] = Field(default_factory=dict)
    bound: float | None = Field(default=None, description="Lower or upper bound on P^2")
    bound_kind: str | None = Field(default=None, description="'lower' or 'upper'")

    @model_validator(mode="after")
    def decisive_verdicts_have_witness(self) -> "ConditionReport":
        if self.verdict is not Verdict.INCONCLUSIVE and not self.witness:
            raise ValueError("Holds/Fails verdicts must carry a witness")
        if (self.bound is None) != (self.bound_kind is None):
            raise ValueError("bound and bound_kind must be given together")
        return self


class Extrapolation(BaseModel):
    """First eigenvalues across a refinement ladder and their Richardson limit."""

    model_config = ConfigDict(frozen=True)

    ladder: tuple[int, ...]
    values: tuple[float, ...]
    limit: float | None = None
    order: float | None = None
    error_estimate: float | None = None
    monotone: bool = True

    @property
    def inconclusive(self) -> bool:
        return not self.monotone or self.limit is None


class EigResult(BaseModel):
    """Smallest eigenvalues of a discretized fractional Dirichlet problem."""

    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    eigenvalues: tuple[float, ...]
    grid: GridSpec | None = None
    form_mode: FormMode = FormMode.FULL
    dof: int = Field(default=0, ge=0)
    solver: str = ""
    extrapolated: Extrapolation | None = None
    eigenvectors: Any = Field(default=None, exclude=True, repr=False)

    @model_validator(mode="after")
    def ascending(self) -> "EigResult":
        if any(b < a for a, b in zip(self.eigenvalues, self.eigenvalues[1:], strict=False)):
            raise ValueError("eigenvalues must be ascending")
        return self


class AsymptoticsRow(BaseModel):
    """One (ell, k) row of the cylinder asymptotics experiment."""

    model_config = ConfigDict(frozen=True)

    ell: float
    k: int
    lam: float
    p2_omega: float
    gap: float
    fitted_exponent: float


class AsymptoticsTable(BaseModel):
    """Cylinder eigenvalues against the cross-section constant."""

    model_config = ConfigDict(frozen=True)

    s: float
    omega: tuple[float, float]
    h: float
    rows: tuple[AsymptoticsRow, ...]
    fitted_exponents: dict[int, float]
    spectral_gaps: dict[float, float] = Field(description="lambda_2 - lambda_1 per ell")


class KernelCheck(BaseModel):
    """One closed form compared against one oracle."""

    model_config = ConfigDict(frozen=True)

    name: str
    params: dict[str, float]
    closed_form: float
    oracle: float
    oracle_error: float = Field(..., ge=0.0, description="abserr or standard error of the oracle")
    method: EnergyMethod
    rel_error: float
    passed: bool


class KernelReport(BaseModel):
    """Closed-form kernels checked against independent oracles on random parameter sets."""

    model_config = ConfigDict(frozen=True)

    s: float
    seed: int
    cases: int
    checks: tuple[KernelCheck, ...]

    @property
    def failures(self) -> list[KernelCheck]:
        return [check for check in self.checks if not check.passed]

    @property
    def all_passed(self) -> bool:
        return not self.failures


def _slope(xs: list[float], ys: list[float]) -> float:
    if len(xs) < 2:
        return float("nan")
    return float(np.polyfit(np.asarray(xs), np.asarray(ys), 1)[0])


def log_log_slope(xs: list[float], ys: list[float]) -> float:
    """Least-squares slope of log(ys) against log(xs); NaN if any y <= 0."""
    if any(y <= 0 for y in ys):
        return float("nan")
    return _slope([math.log(x) for x in xs], [math.log(y) for y in ys])
