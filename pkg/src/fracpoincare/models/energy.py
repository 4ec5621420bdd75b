"""
energy.py

PURPOSE: Energy values with provenance, and the Monte Carlo oracle configuration.
DEPENDENCIES: pydantic

ARCHITECTURE NOTES:
Every number the library reports carries how it was obtained: a closed form,
adaptive quadrature (with scipy's error estimate), or Monte Carlo (with a
standard error). truncation_bound records the tail neglected when an infinite
extent was cut to a window.
"""

from enum import StrEnum

from pydantic import BaseModel, ConfigDict, Field, model_validator


class EnergyMethod(StrEnum):
    """How an energy value was computed."""

    CLOSED_FORM = "closed_form"
    ADAPTIVE_QUADRATURE = "adaptive_quadrature"
    MONTE_CARLO = "monte_carlo"


class EnergyValue(BaseModel):
    """A nonnegative energy with provenance."""

    model_config = ConfigDict(frozen=True)

    value: float = Field(..., ge=0.0)
    method: EnergyMethod
    stderr: float = Field(default=0.0, ge=0.0, description="Standard error (Monte Carlo only)")
    abserr: float = Field(default=0.0, ge=0.0, description="Quadrature error estimate")
    truncation_bound: float = Field(default=0.0, ge=0.0, description="Neglected tail bound")

    @model_validator(mode="after")
    def stderr_only_for_monte_carlo(self) -> "EnergyValue":
        if self.stderr > 0.0 and self.method is not EnergyMethod.MONTE_CARLO:
            raise ValueError("stderr must be 0 for deterministic methods")
        return self

    @classmethod
    def closed_form(cls, value: float) -> "EnergyValue":
        return cls(value=max(value, 0.0), method=EnergyMethod.CLOSED_FORM)

    @classmethod
    def quadrature(
        cls, value: float, abserr: float = 0.0, truncation_bound: float = 0.0
    ) -> "EnergyValue":
        return cls(
            value=max(value, 0.0),
            method=EnergyMethod.ADAPTIVE_QUADRATURE,
            abserr=abs(abserr),
            truncation_bound=truncation_bound,
        )

    def scaled(self, factor: float) -> "EnergyValue":
        """Multiply by a nonnegative factor, scaling the error terms alike."""
        return self.model_copy(
            update={
                "value": self.value * factor,
                "stderr": self.stderr * factor,
                "abserr": self.abserr * factor,
                "truncation_bound": self.truncation_bound * factor,
            }
        )

    def __float__(self) -> float:
        return self.value


def weakest_method(values: list[EnergyValue]) -> EnergyMethod:
    """The least exact method among several contributions."""
    order = [EnergyMethod.CLOSED_FORM, EnergyMethod.ADAPTIVE_QUADRATURE, EnergyMethod.MONTE_CARLO]
    return max((v.method for v in values), key=order.index, default=EnergyMethod.CLOSED_FORM)


class McConfig(BaseModel):
    """Monte Carlo oracle configuration; identical configs give identical output."""

    model_config = ConfigDict(frozen=True)

    samples: int = Field(default=2**16, ge=1000, description="Total samples")
    seed: int = Field(default=42, ge=0, lt=2**64, description="Stream key")
    stratification: int = Field(default=8, ge=1, le=64, description="Strata per axis")
