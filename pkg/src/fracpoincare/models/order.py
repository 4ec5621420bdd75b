"""
order.py

PURPOSE: The fractional order s and its regime classification.
DEPENDENCIES: pydantic

ARCHITECTURE NOTES:
Most operations are only valid in one regime: indicator energies need s < 1/2,
the one-dimensional Poincaré bound needs s > 1/2. The require_* helpers raise
OutOfRegimeError so that every module reports regime violations the same way.
Public functions accept either a float or a FracOrder (see `SLike`).
"""

from enum import StrEnum

from pydantic import BaseModel, ConfigDict, Field, computed_field

from fracpoincare.errors import OutOfRegimeError


class Regime(StrEnum):
    """Regime of the fractional order relative to the critical value 1/2."""

    SUB = "sub"
    CRITICAL = "critical"
    SUPER = "super"


class FracOrder(BaseModel):
    """The exponent s in (0, 1)."""

    model_config = ConfigDict(frozen=True)

    s: float = Field(..., gt=0.0, lt=1.0, description="Fractional order")

    @computed_field  # type: ignore[prop-decorator]
    @property
    def regime(self) -> Regime:
        """Sub iff s < 1/2, Critical iff s = 1/2, Super iff s > 1/2."""
        if self.s < 0.5:
            return Regime.SUB
        if self.s == 0.5:
            return Regime.CRITICAL
        return Regime.SUPER

    @classmethod
    def of(cls, value: "SLike") -> "FracOrder":
        """Coerce a float or FracOrder into a validated FracOrder."""
        if isinstance(value, FracOrder):
            return value
        return cls(s=float(value))

    def require_sub(self, what: str) -> None:
        """Raise unless s < 1/2."""
        if self.regime is not Regime.SUB:
            raise OutOfRegimeError(f"{what} requires s < 1/2 (got s = {self.s})")

    def require_super(self, what: str) -> None:
        """Raise unless s > 1/2."""
        if self.regime is not Regime.SUPER:
            raise OutOfRegimeError(f"{what} requires s > 1/2 (got s = {self.s})")


SLike = float | FracOrder


def order_value(value: SLike) -> float:
    """Validate and return the raw float s."""
    return FracOrder.of(value).s
