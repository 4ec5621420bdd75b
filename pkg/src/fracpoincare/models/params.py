"""
params.py

PURPOSE: Validated parameter sets for the counterexample construction and the Galerkin grids.
DEPENDENCIES: pydantic, numpy

ARCHITECTURE NOTES:
Parameter models reject regime violations at construction time so the CLI can
report them before any computation (exit code 2).
"""

import math
from enum import StrEnum

import numpy as np
from pydantic import BaseModel, ConfigDict, Field, field_validator, model_validator

from fracpoincare.models.geometry import AxisBox


class CexParams(BaseModel):
    """
    Parameters of the strip-family counterexample.

    Gap widths are s_j = j^(-beta); the test-function height is k0 = ceil(k^A).
    """

    model_config = ConfigDict(frozen=True)

    s: float = Field(..., gt=0.0, lt=1.0, description="Fractional order, must be < 1/2")
    beta: float = Field(default=3.0, gt=0.0, description="Gap decay exponent")
    A: float = Field(default=3.0, gt=0.0, description="Height exponent, k0 = ceil(k^A)")
    k_list: tuple[int, ...] = Field(default=(8, 16, 32, 64), min_length=1)

    @field_validator("k_list")
    @classmethod
    def ascending_positive(cls, v: tuple[int, ...]) -> tuple[int, ...]:
        if any(k < 1 for k in v):
            raise ValueError("k values must be positive")
        if any(b <= a for a, b in zip(v, v[1:], strict=False)):
            raise ValueError("k values must be strictly ascending")
        if v[-1] > 128:
            raise ValueError("k values above 128 exceed the desk-scale budget")
        return v

    @model_validator(mode="after")
    def check_exponents(self) -> "CexParams":
        if not self.s < 0.5:
            raise ValueError(f"the counterexample requires s < 1/2 (got s = {self.s})")
        if not self.beta * (1.0 - 2.0 * self.s) > 1.0:
            raise ValueError(
                "beta*(1-2s) must exceed 1 for summable gaps "
                f"(got {self.beta * (1 - 2 * self.s):.4g})"
            )
        if not 2.0 * self.s * self.A > 1.0:
            raise ValueError(f"2*s*A must exceed 1 (got {2 * self.s * self.A:.4g})")
        return self


def height_for(k: int, A: float) -> int:
    """k0 = ceil(k^A), exact in integer arithmetic when A is integral."""
    if float(A).is_integer():
        return int(k ** int(A))
    return math.ceil(k**A)


class ElementOrder(StrEnum):
    """Galerkin element family."""

    P0 = "P0"
    P1 = "P1"


class FormMode(StrEnum):
    """Which double integral defines the quadratic form."""

    FULL = "full"
    REGIONAL = "regional"


class GridSpec(BaseModel):
    """A uniform tensor grid over a finite bounding box."""

    model_config = ConfigDict(frozen=True)

    cells: tuple[int, ...] = Field(..., min_length=1, max_length=2)
    bbox: AxisBox
    order: ElementOrder = ElementOrder.P0

    @field_validator("cells")
    @classmethod
    def at_least_four(cls, v: tuple[int, ...]) -> tuple[int, ...]:
        if any(c < 4 for c in v):
            raise ValueError("every axis needs at least 4 cells")
        return v

    @model_validator(mode="after")
    def check_consistency(self) -> "GridSpec":
        if len(self.cells) != self.bbox.dim:
            raise ValueError("cell counts and bounding box dimension differ")
        if not self.bbox.is_finite:
            raise ValueError("grid bounding box must be finite")
        if self.order is ElementOrder.P1 and self.bbox.dim != 1:
            raise ValueError("P1 elements are one-dimensional")
        return self

    @property
    def dim(self) -> int:
        return len(self.cells)

    @property
    def h(self) -> tuple[float, ...]:
        return tuple(side / n for side, n in zip(self.bbox.sides, self.cells, strict=True))

    @property
    def n_cells(self) -> int:
        return math.prod(self.cells)

    def axis_nodes(self, axis: int) -> np.ndarray:
        lo, hi = self.bbox.bounds[axis]
        return np.linspace(lo, hi, self.cells[axis] + 1)

    def cell_centers(self) -> np.ndarray:
        """Centers of all cells, shape (n_cells, dim), C order over axes."""
        mids = []
        for axis in range(self.dim):
            nodes = self.axis_nodes(axis)
            mids.append(0.5 * (nodes[:-1] + nodes[1:]))
        mesh = np.meshgrid(*mids, indexing="ij")
        return np.stack([m.ravel() for m in mesh], axis=-1)
