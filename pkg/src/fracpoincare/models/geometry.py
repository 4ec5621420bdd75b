"""
geometry.py

PURPOSE: Pydantic models for the geometric inputs: boxes, box unions and interval unions.
DEPENDENCIES: pydantic, numpy

ARCHITECTURE NOTES:
These models define the STATIC domain description - the open boxes whose union
is the domain. Algorithms on them (normalization, slicing, inscribed radii) live
in the geometry package; the models only validate and transform.

Infinite extents are stored as float infinities. The JSON form accepts the
strings "-inf" and "inf" and writes them back the same way, so files stay
portable JSON (no bare Infinity tokens).

Domain JSON schema:
    {"dim": 1|2, "s": 0.25, "boxes": [{"x": [lo, hi], "y": [lo, hi]}],
     "generator": {"type": "counterexample", ...params}}
"""

import math
from typing import TYPE_CHECKING, Any, Literal

import numpy as np
from pydantic import (
    BaseModel,
    ConfigDict,
    Field,
    field_validator,
    model_serializer,
    model_validator,
)

if TYPE_CHECKING:
    from fracpoincare.geometry.arrangement import Arrangement

AXIS_NAMES = ("x", "y")

GeneratorType = Literal[
    "counterexample",
    "strip_family",
    "parallel_strips",
    "finite_strips",
    "decreasing_widths",
    "annuli",
    "lattice_holes",
    "slit_plane",
]


def parse_bound(value: Any) -> float:
    """Convert a JSON bound (number, "inf", "-inf") to a float."""
    if isinstance(value, str):
        token = value.strip().lower()
        if token in ("inf", "+inf", "infinity"):
            return math.inf
        if token in ("-inf", "-infinity"):
            return -math.inf
        raise ValueError(f"Bound must be a number or '-inf'/'inf', got '{value}'")
    if isinstance(value, bool) or not isinstance(value, int | float):
        raise ValueError(f"Bound must be a number or '-inf'/'inf', got {value!r}")
    result = float(value)
    if math.isnan(result):
        raise ValueError("Bound must not be NaN")
    return result


def format_bound(value: float) -> float | str:
    """Convert a float bound to its JSON form."""
    if math.isinf(value):
        return "inf" if value > 0 else "-inf"
    return value


class AxisBox(BaseModel):
    """
    An open axis-aligned box (lo_1, hi_1) x ... x (lo_n, hi_n).

    Bounds may be infinite. The whole space must be flagged explicitly with
    full_space=True; every other box needs at least one finite bound.
    """

    model_config = ConfigDict(frozen=True)

    bounds: tuple[tuple[float, float], ...] = Field(
        ...,
        min_length=1,
        max_length=2,
        description="Per-axis (lo, hi) pairs",
    )
    full_space: bool = Field(default=False, description="Explicit flag for the whole space")

    @model_validator(mode="before")
    @classmethod
    def accept_axis_keys(cls, data: Any) -> Any:
        """Accept {"x": [lo, hi], "y": [lo, hi]} as well as {"bounds": [...]}."""
        if isinstance(data, dict) and "bounds" not in data and "x" in data:
            axes = [data["x"]]
            if "y" in data:
                axes.append(data["y"])
            converted: dict[str, Any] = {"bounds": axes}
            if "full_space" in data:
                converted["full_space"] = data["full_space"]
            return converted
        return data

    @field_validator("bounds", mode="before")
    @classmethod
    def parse_bounds(cls, v: Any) -> tuple[tuple[float, float], ...]:
        """Parse string sentinels and check each pair."""
        result = []
        for pair in v:
            if len(pair) != 2:
                raise ValueError(f"Each axis needs exactly [lo, hi], got {pair!r}")
            lo, hi = parse_bound(pair[0]), parse_bound(pair[1])
            if not lo < hi:
                raise ValueError(f"Box needs lo < hi on every axis, got ({lo}, {hi})")
            result.append((lo, hi))
        return tuple(result)

    @model_validator(mode="after")
    def check_full_space(self) -> "AxisBox":
        """Only a flagged box may be unbounded in every direction."""
        unbounded = all(math.isinf(lo) and math.isinf(hi) for lo, hi in self.bounds)
        if unbounded and not self.full_space:
            raise ValueError("Box is the whole space; set full_space=true to allow it")
        if self.full_space and not unbounded:
            raise ValueError("full_space=true requires (-inf, inf) on every axis")
        return self

    @model_serializer
    def serialize(self) -> dict[str, Any]:
        """Write the {"x": [...], "y": [...]} JSON form."""
        data: dict[str, Any] = {
            AXIS_NAMES[axis]: [format_bound(lo), format_bound(hi)]
            for axis, (lo, hi) in enumerate(self.bounds)
        }
        if self.full_space:
            data["full_space"] = True
        return data

    @classmethod
    def of(cls, *bounds: tuple[float, float]) -> "AxisBox":
        """Build a box from per-axis pairs, flagging the whole space automatically."""
        unbounded = all(math.isinf(lo) and math.isinf(hi) for lo, hi in bounds)
        return cls(bounds=tuple(bounds), full_space=unbounded)

    @property
    def dim(self) -> int:
        return len(self.bounds)

    @property
    def lo(self) -> np.ndarray:
        return np.array([b[0] for b in self.bounds])

    @property
    def hi(self) -> np.ndarray:
        return np.array([b[1] for b in self.bounds])

    @property
    def sides(self) -> tuple[float, ...]:
        return tuple(hi - lo for lo, hi in self.bounds)

    @property
    def is_finite(self) -> bool:
        return all(math.isfinite(lo) and math.isfinite(hi) for lo, hi in self.bounds)

    @property
    def volume(self) -> float:
        return math.prod(self.sides)

    def contains_box(self, other: "AxisBox") -> bool:
        """Whether the open box `other` lies inside this open box."""
        return all(
            lo <= olo and ohi <= hi
            for (lo, hi), (olo, ohi) in zip(self.bounds, other.bounds, strict=True)
        )

    def interiors_overlap(self, other: "AxisBox") -> bool:
        """Whether the two open boxes share a point."""
        return all(
            max(lo, olo) < min(hi, ohi)
            for (lo, hi), (olo, ohi) in zip(self.bounds, other.bounds, strict=True)
        )

    def translated(self, offset: tuple[float, ...]) -> "AxisBox":
        return AxisBox.of(
            *((lo + d, hi + d) for (lo, hi), d in zip(self.bounds, offset, strict=True))
        )

    def scaled(self, factor: float) -> "AxisBox":
        return AxisBox.of(*((lo * factor, hi * factor) for lo, hi in self.bounds))

    def rotated90(self) -> "AxisBox":
        """Image under the rotation (x, y) -> (-y, x)."""
        if self.dim != 2:
            raise ValueError("rotation is defined for planar boxes only")
        (x0, x1), (y0, y1) = self.bounds
        return AxisBox.of((-y1, -y0), (x0, x1))


class GeneratorSpec(BaseModel):
    """Recipe for an infinite or structured domain family; parameters vary by type."""

    model_config = ConfigDict(extra="allow", frozen=True)

    type: GeneratorType = Field(..., description="Generator family")

    @property
    def params(self) -> dict[str, Any]:
        return dict(self.model_extra or {})


class BoxUnionDomain(BaseModel):
    """
    A domain given as the union of finitely many open boxes.

    Boxes may overlap on input; geometry.normalize produces the disjoint form.
    Generator metadata records how a truncated infinite family was built.
    """

    model_config = ConfigDict(frozen=True)

    dim: Literal[1, 2] = Field(..., description="Ambient dimension")
    boxes: tuple[AxisBox, ...] = Field(default=(), description="Open boxes of the union")
    s: float | None = Field(default=None, gt=0.0, lt=1.0, description="Suggested order")
    name: str = Field(default="", description="Human-readable label")
    generator: GeneratorSpec | None = Field(default=None, description="Family recipe")
    metadata: dict[str, Any] = Field(default_factory=dict, description="Construction data")

    @model_validator(mode="after")
    def check_boxes(self) -> "BoxUnionDomain":
        """All boxes share the domain dimension; a domain needs boxes or a generator."""
        for i, box in enumerate(self.boxes):
            if box.dim != self.dim:
                raise ValueError(f"Box {i} has dimension {box.dim}, domain has {self.dim}")
        if not self.boxes and self.generator is None:
            raise ValueError("Domain needs at least one box or a generator")
        return self

    @property
    def is_bounded(self) -> bool:
        return all(box.is_finite for box in self.boxes)

    def bounding_box(self) -> AxisBox:
        """Smallest box containing every input box (may be infinite)."""
        lows = [min(box.bounds[a][0] for box in self.boxes) for a in range(self.dim)]
        highs = [max(box.bounds[a][1] for box in self.boxes) for a in range(self.dim)]
        return AxisBox.of(*zip(lows, highs, strict=True))

    def with_boxes(self, boxes: tuple[AxisBox, ...] | list[AxisBox]) -> "BoxUnionDomain":
        return self.model_copy(update={"boxes": tuple(boxes)})

    def translated(self, offset: tuple[float, ...]) -> "BoxUnionDomain":
        return self.with_boxes([box.translated(offset) for box in self.boxes])

    def scaled(self, factor: float) -> "BoxUnionDomain":
        return self.with_boxes([box.scaled(factor) for box in self.boxes])

    def rotated90(self) -> "BoxUnionDomain":
        return self.with_boxes([box.rotated90() for box in self.boxes])

    # The arrangement module imports this one, hence the deferred imports below.

    def pieces(self) -> "Arrangement":
        """Open cells, seams and vertices of the coordinate arrangement with coverage."""
        from fracpoincare.geometry.arrangement import build_arrangement

        return build_arrangement(self.boxes, self.dim)

    def normalized(self) -> "BoxUnionDomain":
        """Disjoint boxes covering the same cells and covered seams."""
        from fracpoincare.geometry.arrangement import normalize

        return normalize(self)

    def closure_interior(self) -> "BoxUnionDomain":
        """Boxes covering the interior of the closure."""
        from fracpoincare.geometry.arrangement import closure_interior

        return closure_interior(self)


class IntervalUnion(BaseModel):
    """Sorted, disjoint open intervals on the real line; endpoints may be infinite."""

    model_config = ConfigDict(frozen=True)

    intervals: tuple[tuple[float, float], ...] = Field(default=())

    @field_validator("intervals", mode="before")
    @classmethod
    def parse_intervals(cls, v: Any) -> tuple[tuple[float, float], ...]:
        result = tuple((parse_bound(a), parse_bound(b)) for a, b in v)
        for a, b in result:
            if not a < b:
                raise ValueError(f"Interval needs a < b, got ({a}, {b})")
        for (_, b), (c, _) in zip(result, result[1:], strict=False):
            if b > c:
                raise ValueError("Intervals must be sorted and disjoint")
        return result

    @property
    def lengths(self) -> list[float]:
        return [b - a for a, b in self.intervals]

    @property
    def is_bounded(self) -> bool:
        return all(math.isfinite(a) and math.isfinite(b) for a, b in self.intervals)

    @property
    def max_length(self) -> float:
        return max(self.lengths, default=0.0)

    @property
    def measure(self) -> float:
        return sum(self.lengths)

    def __len__(self) -> int:
        return len(self.intervals)


class IndicatorFunction(BaseModel):
    """The indicator of a finite union of disjoint open boxes."""

    model_config = ConfigDict(frozen=True)

    support: BoxUnionDomain

    @model_validator(mode="after")
    def check_support(self) -> "IndicatorFunction":
        boxes = self.support.boxes
        if not boxes:
            raise ValueError("Indicator support needs at least one box")
        if not self.support.is_bounded:
            raise ValueError("Indicator support boxes must be finite")
        for i, first in enumerate(boxes):
            for second in boxes[i + 1 :]:
                if first.interiors_overlap(second):
                    raise ValueError("Indicator support boxes must have disjoint interiors")
        return self

    @classmethod
    def of_boxes(cls, boxes: list[AxisBox] | tuple[AxisBox, ...]) -> "IndicatorFunction":
        dim = boxes[0].dim if boxes else 2
        return cls(support=BoxUnionDomain(dim=dim, boxes=tuple(boxes)))

    @property
    def boxes(self) -> tuple[AxisBox, ...]:
        return self.support.boxes

    @property
    def dim(self) -> int:
        return self.support.dim

    @property
    def area(self) -> float:
        return math.fsum(box.volume for box in self.support.boxes)

    def translated(self, offset: tuple[float, ...]) -> "IndicatorFunction":
        return IndicatorFunction(support=self.support.translated(offset))

    def scaled(self, factor: float) -> "IndicatorFunction":
        return IndicatorFunction(support=self.support.scaled(factor))

    def rotated90(self) -> "IndicatorFunction":
        return IndicatorFunction(support=self.support.rotated90())
