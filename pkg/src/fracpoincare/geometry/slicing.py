"""
slicing.py

PURPOSE: One-dimensional slices of box unions along lines.
DEPENDENCIES: numpy, models.geometry

ARCHITECTURE NOTES:
A line x0 + t*omega meets an open box in an open parameter interval obtained by
clipping each axis; infinite bounds propagate through float arithmetic. The
slice of a union is the union of the clipped intervals. Intervals merge only
when they overlap; touching intervals stay separate because the shared endpoint
is not in the domain unless a third box covers it (in which case that box's
interval overlaps both).

slice_lines() is the vectorized form used by the Loss-Sloane quadrature and
the LS(s) checker: it clips many parallel lines against all boxes at once.
"""

import math

import numpy as np

from fracpoincare.errors import InvalidArgumentError
from fracpoincare.models.geometry import BoxUnionDomain, IntervalUnion

UNIT_TOLERANCE = 1e-12


def check_direction(direction: np.ndarray | tuple[float, ...], dim: int) -> np.ndarray:
    """Validate a unit direction vector of the right dimension."""
    omega = np.asarray(direction, dtype=float).reshape(-1)
    if omega.shape != (dim,):
        raise InvalidArgumentError(f"direction must have {dim} components")
    norm = float(np.linalg.norm(omega))
    if norm == 0.0:
        raise InvalidArgumentError("direction must be nonzero")
    if abs(norm - 1.0) > UNIT_TOLERANCE:
        raise InvalidArgumentError(f"direction must be a unit vector (|direction| = {norm})")
    return omega


def _box_arrays(domain: BoxUnionDomain) -> tuple[np.ndarray, np.ndarray]:
    lo = np.array([box.lo for box in domain.boxes]).reshape(-1, domain.dim)
    hi = np.array([box.hi for box in domain.boxes]).reshape(-1, domain.dim)
    return lo, hi


def clip_lines(
    lo: np.ndarray, hi: np.ndarray, base_points: np.ndarray, omega: np.ndarray
) -> tuple[np.ndarray, np.ndarray]:
    """
    Parameter intervals of many parallel lines inside many boxes.

    Args:
        lo, hi: Box bounds, shape (B, d).
        base_points: Line base points, shape (L, d).
        omega: Unit direction, shape (d,).

    Returns:
        (t_lo, t_hi) of shape (L, B); empty intersections have t_lo >= t_hi.
    """
    n_lines = base_points.shape[0]
    t_lo = np.full((n_lines, lo.shape[0]), -np.inf)
    t_hi = np.full((n_lines, lo.shape[0]), np.inf)
    with np.errstate(invalid="ignore"):
        for axis, w in enumerate(omega):
            p = base_points[:, axis, None]
            if w == 0.0:
                inside = (lo[None, :, axis] < p) & (p < hi[None, :, axis])
                t_hi = np.where(inside, t_hi, -np.inf)
                continue
            a = (lo[None, :, axis] - p) / w
            b = (hi[None, :, axis] - p) / w
            t_lo = np.maximum(t_lo, np.minimum(a, b))
            t_hi = np.minimum(t_hi, np.maximum(a, b))
    return t_lo, t_hi


def union_of_intervals(
    t_lo: np.ndarray, t_hi: np.ndarray, merge_touching: bool = False
) -> list[tuple[float, float]]:
    """Union of open intervals given as parallel arrays, sorted; empty ones dropped."""
    keep = t_lo < t_hi
    pairs = sorted(zip(t_lo[keep].tolist(), t_hi[keep].tolist(), strict=True))
    merged: list[tuple[float, float]] = []
    for a, b in pairs:
        if merged and (a < merged[-1][1] or (merge_touching and a == merged[-1][1])):
            merged[-1] = (merged[-1][0], max(merged[-1][1], b))
        else:
            merged.append((a, b))
    return merged


def slice_domain(
    domain: BoxUnionDomain,
    base_point: np.ndarray | tuple[float, ...],
    direction: np.ndarray | tuple[float, ...],
) -> IntervalUnion:
    """
    The parameter set {t : base_point + t*direction in domain}.

    Raises:
        InvalidArgumentError: If the direction is zero or not of unit length.
    """
    omega = check_direction(direction, domain.dim)
    p = np.asarray(base_point, dtype=float).reshape(1, domain.dim)
    lo, hi = _box_arrays(domain)
    t_lo, t_hi = clip_lines(lo, hi, p, omega)
    return IntervalUnion(intervals=union_of_intervals(t_lo[0], t_hi[0]))


def slice_lines(
    domain: BoxUnionDomain,
    base_points: np.ndarray,
    direction: np.ndarray | tuple[float, ...],
    merge_touching: bool = False,
) -> list[list[tuple[float, float]]]:
    """Slices of many parallel lines, one interval list per base point."""
    omega = check_direction(direction, domain.dim)
    lo, hi = _box_arrays(domain)
    t_lo, t_hi = clip_lines(lo, hi, np.atleast_2d(base_points), omega)
    return [union_of_intervals(t_lo[i], t_hi[i], merge_touching) for i in range(t_lo.shape[0])]


def longest_component(intervals: list[tuple[float, float]]) -> float:
    """Length of the longest interval (inf if any is unbounded, 0 if empty)."""
    return max((b - a for a, b in intervals), default=0.0)


def is_unbounded(intervals: list[tuple[float, float]]) -> bool:
    return any(math.isinf(a) or math.isinf(b) for a, b in intervals)
