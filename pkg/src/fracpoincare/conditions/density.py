"""
density.py

PURPOSE: The complement-density sufficient condition |complement ∩ B(x, R)| > c on a window.
DEPENDENCIES: numpy, scipy.signal, geometry

ARCHITECTURE NOTES:
The plane around the window (padded by R) is cut into pixels. Each pixel
holds the exact area of the complement inside it, obtained by clipping the
disjoint boxes of the normalized domain against the pixel grid one axis at a
time. Convolving that map with the pixel-center mask of the disc of radius R
gives |complement ∩ B(x, R)| at every pixel center to within the area of the
pixels the circle passes through; c_min is the minimum over window pixel
centers that lie in the domain.
"""

import logging
import math

import numpy as np
from scipy.signal import fftconvolve

from fracpoincare.errors import DomainError, InvalidArgumentError
from fracpoincare.geometry.arrangement import normalize, point_in_domain
from fracpoincare.models.geometry import AxisBox, BoxUnionDomain
from fracpoincare.models.order import FracOrder, SLike
from fracpoincare.models.results import ConditionReport, Verdict

logger = logging.getLogger(__name__)

DEFAULT_GRID = 64


def _axis_overlap(edges: np.ndarray, lo: float, hi: float) -> np.ndarray:
    """Length of (lo, hi) inside each pixel [edges[i], edges[i+1]]."""
    return np.clip(np.minimum(edges[1:], hi) - np.maximum(edges[:-1], lo), 0.0, None)


def complement_area_map(
    domain: BoxUnionDomain, x_edges: np.ndarray, y_edges: np.ndarray
) -> np.ndarray:
    """Area of the complement inside every pixel, shape (len(x_edges) - 1, len(y_edges) - 1)."""
    pixel = np.outer(np.diff(x_edges), np.diff(y_edges))
    covered = np.zeros_like(pixel)
    for box in normalize(domain).boxes:
        (xlo, xhi), (ylo, yhi) = box.bounds
        covered += np.outer(_axis_overlap(x_edges, xlo, xhi), _axis_overlap(y_edges, ylo, yhi))
    return np.clip(pixel - covered, 0.0, None)


def disc_mask(R: float, hx: float, hy: float) -> np.ndarray:
    """Pixel offsets whose centers lie within R of the origin pixel's center."""
    nx, ny = math.ceil(R / hx), math.ceil(R / hy)
    ox = np.arange(-nx, nx + 1) * hx
    oy = np.arange(-ny, ny + 1) * hy
    return (ox[:, None] ** 2 + oy[None, :] ** 2 <= R * R).astype(float)


def check_complement_density(
    domain: BoxUnionDomain,
    R: float,
    window: AxisBox,
    s: SLike,
    grid: int = DEFAULT_GRID,
) -> ConditionReport:
    """
    Certify |complement ∩ B(x, R)| > c for the window's pixel centers in the domain.

    Raises:
        InvalidArgumentError: For a non-planar domain, an infinite window, R <= 0 or grid < 4.
        DomainError: If no window pixel center lies in the domain.
    """
    order = FracOrder.of(s)
    if domain.dim != 2 or window.dim != 2:
        raise InvalidArgumentError("the density condition is checked on planar domains")
    if not window.is_finite:
        raise InvalidArgumentError("density window must be finite")
    if R <= 0.0 or grid < 4:
        raise InvalidArgumentError("need R > 0 and grid >= 4")

    (wx0, wx1), (wy0, wy1) = window.bounds
    hx, hy = (wx1 - wx0) / grid, (wy1 - wy0) / grid
    pad_x, pad_y = math.ceil(R / hx) + 1, math.ceil(R / hy) + 1
    x_edges = wx0 + hx * np.arange(-pad_x, grid + pad_x + 1)
    y_edges = wy0 + hy * np.arange(-pad_y, grid + pad_y + 1)
    areas = complement_area_map(domain, x_edges, y_edges)
    seen = fftconvolve(areas, disc_mask(R, hx, hy), mode="same")
    inner = seen[pad_x : pad_x + grid, pad_y : pad_y + grid]

    xc = 0.5 * (x_edges[pad_x : pad_x + grid] + x_edges[pad_x + 1 : pad_x + grid + 1])
    yc = 0.5 * (y_edges[pad_y : pad_y + grid] + y_edges[pad_y + 1 : pad_y + grid + 1])
    cx, cy = np.meshgrid(xc, yc, indexing="ij")
    centers = np.stack([cx.ravel(), cy.ravel()], axis=1)
    inside = point_in_domain(domain, centers).reshape(grid, grid)
    if not inside.any():
        raise DomainError("no window pixel center lies in the domain")

    values = np.where(inside, inner, np.inf)
    worst = np.unravel_index(int(np.argmin(values)), values.shape)
    c_min = max(float(values[worst]), 0.0)
    tolerance = 2.0 * math.pi * R * math.hypot(hx, hy)
    witness = {
        "R": R,
        "c_min": c_min,
        "tolerance": tolerance,
        "worst_center": [float(cx[worst]), float(cy[worst])],
        "grid": grid,
    }
    logger.info(f"Complement density: c_min = {c_min:.6g} (tolerance {tolerance:.3g}, R = {R:g})")
    if c_min > tolerance:
        return ConditionReport(
            condition="complement_density",
            verdict=Verdict.HOLDS,
            witness=witness,
            bound=c_min / R ** (2.0 + 2.0 * order.s),
            bound_kind="lower",
        )
    return ConditionReport(
        condition="complement_density", verdict=Verdict.INCONCLUSIVE, witness=witness
    )
