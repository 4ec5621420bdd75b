"""
radius.py

PURPOSE: Distance to the complement and inscribed-ball radii of box unions.
DEPENDENCIES: numpy, geometry.arrangement

ARCHITECTURE NOTES:
The complement closure is a finite union of closed (possibly degenerate or
unbounded) boxes, so dist(x, complement) is the minimum over boxes of the norm
of the clamped offset. Evaluation is vectorized in point chunks.

The radius search scans a (resolution+1)^d node grid over the window, then
refines three times by a factor 4 around the best node. Each center's value is
capped by its distance to the window boundary, so the result is the radius of
the largest ball inside domain and window; `window_limited` reports when the cap
was active at the winner (the true radius may be larger). Ties are broken by
the lexicographically smallest center, so the witness is independent of
evaluation order.
"""

import itertools
import logging
import math

import numpy as np
from pydantic import BaseModel, ConfigDict

from fracpoincare.errors import DomainError, InvalidArgumentError
from fracpoincare.geometry.arrangement import complement_boxes, normalize
from fracpoincare.models.geometry import AxisBox, BoxUnionDomain

logger = logging.getLogger(__name__)

_POINT_CHUNK = 512
REFINEMENT_ROUNDS = 3
REFINEMENT_FACTOR = 4


class RadiusEstimate(BaseModel):
    """Inscribed radius with its witness center and one-sided grid error."""

    model_config = ConfigDict(frozen=True)

    radius: float
    center: tuple[float, ...]
    error: float
    window_limited: bool = False
    exact: bool = False


def distance_to_boxes(points: np.ndarray, lo: np.ndarray, hi: np.ndarray) -> np.ndarray:
    """Euclidean distance from each point to the union of closed boxes (inf if none)."""
    pts = np.atleast_2d(np.asarray(points, dtype=float))
    if lo.shape[0] == 0:
        return np.full(pts.shape[0], np.inf)
    out = np.empty(pts.shape[0])
    for start in range(0, pts.shape[0], _POINT_CHUNK):
        p = pts[start : start + _POINT_CHUNK, None, :]
        gap = np.maximum(np.maximum(lo[None] - p, p - hi[None]), 0.0)
        out[start : start + _POINT_CHUNK] = np.sqrt((gap**2).sum(axis=-1)).min(axis=1)
    return out


def distance_to_complement(
    domain: BoxUnionDomain, points: np.ndarray, extended: bool = False
) -> np.ndarray:
    """dist(x, complement) for each point; zero outside the domain."""
    lo, hi = complement_boxes(domain, extended=extended)
    return distance_to_boxes(points, lo, hi)


def _check_window(window: AxisBox, domain: BoxUnionDomain, resolution: int) -> None:
    if not window.is_finite:
        raise InvalidArgumentError("radius window must be finite")
    if window.dim != domain.dim:
        raise InvalidArgumentError("window and domain dimensions differ")
    if resolution < 8:
        raise InvalidArgumentError(f"resolution must be at least 8 (got {resolution})")


def _single_box_radius(domain: BoxUnionDomain, window: AxisBox) -> RadiusEstimate | None:
    """Exact radius for a single box with at least one finite side."""
    if len(domain.boxes) != 1:
        return None
    box = domain.boxes[0]
    finite = [hi - lo for lo, hi in box.bounds if math.isfinite(hi - lo)]
    if not finite:
        return None
    if not box.interiors_overlap(window):
        raise DomainError("domain does not meet the window")
    center = []
    for (lo, hi), (wlo, whi) in zip(box.bounds, window.bounds, strict=True):
        if math.isfinite(hi - lo):
            center.append(0.5 * (lo + hi))
        else:
            center.append(min(max(0.5 * (wlo + whi), lo), hi))
    return RadiusEstimate(radius=0.5 * min(finite), center=tuple(center), error=0.0, exact=True)


def _window_cap(points: np.ndarray, window: AxisBox) -> np.ndarray:
    return np.minimum(points - window.lo[None], window.hi[None] - points).min(axis=1)


def _best(
    points: np.ndarray, comp_lo: np.ndarray, comp_hi: np.ndarray, window: AxisBox
) -> tuple[float, tuple[float, ...], bool] | None:
    """Best (value, center, capped) among points strictly inside the domain."""
    dist = distance_to_boxes(points, comp_lo, comp_hi)
    cap = _window_cap(points, window)
    value = np.minimum(dist, cap)
    valid = (dist > 0.0) & (cap >= 0.0)
    if not valid.any():
        return None
    candidates = [
        (-float(value[i]), tuple(float(c) for c in points[i]), bool(cap[i] < dist[i]))
        for i in np.flatnonzero(valid)
    ]
    neg_value, center, capped = min(candidates, key=lambda c: (c[0], c[1]))
    return -neg_value, center, capped


def _grid(window: AxisBox, resolution: int) -> tuple[np.ndarray, tuple[float, ...]]:
    axes = [np.linspace(lo, hi, resolution + 1) for lo, hi in window.bounds]
    spacing = tuple((hi - lo) / resolution for lo, hi in window.bounds)
    return np.array(list(itertools.product(*axes)), dtype=float), spacing


def _search(
    domain: BoxUnionDomain,
    window: AxisBox,
    resolution: int,
    extended: bool,
    seeds: list[tuple[float, ...]] | None = None,
) -> RadiusEstimate:
    comp_lo, comp_hi = complement_boxes(domain, extended=extended)
    points, spacing = _grid(window, resolution)
    if seeds:
        points = np.vstack([points, np.array(seeds, dtype=float)])
    best = _best(points, comp_lo, comp_hi, window)
    if best is None:
        raise DomainError("no grid center of the window lies in the domain")

    step = spacing
    for _ in range(REFINEMENT_ROUNDS):
        local_axes = [
            np.clip(c + np.linspace(-h, h, 2 * REFINEMENT_FACTOR + 1), lo, hi)
            for c, h, (lo, hi) in zip(best[1], step, window.bounds, strict=True)
        ]
        local = np.array(list(itertools.product(*local_axes)), dtype=float)
        candidate = _best(local, comp_lo, comp_hi, window)
        if candidate is not None and (-candidate[0], candidate[1]) < (-best[0], best[1]):
            best = candidate
        step = tuple(h / REFINEMENT_FACTOR for h in step)

    error = 0.5 * math.sqrt(sum(h * h for h in spacing))
    value, center, capped = best
    logger.debug(f"Inscribed radius {value:.6g} at {center} (extended={extended})")
    return RadiusEstimate(radius=value, center=center, error=error, window_limited=capped)


def inscribed_radius(
    domain: BoxUnionDomain, window: AxisBox, resolution: int = 64
) -> RadiusEstimate:
    """
    Largest ball radius inside the domain with center on the window grid.

    The estimate is a lower bound on the supremum over the window, within
    `error` (half the grid-cell diagonal). Single boxes are handled exactly.

    Raises:
        InvalidArgumentError: For an infinite window or resolution below 8.
        DomainError: If no grid center lies in the domain.
    """
    _check_window(window, domain, resolution)
    domain = normalize(domain)
    exact = _single_box_radius(domain, window)
    if exact is not None:
        return exact
    return _search(domain, window, resolution, extended=False)


def extended_inscribed_radius(
    domain: BoxUnionDomain, window: AxisBox, resolution: int = 64
) -> RadiusEstimate:
    """
    Inscribed radius ignoring zero-area parts of the complement.

    Always at least inscribed_radius on the same window and resolution: the
    plain witness is re-evaluated as a candidate.
    """
    _check_window(window, domain, resolution)
    domain = normalize(domain)
    exact = _single_box_radius(domain, window)
    if exact is not None:
        return exact
    plain = _search(domain, window, resolution, extended=False)
    return _search(domain, window, resolution, extended=True, seeds=[plain.center])
