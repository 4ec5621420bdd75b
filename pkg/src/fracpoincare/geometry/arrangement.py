"""
arrangement.py

PURPOSE: Elementary decomposition of a box union, normalization, and complement extraction.
DEPENDENCIES: numpy, models.geometry

ARCHITECTURE NOTES:
The finite box endpoints on each axis split the axis into alternating open
intervals and points ("elements"). Products of elements are the pieces of the
arrangement: open cells, seams (segments between cells) and vertices. Every input
box is a union of pieces, so a piece is covered iff one representative point lies
strictly inside some box. All set operations below are exact on pieces.

Normalization sweeps columns of cells: covered cells in a column merge across
covered seams, then adjacent columns merge when their runs coincide and the
separating seam is covered. The result is disjoint, deterministic and idempotent;
it differs from the input union by at most finitely many seams and vertices
(a null set).

In "closure" mode every seam between covered cells is treated as covered. This
realizes the interior of the closure, which is what the extended finite ball
condition sees: slits and shared edges of zero area disappear.
"""

import logging
from dataclasses import dataclass
from functools import cached_property

import numpy as np

from fracpoincare.models.geometry import AxisBox, BoxUnionDomain

logger = logging.getLogger(__name__)

# Boxes tested against all pieces at once; bounds memory of the coverage scan.
_COVERAGE_CHUNK = 256


def _element_bounds(coords: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """Lower/upper bounds of the 2m+1 elements generated by m sorted coordinates."""
    m = len(coords)
    lo = np.empty(2 * m + 1)
    hi = np.empty(2 * m + 1)
    lo[0] = -np.inf
    hi[-1] = np.inf
    for i, c in enumerate(coords):
        hi[2 * i] = c
        lo[2 * i + 1] = c
        hi[2 * i + 1] = c
        lo[2 * i + 2] = c
    return lo, hi


def _representatives(lo: np.ndarray, hi: np.ndarray) -> np.ndarray:
    """One point per element: midpoints, points themselves, or a unit step into a ray."""
    rep = np.where(np.isfinite(lo) & np.isfinite(hi), 0.5 * (lo + hi), 0.0)
    rep = np.where(np.isinf(lo) & np.isfinite(hi), hi - 1.0, rep)
    rep = np.where(np.isfinite(lo) & np.isinf(hi), lo + 1.0, rep)
    return rep


@dataclass(frozen=True)
class Arrangement:
    """
    Elementary pieces of a box union and their coverage.

    Attributes:
        coords: Sorted unique finite endpoints per axis.
        covered: Boolean array indexed by element index per axis. Even
            indices are open intervals, odd indices are points.
    """

    coords: tuple[np.ndarray, ...]
    covered: np.ndarray

    @property
    def dim(self) -> int:
        return len(self.coords)

    @cached_property
    def element_bounds(self) -> tuple[tuple[np.ndarray, np.ndarray], ...]:
        return tuple(_element_bounds(c) for c in self.coords)

    def bounds_of(self, axis: int, start: int, stop: int) -> tuple[float, float]:
        """Bounds spanned by elements start..stop (inclusive) on one axis."""
        lo, hi = self.element_bounds[axis]
        return float(lo[start]), float(hi[stop])


def build_arrangement(boxes: tuple[AxisBox, ...] | list[AxisBox], dim: int) -> Arrangement:
    """Compute the elementary decomposition and the covered flag of every piece."""
    coords = []
    for axis in range(dim):
        values = [v for box in boxes for v in box.bounds[axis] if np.isfinite(v)]
        coords.append(np.unique(np.array(values, dtype=float)))

    reps = [_representatives(*_element_bounds(c)) for c in coords]
    shape = tuple(len(r) for r in reps)
    covered = np.zeros(shape, dtype=bool)

    lows = np.array([box.lo for box in boxes]).reshape(len(boxes), dim)
    highs = np.array([box.hi for box in boxes]).reshape(len(boxes), dim)
    for start in range(0, len(boxes), _COVERAGE_CHUNK):
        lo = lows[start : start + _COVERAGE_CHUNK]
        hi = highs[start : start + _COVERAGE_CHUNK]
        inside_axes = [
            (lo[:, axis, None] < reps[axis][None, :]) & (reps[axis][None, :] < hi[:, axis, None])
            for axis in range(dim)
        ]
        if dim == 1:
            covered |= inside_axes[0].any(axis=0)
        else:
            covered |= (inside_axes[0][:, :, None] & inside_axes[1][:, None, :]).any(axis=0)

    logger.debug(f"Arrangement with {covered.size} pieces from {len(boxes)} boxes")
    return Arrangement(coords=tuple(coords), covered=covered)


def _column_runs(
    cells: np.ndarray, seams: np.ndarray, closure: bool
) -> tuple[tuple[int, int], ...]:
    """
    Maximal runs of covered cells along one column.

    Args:
        cells: Coverage of the open elements (even indices) in the column.
        seams: Coverage of the point elements (odd indices) in the column.
        closure: Join adjacent covered cells regardless of the seam.

    Returns:
        (first, last) element indices of each run.
    """
    runs: list[tuple[int, int]] = []
    start: int | None = None
    for j, cell in enumerate(cells):
        if cell:
            if start is None:
                start = 2 * j
            elif not (closure or seams[j - 1]):
                runs.append((start, 2 * (j - 1)))
                start = 2 * j
        elif start is not None:
            runs.append((start, 2 * (j - 1)))
            start = None
    if start is not None:
        runs.append((start, 2 * (len(cells) - 1)))
    return tuple(runs)


def merged_boxes(arr: Arrangement, mask: np.ndarray, closure: bool) -> list[AxisBox]:
    """
    Merge the open cells selected by `mask` into disjoint boxes.

    `mask` is a piece-coverage array of the same shape as arr.covered; seams
    and vertices in it decide whether adjacent cells may merge unless
    `closure` is set.
    """
    if arr.dim == 1:
        runs = _column_runs(mask[0::2], mask[1::2], closure)
        return [AxisBox.of(arr.bounds_of(0, a, b)) for a, b in runs]

    n_cols = mask.shape[0] // 2 + 1
    columns = [_column_runs(mask[2 * i, 0::2], mask[2 * i, 1::2], closure) for i in range(n_cols)]

    def seam_covered(i: int, runs: tuple[tuple[int, int], ...]) -> bool:
        if closure:
            return True
        seam = mask[2 * i + 1]
        return all(bool(seam[a : b + 1].all()) for a, b in runs)

    boxes: list[AxisBox] = []
    first = 0
    for i in range(n_cols):
        last_col = i == n_cols - 1
        if not last_col and columns[i + 1] == columns[i] and seam_covered(i, columns[i]):
            continue
        x_bounds = arr.bounds_of(0, 2 * first, 2 * i)
        boxes.extend(AxisBox.of(x_bounds, arr.bounds_of(1, a, b)) for a, b in columns[i])
        first = i + 1
    return boxes


def _sorted(boxes: list[AxisBox]) -> tuple[AxisBox, ...]:
    return tuple(sorted(boxes, key=lambda b: tuple(v for pair in b.bounds for v in pair)))


def normalize(domain: BoxUnionDomain) -> BoxUnionDomain:
    """Disjoint, deterministically ordered boxes covering the same union up to a null set."""
    arr = build_arrangement(domain.boxes, domain.dim)
    return domain.with_boxes(_sorted(merged_boxes(arr, arr.covered, closure=False)))


def closure_interior(domain: BoxUnionDomain) -> BoxUnionDomain:
    """Boxes covering the interior of the closure of the union (zero-area gaps removed)."""
    arr = build_arrangement(domain.boxes, domain.dim)
    return domain.with_boxes(_sorted(merged_boxes(arr, arr.covered, closure=True)))


def complement_boxes(
    domain: BoxUnionDomain, extended: bool = False
) -> tuple[np.ndarray, np.ndarray]:
    """
    Closed boxes whose union is the closure of the complement.

    Uncovered cells are merged in closure mode. Unless `extended` is set,
    uncovered seams and vertices whose neighbouring cells are all covered
    (slits and isolated points) are added as degenerate boxes.

    Returns:
        (lo, hi) arrays of shape (count, dim); empty when the domain is the whole space
        (or, in extended mode, the whole space up to a null set).
    """
    arr = build_arrangement(domain.boxes, domain.dim)
    free = ~arr.covered
    boxes = [(box.lo, box.hi) for box in merged_boxes(arr, free, closure=True)]

    if not extended:
        boxes.extend(_isolated_pieces(arr))

    dim = domain.dim
    if not boxes:
        return np.empty((0, dim)), np.empty((0, dim))
    lo = np.array([b[0] for b in boxes], dtype=float).reshape(-1, dim)
    hi = np.array([b[1] for b in boxes], dtype=float).reshape(-1, dim)
    return lo, hi


def _isolated_pieces(arr: Arrangement) -> list[tuple[np.ndarray, np.ndarray]]:
    """Uncovered lower-dimensional pieces not already in the closure of an uncovered cell."""
    cov = arr.covered
    bounds = arr.element_bounds
    pieces: list[tuple[np.ndarray, np.ndarray]] = []

    if arr.dim == 1:
        for e in range(1, len(cov), 2):
            if not cov[e] and cov[e - 1] and cov[e + 1]:
                pieces.append((np.array([bounds[0][0][e]]), np.array([bounds[0][1][e]])))
        return pieces

    nx, ny = cov.shape
    for ex in range(nx):
        for ey in range(ny):
            if cov[ex, ey] or (ex % 2 == 0 and ey % 2 == 0):
                continue
            neighbours = [
                cov[ex + dx, ey + dy]
                for dx in ((-1, 1) if ex % 2 else (0,))
                for dy in ((-1, 1) if ey % 2 else (0,))
            ]
            if all(neighbours):
                lo = np.array([bounds[0][0][ex], bounds[1][0][ey]])
                hi = np.array([bounds[0][1][ex], bounds[1][1][ey]])
                pieces.append((lo, hi))
    return pieces


def point_in_domain(domain: BoxUnionDomain, points: np.ndarray) -> np.ndarray:
    """Whether each point lies strictly inside some box, shape (n,)."""
    pts = np.atleast_2d(points)
    inside = np.zeros(len(pts), dtype=bool)
    for box in domain.boxes:
        inside |= np.all((box.lo < pts) & (pts < box.hi), axis=1)
    return inside
