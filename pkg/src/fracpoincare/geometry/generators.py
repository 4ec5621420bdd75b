"""
generators.py

PURPOSE: Finite truncations of the structured domain families used by the experiments.
DEPENDENCIES: numpy, models.geometry

ARCHITECTURE NOTES:
Each generator returns a BoxUnionDomain whose `generator` field records the
recipe, so a domain file can carry just {"generator": {...}} and be expanded on
load. Generators emit overlapping boxes freely; geometry.normalize makes them
disjoint when an algorithm needs it.

Families:
- counterexample: unit strips C_k at offsets a_k separated by gaps s_|k| = |k|^-beta,
  joined by the horizontal strip D = R x (-2, -1).
- strip_family / parallel_strips: vertical strips from explicit widths and gaps.
- finite_strips: a finite union of axis-parallel infinite strips (the cross).
- decreasing_widths: intervals of length 1/n separated by gaps 1/n, mirrored.
- annuli: row-run rasterization of the rings B_2k minus B_2k-1.
- lattice_holes: the plane minus small closed squares at integer points.
- slit_plane: the plane minus the rays {n} x ((-inf, 0] u [1, inf)).
"""

import logging
import math
from collections.abc import Callable
from typing import Any

import numpy as np

from fracpoincare.errors import InvalidArgumentError
from fracpoincare.models.geometry import AxisBox, BoxUnionDomain, GeneratorSpec

logger = logging.getLogger(__name__)

INF = math.inf
REAL_LINE = (-INF, INF)
CROSS_STRIP = (-2.0, -1.0)


# =============================================================================
# Counterexample strips
# =============================================================================


def gap_sequence(beta: float, k_max: int) -> np.ndarray:
    """Gap widths s_0..s_k_max with s_0 = 0 and s_j = j^-beta."""
    if k_max < 0:
        raise InvalidArgumentError("k_max must be nonnegative")
    j = np.arange(k_max + 1, dtype=float)
    gaps = np.zeros(k_max + 1)
    gaps[1:] = j[1:] ** (-beta)
    return gaps


def strip_offsets(beta: float, k_max: int) -> dict[int, float]:
    """
    Left edges a_k of the strips C_k for -k_max <= k <= k_max.

    a_k = k + sum_{j<=k} s_j for k >= 0 and a_k = k - sum_{j=k+1..0} s_|j| for
    k < 0. C_-1 and C_0 share the edge x = 0; every other pair of neighbours is
    separated by a gap of width s_|k|.
    """
    gaps = gap_sequence(beta, k_max)
    cumulative = np.cumsum(gaps)
    offsets: dict[int, float] = {0: 0.0}
    for k in range(1, k_max + 1):
        offsets[k] = k + float(cumulative[k])
        offsets[-k] = -k - float(cumulative[k - 1])
    return offsets


def gap_bounds(beta: float, k_max: int) -> dict[int, tuple[float, float]]:
    """Gap strips S_k = (a_k - s_|k|, a_k) for 1 <= |k| <= k_max."""
    gaps = gap_sequence(beta, k_max)
    offsets = strip_offsets(beta, k_max)
    return {
        k: (offsets[k] - float(gaps[abs(k)]), offsets[k])
        for k in range(-k_max, k_max + 1)
        if k != 0
    }


def counterexample(beta: float = 3.0, k_max: int = 8, cross_strip: bool = True) -> BoxUnionDomain:
    """Strips C_-k_max..C_k_max, optionally joined by D = R x (-2, -1)."""
    if k_max < 1:
        raise InvalidArgumentError("k_max must be at least 1")
    offsets = strip_offsets(beta, k_max)
    boxes = [AxisBox.of((offsets[k], offsets[k] + 1.0), REAL_LINE) for k in sorted(offsets)]
    if cross_strip:
        boxes.append(AxisBox.of(REAL_LINE, CROSS_STRIP))
    return BoxUnionDomain(
        dim=2,
        boxes=tuple(boxes),
        name=f"counterexample(beta={beta:g}, k_max={k_max})",
        generator=GeneratorSpec(
            type="counterexample", beta=beta, k_max=k_max, cross_strip=cross_strip
        ),
        metadata={"a_k": {str(k): offsets[k] for k in sorted(offsets)}},
    )


# =============================================================================
# Strip families
# =============================================================================


def strip_family(
    widths: list[float], gaps: list[float], start: float = 0.0
) -> BoxUnionDomain:
    """Vertical strips of the given widths; gaps[i] separates strip i and strip i+1."""
    if not widths:
        raise InvalidArgumentError("strip_family needs at least one width")
    if len(gaps) != len(widths) - 1:
        raise InvalidArgumentError("strip_family needs exactly len(widths) - 1 gaps")
    if any(w <= 0 for w in widths) or any(g < 0 for g in gaps):
        raise InvalidArgumentError("widths must be positive and gaps nonnegative")
    boxes = []
    left = start
    for i, width in enumerate(widths):
        boxes.append(AxisBox.of((left, left + width), REAL_LINE))
        if i < len(gaps):
            left += width + gaps[i]
    return BoxUnionDomain(
        dim=2,
        boxes=tuple(boxes),
        name=f"strip_family({len(widths)} strips)",
        generator=GeneratorSpec(
            type="strip_family", widths=list(widths), gaps=list(gaps), start=start
        ),
    )


def parallel_strips(count: int = 9, width: float = 1.0, gap: float = 1.0) -> BoxUnionDomain:
    """Count parallel unit strips centered on the origin with constant gaps."""
    if count < 1 or gap <= 0:
        raise InvalidArgumentError("parallel_strips needs count >= 1 and gap > 0")
    start = -0.5 * (count * width + (count - 1) * gap)
    domain = strip_family([width] * count, [gap] * (count - 1), start=start)
    return domain.model_copy(
        update={
            "name": f"parallel_strips(count={count}, gap={gap:g})",
            "generator": GeneratorSpec(type="parallel_strips", count=count, width=width, gap=gap),
        }
    )


def finite_strips(strips: list[dict[str, Any]] | None = None) -> BoxUnionDomain:
    """
    A finite union of axis-parallel infinite strips.

    Each strip is {"axis": "x" | "y", "lo": a, "hi": b}: axis "x" bounds the
    first coordinate. Defaults to the cross (-1/2, 1/2) x R u R x (-1/2, 1/2).
    """
    strips = strips or [
        {"axis": "x", "lo": -0.5, "hi": 0.5},
        {"axis": "y", "lo": -0.5, "hi": 0.5},
    ]
    boxes = []
    for strip in strips:
        band = (float(strip["lo"]), float(strip["hi"]))
        if strip["axis"] == "x":
            boxes.append(AxisBox.of(band, REAL_LINE))
        elif strip["axis"] == "y":
            boxes.append(AxisBox.of(REAL_LINE, band))
        else:
            raise InvalidArgumentError(f"strip axis must be 'x' or 'y', got {strip['axis']!r}")
    return BoxUnionDomain(
        dim=2,
        boxes=tuple(boxes),
        name=f"finite_strips({len(boxes)})",
        generator=GeneratorSpec(type="finite_strips", strips=strips),
    )


def decreasing_intervals(count: int) -> list[tuple[float, float]]:
    """The first `count` intervals of length 1/n with gap 1/n after the n-th one."""
    intervals = []
    left = 0.0
    for n in range(1, count + 1):
        intervals.append((left, left + 1.0 / n))
        left += 2.0 / n
    return intervals


def decreasing_widths(count: int = 16, product: bool = False) -> BoxUnionDomain:
    """
    The mirrored union of decreasing intervals, or its product with R.

    The two halves touch at the origin, which stays outside the domain.
    """
    if count < 1:
        raise InvalidArgumentError("decreasing_widths needs count >= 1")
    right = decreasing_intervals(count)
    intervals = [(-b, -a) for a, b in reversed(right)] + right
    if product:
        boxes = tuple(AxisBox.of(iv, REAL_LINE) for iv in intervals)
        dim = 2
    else:
        boxes = tuple(AxisBox.of(iv) for iv in intervals)
        dim = 1
    return BoxUnionDomain(
        dim=dim,
        boxes=boxes,
        name=f"decreasing_widths(count={count}{', x R' if product else ''})",
        generator=GeneratorSpec(type="decreasing_widths", count=count, product=product),
    )


# =============================================================================
# Planar families with holes
# =============================================================================


def annuli(rings: int = 4, cells_per_unit: int = 4) -> BoxUnionDomain:
    """
    Rasterized union of the rings B_2k minus B_2k-1, k = 1..rings.

    A grid cell is kept when its center lies in a ring; kept cells are merged
    into horizontal runs row by row.
    """
    if rings < 1 or cells_per_unit < 1:
        raise InvalidArgumentError("annuli needs rings >= 1 and cells_per_unit >= 1")
    extent = 2.0 * rings
    n = int(round(2 * extent * cells_per_unit))
    edges = np.linspace(-extent, extent, n + 1)
    centers = 0.5 * (edges[:-1] + edges[1:])
    cx, cy = np.meshgrid(centers, centers, indexing="xy")
    radius = np.hypot(cx, cy)
    inside = (np.ceil(radius) % 2 == 0) & (radius > 1.0) & (radius < extent)

    boxes = []
    for row in range(n):
        mask = inside[row]
        padded = np.concatenate([[False], mask, [False]])
        changes = np.flatnonzero(padded[1:] != padded[:-1])
        for start, stop in zip(changes[0::2], changes[1::2], strict=True):
            boxes.append(
                AxisBox.of(
                    (float(edges[start]), float(edges[stop])),
                    (float(edges[row]), float(edges[row + 1])),
                )
            )
    logger.debug(f"Annuli rasterized into {len(boxes)} row runs")
    return BoxUnionDomain(
        dim=2,
        boxes=tuple(boxes),
        name=f"annuli(rings={rings})",
        generator=GeneratorSpec(type="annuli", rings=rings, cells_per_unit=cells_per_unit),
    )


def lattice_holes(extent: int = 4, radius: float = 0.1) -> BoxUnionDomain:
    """
    The plane minus closed squares [n-r, n+r] x [m-r, m+r] for |n|, |m| <= extent.

    Built from vertical and horizontal bands between the hole rows; a point is
    missed only if both its coordinates fall in hole bands.
    """
    if extent < 0 or not 0.0 < radius < 0.5:
        raise InvalidArgumentError("lattice_holes needs extent >= 0 and 0 < radius < 1/2")
    cuts = [(n - radius, n + radius) for n in range(-extent, extent + 1)]
    bands = [(-INF, cuts[0][0])]
    bands += [(a[1], b[0]) for a, b in zip(cuts, cuts[1:], strict=False)]
    bands.append((cuts[-1][1], INF))
    boxes = [AxisBox.of(band, REAL_LINE) for band in bands]
    boxes += [AxisBox.of(REAL_LINE, band) for band in bands]
    return BoxUnionDomain(
        dim=2,
        boxes=tuple(boxes),
        name=f"lattice_holes(extent={extent}, r={radius:g})",
        generator=GeneratorSpec(type="lattice_holes", extent=extent, radius=radius),
    )


def slit_plane(extent: int = 6) -> BoxUnionDomain:
    """
    The plane minus the rays {n} x ((-inf, 0] u [1, inf)) for |n| <= extent.

    Columns between consecutive slits are joined by the band R x (0, 1). The
    slits have zero area, so the closure interior is the whole plane.
    """
    if extent < 1:
        raise InvalidArgumentError("slit_plane needs extent >= 1")
    boxes = [AxisBox.of((-INF, float(-extent)), REAL_LINE)]
    boxes += [AxisBox.of((float(n), float(n + 1)), REAL_LINE) for n in range(-extent, extent)]
    boxes.append(AxisBox.of((float(extent), INF), REAL_LINE))
    boxes.append(AxisBox.of(REAL_LINE, (0.0, 1.0)))
    return BoxUnionDomain(
        dim=2,
        boxes=tuple(boxes),
        name=f"slit_plane(extent={extent})",
        generator=GeneratorSpec(type="slit_plane", extent=extent),
    )


GENERATORS: dict[str, Callable[..., BoxUnionDomain]] = {
    "counterexample": counterexample,
    "strip_family": strip_family,
    "parallel_strips": parallel_strips,
    "finite_strips": finite_strips,
    "decreasing_widths": decreasing_widths,
    "annuli": annuli,
    "lattice_holes": lattice_holes,
    "slit_plane": slit_plane,
}


def generate(spec: GeneratorSpec) -> BoxUnionDomain:
    """
    Expand a generator recipe into its box union.

    Raises:
        InvalidArgumentError: If the parameters do not fit the family.
    """
    factory = GENERATORS[spec.type]
    try:
        return factory(**spec.params)
    except TypeError as e:
        raise InvalidArgumentError(f"Bad parameters for generator '{spec.type}': {e}") from None
