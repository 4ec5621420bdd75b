"""
reflection.py

PURPOSE: Energies behind the reflection step for congruent parallel strips.
DEPENDENCIES: kernels.tent

ARCHITECTURE NOTES:
Two unit-width vertical strips C_j = (0, 1) x R and C_m = (1 + gap, 2 + gap) x R
carry the same indicator pattern: a union of y-intervals (fractions of k0,
scaled by k0). With psi the indicator, the cross term is the integral over
C_j x C_m of (psi(x) - psi(y))^2 |x - y|^(-2-2s), and the same-strip term is the
integral over C_j x C_j. Both reduce to energies between pattern boxes and the
pieces of the strip outside the pattern, which may be semi-infinite. The
reflection across the midline sends C_m onto C_j without bringing any pair of
points closer together, so cross <= same.
"""

import math

from fracpoincare.config import QuadratureSettings
from fracpoincare.errors import InvalidArgumentError
from fracpoincare.kernels.tent import tent_energy
from fracpoincare.models.geometry import AxisBox
from fracpoincare.models.order import FracOrder, SLike


def pattern_complement(pattern: list[tuple[float, float]]) -> list[tuple[float, float]]:
    """The open pieces of R outside a sorted union of disjoint intervals."""
    pieces = []
    edge = -math.inf
    for lo, hi in pattern:
        if lo > edge:
            pieces.append((edge, lo))
        edge = hi
    pieces.append((edge, math.inf))
    return pieces


def _strip_energy(
    inside: list[tuple[float, float]],
    outside: list[tuple[float, float]],
    x_in: tuple[float, float],
    x_out: tuple[float, float],
    s: FracOrder,
    tol: QuadratureSettings | None,
) -> float:
    total = []
    for y_in in inside:
        for y_out in outside:
            box_in = AxisBox.of(x_in, y_in)
            box_out = AxisBox.of(x_out, y_out)
            total.append(tent_energy(box_in, box_out, s, tol).value)
    return math.fsum(total)


def reflection_comparison(
    strip_gap: float,
    k0: float,
    s: SLike,
    pattern_boxes: tuple[tuple[float, float], ...] = ((0.0, 1.0),),
    tol: QuadratureSettings | None = None,
) -> tuple[float, float]:
    """
    Cross-strip and same-strip energies of a strip indicator pattern.

    Args:
        strip_gap: Horizontal gap between the two strips (>= 0).
        k0: Vertical scale; pattern intervals are multiplied by it.
        pattern_boxes: Sorted disjoint y-intervals in units of k0.

    Returns:
        (cross, same).
    """
    order = FracOrder.of(s)
    order.require_sub("reflection_comparison")
    if strip_gap < 0.0 or k0 <= 0.0:
        raise InvalidArgumentError("need strip_gap >= 0 and k0 > 0")
    pattern = [(lo * k0, hi * k0) for lo, hi in sorted(pattern_boxes)]
    if any(lo >= hi for lo, hi in pattern) or any(
        b > c for (_, b), (c, _) in zip(pattern, pattern[1:], strict=False)
    ):
        raise InvalidArgumentError("pattern intervals must be nonempty and disjoint")
    if not all(math.isfinite(v) for pair in pattern for v in pair):
        raise InvalidArgumentError("pattern intervals must be finite")
    outside = pattern_complement(pattern)

    near = (0.0, 1.0)
    far = (1.0 + strip_gap, 2.0 + strip_gap)
    cross = _strip_energy(pattern, outside, near, far, order, tol)
    cross += _strip_energy(pattern, outside, far, near, order, tol)
    same = 2.0 * _strip_energy(pattern, outside, near, near, order, tol)
    return cross, same
