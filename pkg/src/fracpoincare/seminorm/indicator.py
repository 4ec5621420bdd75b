"""
indicator.py

PURPOSE: Gagliardo seminorms and Rayleigh quotients of indicator functions on box unions.
DEPENDENCIES: kernels, models, parallel

ARCHITECTURE NOTES:
For f the indicator of a union of disjoint boxes B_j,

    [f]^2 = 2 * sum_j (Per_s(B_j) - sum_{i != j} E(B_j, B_i)),

so the seminorm needs one perimeter per box and one energy per unordered
pair. Pairs whose energy is provably negligible (below a relative threshold
of the perimeter sum) are skipped; the skipped mass is bounded by the energy
of the first box against the whole vertical strip over the second, and that
bound is reported as truncation_bound.

Terms are evaluated through parallel.ordered_map and summed with math.fsum
in a fixed order, so the thread count never changes the result.
"""

import logging
import math

from fracpoincare.config import QuadratureSettings
from fracpoincare.errors import DivergentEnergyError
from fracpoincare.kernels.closed_forms import box_strip_between, interval_complement_energy
from fracpoincare.kernels.tent import box_box_energy, rect_perimeter_s
from fracpoincare.models.energy import EnergyValue, weakest_method
from fracpoincare.models.geometry import AxisBox, IndicatorFunction
from fracpoincare.models.order import FracOrder, SLike
from fracpoincare.models.results import SeminormBreakdown
from fracpoincare.parallel import ordered_map

logger = logging.getLogger(__name__)

TRUNCATION_RTOL = 1e-9


def box_perimeter(box: AxisBox, s: SLike, tol: QuadratureSettings | None = None) -> EnergyValue:
    """Per_s of a single finite box in one or two dimensions."""
    if box.dim == 1:
        return interval_complement_energy(box.sides[0], s)
    w, h = box.sides
    return rect_perimeter_s(w, h, s, tol)


def pair_energy_bound(A: AxisBox, B: AxisBox, s: SLike) -> float:
    """
    Upper bound on E(A, B) from a larger, closed-form configuration.

    In the plane, B lies in the vertical strip over its x-extent; if A is
    horizontally clear of that strip the box-strip closed form bounds E(A, B).
    Otherwise the point-mass bound |A||B| dist^(-n-2s) is used. Returns inf
    when neither applies.
    """
    sv = FracOrder.of(s).s
    bounds = [math.inf]
    gaps = [
        max(a_lo - b_hi, b_lo - a_hi, 0.0)
        for (a_lo, a_hi), (b_lo, b_hi) in zip(A.bounds, B.bounds, strict=True)
    ]
    dist = math.hypot(*gaps)
    if dist > 0.0:
        bounds.append(A.volume * B.volume * dist ** (-(A.dim + 2.0 * sv)))
    if A.dim == 2 and gaps[0] > 0.0:
        bounds.append(box_strip_between(A.bounds[0], A.sides[1], B.bounds[0], sv))
        bounds.append(box_strip_between(B.bounds[0], B.sides[1], A.bounds[0], sv))
    return min(bounds)


def indicator_seminorm(
    f: IndicatorFunction,
    s: SLike,
    tol: QuadratureSettings | None = None,
    threads: int = 1,
    truncation_rtol: float = TRUNCATION_RTOL,
) -> SeminormBreakdown:
    """
    [f]^2 of an indicator through its perimeter / cross-term decomposition.

    Raises:
        DivergentEnergyError: If s >= 1/2 (indicators are not in H^s there).
        QuadratureError: If a box energy fails to converge.
    """
    order = FracOrder.of(s)
    if order.s >= 0.5:
        raise DivergentEnergyError(f"indicator seminorms are infinite for s >= 1/2 (got {order.s})")
    boxes = f.boxes

    perimeters = ordered_map(lambda box: box_perimeter(box, order, tol), boxes, threads)
    per_sum = math.fsum(p.value for p in perimeters)

    pairs: list[tuple[int, int]] = []
    skipped = 0.0
    for i in range(len(boxes)):
        for j in range(i + 1, len(boxes)):
            bound = pair_energy_bound(boxes[i], boxes[j], order)
            if bound < truncation_rtol * per_sum:
                skipped += bound
            else:
                pairs.append((i, j))
    energies = ordered_map(
        lambda ij: box_box_energy(boxes[ij[0]], boxes[ij[1]], order, tol), pairs, threads
    )

    cross = 2.0 * math.fsum(e.value for e in energies)
    total = max(2.0 * (per_sum - cross), 0.0)
    area = f.area
    abserr = 2.0 * math.fsum(p.abserr for p in perimeters)
    abserr += 4.0 * math.fsum(e.abserr for e in energies)
    if skipped > 0.0:
        n_skipped = len(boxes) * (len(boxes) - 1) // 2 - len(pairs)
        logger.debug(f"Skipped {n_skipped} negligible pairs (bound {skipped:.2e})")
    return SeminormBreakdown(
        perimeter_terms=tuple(p.value for p in perimeters),
        cross_terms=cross,
        total=total,
        area=area,
        quotient=total / area,
        method=weakest_method([*perimeters, *energies]),
        abserr=abserr,
        truncation_bound=4.0 * skipped,
    )


def rayleigh_quotient(
    f: IndicatorFunction, s: SLike, tol: QuadratureSettings | None = None, threads: int = 1
) -> float:
    """[f]^2 divided by the area of the support."""
    return indicator_seminorm(f, s, tol, threads).quotient
