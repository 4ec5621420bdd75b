"""
necessary.py

PURPOSE: Upper bounds on the Poincare constant from the largest ball inside the domain.
DEPENDENCIES: geometry.radius, kernels.tent, conditions.constants

ARCHITECTURE NOTES:
A ball of radius R inside the domain carries a rescaled test function, so
P^2 <= lambda_ref * R^(-2s) (plain balls). For s < 1/2 the indicator of a
ball that only avoids a zero-area complement is admissible too, which gives
P^2 <= 2 P_s(B_1) R^(2-2s) / |B_R| = (2 P_s(B_1) / pi) R^(-2s)
(extended balls). Both bounds decay to zero only as R grows, so a window
search can never show the constant is positive: the verdict is always
Inconclusive and the useful output is the bound itself.
"""

import logging
import math
from enum import StrEnum

from fracpoincare.conditions.constants import ReferenceConstants
from fracpoincare.errors import DomainError, InvalidArgumentError
from fracpoincare.geometry.radius import (
    RadiusEstimate,
    extended_inscribed_radius,
    inscribed_radius,
)
from fracpoincare.kernels.tent import ball_perimeter_s
from fracpoincare.models.geometry import AxisBox, BoxUnionDomain
from fracpoincare.models.order import FracOrder, SLike
from fracpoincare.models.results import ConditionReport, Verdict

logger = logging.getLogger(__name__)


class BallMode(StrEnum):
    """Which balls count as inside the domain."""

    PLAIN = "plain"
    EXTENDED = "extended"


def plain_ball_bound(radius: float, s: SLike, lambda_ref: float) -> float:
    return lambda_ref * radius ** (-2.0 * FracOrder.of(s).s)


def extended_ball_bound(radius: float, s: SLike, unit_perimeter: float) -> float:
    return 2.0 * unit_perimeter / math.pi * radius ** (-2.0 * FracOrder.of(s).s)


def necessary_upper_bound(
    domain: BoxUnionDomain,
    mode: BallMode,
    window: AxisBox,
    s: SLike,
    resolution: int = 64,
    lambda_ref: float | None = None,
    constants: ReferenceConstants | None = None,
) -> ConditionReport:
    """
    Upper bound on P^2 from the inscribed radius found in the window.

    Raises:
        OutOfRegimeError: For extended balls with s >= 1/2.
        InvalidArgumentError: For a non-planar domain or an infinite window.
        DomainError: If the window holds no ball of positive radius.
    """
    order = FracOrder.of(s)
    mode = BallMode(mode)
    if mode is BallMode.EXTENDED:
        order.require_sub("extended-ball upper bound")
    if domain.dim != 2:
        raise InvalidArgumentError("ball bounds are computed for planar domains")

    estimate: RadiusEstimate
    if mode is BallMode.PLAIN:
        estimate = inscribed_radius(domain, window, resolution)
    else:
        estimate = extended_inscribed_radius(domain, window, resolution)
    radius = estimate.radius
    if not radius > 0.0:
        raise DomainError("the window holds no ball inside the domain")

    witness: dict[str, object] = {
        "R": radius,
        "center": list(estimate.center),
        "window_limited": estimate.window_limited,
        "error": estimate.error,
        "mode": mode.value,
    }
    if mode is BallMode.PLAIN:
        if lambda_ref is None:
            lambda_ref = (constants or ReferenceConstants()).lambda_ref(order)
        witness["lambda_ref"] = lambda_ref
        bound = plain_ball_bound(radius, order, lambda_ref)
    else:
        perimeter = ball_perimeter_s(order)
        witness["unit_ball_perimeter"] = perimeter.value
        witness["perimeter_abserr"] = perimeter.abserr
        bound = extended_ball_bound(radius, order, perimeter.value)

    if estimate.window_limited:
        logger.warning(f"Ball of radius {radius:g} is limited by the window")
    logger.info(f"{mode.value} ball bound: R = {radius:.6g}, P^2 <= {bound:.6g}")
    return ConditionReport(
        condition=f"{mode.value}_ball",
        verdict=Verdict.INCONCLUSIVE,
        witness=witness,
        bound=bound,
        bound_kind="upper",
    )
