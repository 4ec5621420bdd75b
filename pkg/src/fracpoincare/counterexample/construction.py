"""
construction.py

PURPOSE: The strip-family domain with vanishing Poincaré constant and its indicator test functions.
DEPENDENCIES: numpy, geometry, models

ARCHITECTURE NOTES:
The domain is a two-sided sequence of unit-width vertical strips C_k =
(a_k, a_k + 1) x R separated by gaps of width s_|k| = |k|^-beta, joined by the
horizontal strip D = R x (-2, -1) so that the whole set is connected. The
geometry itself lives in geometry.generators; this module binds it to the
validated CexParams and builds the test functions: psi_{k,k0} is the indicator
of the k + 1 boxes (a_j, a_j + 1) x (0, k0), j = 0..k.
"""

import logging
import math

from fracpoincare.errors import InvalidArgumentError
from fracpoincare.geometry.arrangement import complement_boxes
from fracpoincare.geometry.generators import counterexample, strip_offsets
from fracpoincare.models.geometry import AxisBox, BoxUnionDomain, IndicatorFunction
from fracpoincare.models.order import FracOrder, SLike
from fracpoincare.models.params import CexParams, height_for

logger = logging.getLogger(__name__)

# 1/(2s) is within this of an integer exactly at the interval endpoints 2s = 1/P
INDEX_SLACK = 1e-12


def p_zero_index(s: SLike) -> int:
    """The integer P0 with 1/(P0 + 1) < 2s <= 1/P0."""
    order = FracOrder.of(s)
    order.require_sub("p_zero_index")
    return math.floor(1.0 / (2.0 * order.s) + INDEX_SLACK)


def build_domain(params: CexParams, k_max: int) -> BoxUnionDomain:
    """The truncation of the domain to the strips C_-k_max..C_k_max plus the cross strip."""
    if k_max < 1:
        raise InvalidArgumentError("k_max must be at least 1")
    domain = counterexample(beta=params.beta, k_max=k_max)
    logger.debug(f"Built counterexample domain with {len(domain.boxes)} boxes (k_max={k_max})")
    return domain.model_copy(update={"s": params.s})


def psi_indicator(params: CexParams, k: int) -> IndicatorFunction:
    """psi_{k,k0}: the indicator of (a_j, a_j + 1) x (0, k0) for j = 0..k, k0 = ceil(k^A)."""
    if k < 1:
        raise InvalidArgumentError("k must be positive")
    offsets = strip_offsets(params.beta, k)
    k0 = float(height_for(k, params.A))
    boxes = [AxisBox.of((offsets[j], offsets[j] + 1.0), (0.0, k0)) for j in range(k + 1)]
    return IndicatorFunction.of_boxes(boxes)


def support_in_domain(support: IndicatorFunction | BoxUnionDomain, domain: BoxUnionDomain) -> bool:
    """
    Whether every support box lies inside the open domain.

    A box lies inside iff no piece of the closed complement (including slits
    and isolated points) meets its interior.
    """
    boxes = support.boxes
    lo, hi = complement_boxes(domain)
    for box in boxes:
        if box.dim != domain.dim:
            raise InvalidArgumentError("support and domain dimensions differ")
        meets = ((box.lo < hi) & (lo < box.hi)).all(axis=1)
        if meets.any():
            return False
    return True
