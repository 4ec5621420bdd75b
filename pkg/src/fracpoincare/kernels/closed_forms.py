"""
closed_forms.py

PURPOSE: Closed-form fractional interaction energies between strips, boxes and intervals.
DEPENDENCIES: numpy, scipy.integrate

ARCHITECTURE NOTES:
The angular constant C(s) = (1/2s) * integral of cos^(2s) over (-pi/2, pi/2)
ties the planar kernel to one-dimensional profiles: for a point at horizontal
distance a from a vertical strip ending at distance b, the strip energy is
C(s) * (a^-2s - b^-2s). Integrating that profile across a box gives the
box-strip formula; the one-dimensional interval energies come from the
twice-integrated kernel g(t) = t^(1-2s) / (2s(1-2s)), or log t at s = 1/2.

The vectorized helper `interval_pair_energy` is the workhorse of the
Loss-Sloane line quadrature and the P1 assembly; the public functions wrap
scalar calls in EnergyValue.
"""

import logging
import math
from functools import lru_cache

import numpy as np
from scipy import integrate

from fracpoincare.errors import (
    DivergentEnergyError,
    InvalidArgumentError,
    SingularArgumentError,
)
from fracpoincare.models.energy import EnergyValue
from fracpoincare.models.order import FracOrder, SLike, order_value

logger = logging.getLogger(__name__)

ANGULAR_EPSREL = 1e-10


@lru_cache(maxsize=256)
def _angular_constant(s: float) -> float:
    value, abserr = integrate.quad(
        lambda theta: math.cos(theta) ** (2.0 * s),
        -0.5 * math.pi,
        0.5 * math.pi,
        epsabs=0.0,
        epsrel=ANGULAR_EPSREL,
        limit=200,
    )
    logger.debug(f"C({s}) = {value / (2.0 * s):.12g} (abserr {abserr:.2e})")
    return value / (2.0 * s)


def angular_constant(s: SLike) -> float:
    """C(s) = (1/2s) * integral of cos(theta)^(2s) over (-pi/2, pi/2)."""
    return _angular_constant(order_value(s))


def kernel_line_mass(s: SLike) -> float:
    """Integral of (1 + u^2)^(-1-s) over the real line, i.e. 2s * C(s)."""
    value = order_value(s)
    return 2.0 * value * angular_constant(value)


def vertical_strip_integral(a: float, b: float, s: SLike) -> EnergyValue:
    """
    Kernel mass of a vertical strip seen from a point: C(s) * (|a|^-2s - |b|^-2s).

    Args:
        a: Distance from the point to the near edge of the strip.
        b: Distance to the far edge; may be infinite.

    Raises:
        SingularArgumentError: If a = 0.
        InvalidArgumentError: If |a| > |b|.
    """
    value = order_value(s)
    near, far = abs(a), abs(b)
    if near == 0.0:
        raise SingularArgumentError("vertical_strip_integral is singular at a = 0")
    if near > far:
        raise InvalidArgumentError(f"need |a| <= |b| (got a = {a}, b = {b})")
    far_term = 0.0 if math.isinf(far) else far ** (-2.0 * value)
    return EnergyValue.closed_form(angular_constant(value) * (near ** (-2.0 * value) - far_term))


def box_strip_energy(q1: float, q2: float, M: float, N: float, s: SLike) -> EnergyValue:
    """
    Energy between the box (0, M) x (0, N) and the strip (M + q1, M + q2) x R.

    Equals C(s) * N * [(q1+M)^(1-2s) - q1^(1-2s) - (q2+M)^(1-2s) + q2^(1-2s)] / (1-2s).
    q2 may be infinite.

    Raises:
        OutOfRegimeError: If s >= 1/2.
    """
    order = FracOrder.of(s)
    order.require_sub("box_strip_energy")
    if not 0.0 <= q1 <= q2:
        raise InvalidArgumentError(f"need 0 <= q1 <= q2 (got q1 = {q1}, q2 = {q2})")
    if M <= 0.0 or N <= 0.0:
        raise InvalidArgumentError("box sides M and N must be positive")
    if q1 == q2:
        return EnergyValue.closed_form(0.0)
    p = 1.0 - 2.0 * order.s
    bracket = (q1 + M) ** p - q1**p
    if math.isfinite(q2):
        bracket -= (q2 + M) ** p - q2**p
    return EnergyValue.closed_form(angular_constant(order) * N * bracket / p)


def box_strip_between(
    box_x: tuple[float, float], height: float, strip_x: tuple[float, float], s: SLike
) -> float:
    """
    Energy between (x0, x1) x (0, height) and a vertical strip on either side.

    The strip must not overlap the box's horizontal extent.
    """
    x0, x1 = box_x
    lo, hi = strip_x
    if lo >= x1:
        q1, q2 = lo - x1, hi - x1
    elif hi <= x0:
        q1, q2 = x0 - hi, x0 - lo
    else:
        raise InvalidArgumentError("strip overlaps the box horizontally")
    return box_strip_energy(q1, q2, x1 - x0, height, s).value


def kernel_antiderivative(t: np.ndarray, s: float) -> np.ndarray:
    """g(t) with g'' = t^(-1-2s): t^(1-2s)/(2s(1-2s)), or log t at s = 1/2."""
    t = np.asarray(t, dtype=float)
    if s == 0.5:
        with np.errstate(divide="ignore"):
            return np.log(t)
    return t ** (1.0 - 2.0 * s) / (2.0 * s * (1.0 - 2.0 * s))


def interval_pair_energy(
    a: np.ndarray, b: np.ndarray, c: np.ndarray, d: np.ndarray, s: float
) -> np.ndarray:
    """
    Vectorized energy of (a, b) against (c, d) with b <= c; all endpoints finite.

    Touching pairs (b = c) give inf for s >= 1/2.
    """
    with np.errstate(divide="ignore", invalid="ignore"):
        g = kernel_antiderivative
        value = g(c - a, s) - g(c - b, s) - g(d - a, s) + g(d - b, s)
        touching = (c - b) == 0.0
        if s >= 0.5:
            value = np.where(touching & (b > a) & (d > c), np.inf, value)
        empty = (b <= a) | (d <= c)
    return np.where(empty, 0.0, np.maximum(value, 0.0))


def interval_interval_energy(
    first: tuple[float, float], second: tuple[float, float], s: SLike
) -> EnergyValue:
    """
    Energy of two disjoint intervals, the double integral of |x-y|^(-1-2s).

    One outer endpoint may be infinite for any s; both only for s > 1/2.

    Raises:
        InvalidArgumentError: If the intervals overlap.
        DivergentEnergyError: If the energy is infinite.
    """
    value = order_value(s)
    (a, b), (c, d) = first, second
    if c < b:
        (a, b), (c, d) = (c, d), (a, b)
    if a >= b or c >= d:
        return EnergyValue.closed_form(0.0)
    if c < b:
        raise InvalidArgumentError(f"intervals ({a}, {b}) and ({c}, {d}) overlap")
    if b == c and value >= 0.5:
        raise DivergentEnergyError("touching intervals have infinite energy for s >= 1/2")
    if math.isinf(a):
        # mirror so that only the right end may be infinite
        a, b, c, d = -d, -c, -b, -a
    if math.isinf(b) or math.isinf(c):
        raise InvalidArgumentError("interval endpoints facing each other must be finite")
    g = kernel_antiderivative
    if math.isinf(d):
        if math.isinf(a):
            if value <= 0.5:
                raise DivergentEnergyError("two half-lines have infinite energy for s <= 1/2")
            total = float(-g(c - b, value))
        else:
            total = float(g(c - a, value) - g(c - b, value))
    else:
        ends = (np.array(a), np.array(b), np.array(c), np.array(d))
        total = float(interval_pair_energy(*ends, value))
    return EnergyValue.closed_form(total)


def interval_complement_energy(L: float, s: SLike) -> EnergyValue:
    """Energy of an interval of length L against its complement: L^(1-2s) / (s(1-2s))."""
    order = FracOrder.of(s)
    if order.s >= 0.5:
        raise DivergentEnergyError(
            f"an interval has infinite energy against its complement for s >= 1/2 (got {order.s})"
        )
    if L <= 0.0:
        raise InvalidArgumentError("interval length must be positive")
    return EnergyValue.closed_form(L ** (1.0 - 2.0 * order.s) / (order.s * (1.0 - 2.0 * order.s)))


def power_inequality_holds(a: float, b: float, m: float, slack: float = 1e-12) -> bool:
    """Whether ||a|^m - |b|^m| <= |a - b|^m for 0 < m < 1, up to slack."""
    if not 0.0 < m < 1.0:
        raise InvalidArgumentError("the power inequality needs 0 < m < 1")
    return abs(abs(a) ** m - abs(b) ** m) <= abs(a - b) ** m + slack
