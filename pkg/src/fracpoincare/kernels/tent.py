"""
tent.py

PURPOSE: Box-box interaction energies and fractional perimeters by tent-correlation reduction.
DEPENDENCIES: numpy, scipy.integrate, scipy.special

ARCHITECTURE NOTES:
With z = y - x the double integral over A x B becomes the integral of
lambda_1(z_1) * lambda_2(z_2) * |z|^(-2-2s), where lambda_i(z) is the length of
{x in A_i : x + z in B_i}. Each lambda_i is a trapezoid ("tent") made of at
most three linear pieces.

One axis separates the boxes: its tent support avoids zero in the interior. We
integrate over that axis numerically; along the other axis the kernel against a
linear piece has closed forms, an incomplete beta function for the constant
part and an elementary antiderivative for the linear part. When the boxes touch
along an edge the outer integrand behaves like z^(-2s) at zero; that panel uses
QUADPACK's algebraic weight so the singularity is integrated exactly.

Semi-infinite extents are allowed on an axis where the other box is finite;
they only ever produce constant tent pieces, which the closed forms handle.
"""

import logging
import math
from collections.abc import Callable
from dataclasses import dataclass
from typing import Any

import numpy as np
from scipy import integrate, special

from fracpoincare.config import QuadratureSettings
from fracpoincare.errors import DivergentEnergyError, InvalidArgumentError, QuadratureError
from fracpoincare.kernels.closed_forms import (
    angular_constant,
    interval_interval_energy,
    kernel_line_mass,
)
from fracpoincare.models.energy import EnergyValue
from fracpoincare.models.geometry import AxisBox
from fracpoincare.models.order import FracOrder, SLike, order_value

logger = logging.getLogger(__name__)

Piece = tuple[float, float, float, float]


@dataclass(frozen=True)
class Tent:
    """Overlap length as a function of the offset: alpha + beta*z on each (lo, hi) piece."""

    pieces: tuple[Piece, ...]
    a: tuple[float, float]
    b: tuple[float, float]

    @property
    def lo(self) -> float:
        return self.pieces[0][0]

    @property
    def hi(self) -> float:
        return self.pieces[-1][1]

    def at(self, z: float) -> float:
        (a1, a2), (b1, b2) = self.a, self.b
        return max(0.0, min(a2, b2 - z) - max(a1, b1 - z))

    def reflected(self) -> "Tent":
        """The tent of the offset -z."""
        pieces = tuple((-hi, -lo, alpha, -beta) for lo, hi, alpha, beta in reversed(self.pieces))
        (a1, a2), (b1, b2) = self.a, self.b
        return Tent(pieces=pieces, a=(-a2, -a1), b=(-b2, -b1))


def axis_tent(a: tuple[float, float], b: tuple[float, float]) -> Tent:
    """
    Tent of one axis for intervals a (source) and b (target).

    Raises:
        InvalidArgumentError: If both intervals are infinite.
    """
    (a1, a2), (b1, b2) = a, b
    la, lb = a2 - a1, b2 - b1
    if math.isinf(la) and math.isinf(lb):
        raise InvalidArgumentError("at least one box must be finite on every axis")
    p0, p3 = b1 - a2, b2 - a1
    p1, p2 = min(b1 - a1, b2 - a2), max(b1 - a1, b2 - a2)
    height = min(la, lb)
    candidates = [(p0, p1, -p0, 1.0), (p1, p2, height, 0.0), (p2, p3, p3, -1.0)]
    pieces = tuple(piece for piece in candidates if piece[0] < piece[1])
    return Tent(pieces=pieces, a=a, b=b)


class _InnerKernel:
    """Closed-form integrals of (z^2 + u^2)^(-1-s) against linear pieces in u."""

    def __init__(self, s: float, pieces: tuple[Piece, ...]) -> None:
        self.s = s
        self.half_mass = 0.5 * kernel_line_mass(s)
        self.lo = np.array([p[0] for p in pieces])
        self.hi = np.array([p[1] for p in pieces])
        self.alpha = np.array([p[2] for p in pieces])
        self.beta = np.array([p[3] for p in pieces])

    def _j0(self, z: float, t: np.ndarray) -> np.ndarray:
        with np.errstate(invalid="ignore"):
            x = np.where(np.isinf(t), 1.0, t * t / (z * z + t * t))
        return np.sign(t) * z ** (-1.0 - 2.0 * self.s) * self.half_mass * special.betainc(
            0.5, self.s + 0.5, x
        )

    def _j1(self, z: float, t: np.ndarray) -> np.ndarray:
        # z^(-2s) - (z^2 + t^2)^(-s), written without cancellation for |t| << z
        s = self.s
        ratio = np.square(t / z)
        return z ** (-2.0 * s) * -np.expm1(-s * np.log1p(ratio)) / (2.0 * s)

    def __call__(self, z: float) -> float:
        constant = self.alpha * (self._j0(z, self.hi) - self._j0(z, self.lo))
        linear = np.where(
            self.beta == 0.0, 0.0, self.beta * (self._j1(z, self.hi) - self._j1(z, self.lo))
        )
        return float(np.sum(constant + linear))


def _separating_axis(tents: list[Tent]) -> int:
    best, best_gap = -1, -1.0
    for axis, tent in enumerate(tents):
        if tent.lo >= 0.0:
            gap = tent.lo
        elif tent.hi <= 0.0:
            gap = -tent.hi
        else:
            continue
        if gap > best_gap:
            best, best_gap = axis, gap
    if best < 0:
        raise InvalidArgumentError("boxes have overlapping interiors")
    return best


def _length_scale(A: AxisBox, B: AxisBox) -> float:
    """The power of two at or below the shortest finite side of either box."""
    sides = [side for box in (A, B) for side in box.sides if math.isfinite(side) and side > 0.0]
    if not sides:
        return 1.0
    return math.ldexp(1.0, math.frexp(min(sides))[1] - 1)


def _quad(
    func: Callable[[float], float], lo: float, hi: float, tol: QuadratureSettings, **kwargs: Any
) -> tuple[float, float, int]:
    result = integrate.quad(
        func, lo, hi, epsabs=tol.epsabs, epsrel=tol.epsrel, limit=tol.limit, full_output=1, **kwargs
    )
    value, abserr, info = result[0], result[1], result[2]
    if len(result) > 3:
        raise QuadratureError(f"quadrature on ({lo}, {hi}) did not converge: {result[3]}")
    return value, abserr, int(info.get("last", 1)) if isinstance(info, dict) else 1


def tent_energy(
    A: AxisBox, B: AxisBox, s: SLike, tol: QuadratureSettings | None = None
) -> EnergyValue:
    """
    Integral of |x - y|^(-n-2s) over x in A, y in B for boxes with disjoint interiors.

    Raises:
        InvalidArgumentError: If the interiors overlap or an axis is infinite in both boxes.
        DivergentEnergyError: If the boxes share an edge and s >= 1/2.
        QuadratureError: If the outer quadrature does not converge.
    """
    order = FracOrder.of(s)
    tol = tol or QuadratureSettings()
    if A.dim != B.dim:
        raise InvalidArgumentError("boxes must share a dimension")

    if A.dim == 1:
        return interval_interval_energy(A.bounds[0], B.bounds[0], order)

    # rescaling by a power of two is exact, so R*A, R*B integrate like A, B
    scale = _length_scale(A, B)
    if scale != 1.0:
        unit = tent_energy(A.scaled(1.0 / scale), B.scaled(1.0 / scale), order, tol)
        factor = scale ** (2.0 - 2.0 * order.s)
        return EnergyValue.quadrature(unit.value * factor, unit.abserr * factor)

    tents = [axis_tent(a, b) for a, b in zip(A.bounds, B.bounds, strict=True)]
    sep = _separating_axis(tents)
    outer, inner_tent = tents[sep], tents[1 - sep]
    if outer.hi <= 0.0:
        outer = outer.reflected()

    contact = inner_tent.at(0.0)
    if outer.lo == 0.0 and contact > 0.0 and order.s >= 0.5:
        raise DivergentEnergyError("boxes sharing an edge have infinite energy for s >= 1/2")

    inner = _InnerKernel(order.s, inner_tent.pieces)
    edge_limit = contact * kernel_line_mass(order.s)
    total, abserr, panels = 0.0, 0.0, 0
    for lo, hi, alpha, beta in outer.pieces:
        if lo == 0.0 and contact > 0.0:
            weight = 2.0 * order.s

            def weighted(
                z: float, alpha: float = alpha, beta: float = beta, w: float = weight
            ) -> float:
                if z <= 0.0:
                    return edge_limit
                return (alpha + beta * z) * inner(z) * z**w

            value, err, used = _quad(weighted, 0.0, hi, tol, weight="alg", wvar=(-weight, 0.0))
        else:

            def plain(z: float, alpha: float = alpha, beta: float = beta) -> float:
                return (alpha + beta * z) * inner(z)

            value, err, used = _quad(plain, lo, hi, tol)
        total += value
        abserr += err
        panels += used
        if panels > tol.max_panels:
            raise QuadratureError(f"tent quadrature exceeded {tol.max_panels} panels")

    logger.debug(f"tent energy {total:.10g} (abserr {abserr:.2e}, {panels} panels)")
    return EnergyValue.quadrature(total, abserr)


def box_box_energy(
    A: AxisBox, B: AxisBox, s: SLike, tol: QuadratureSettings | None = None
) -> EnergyValue:
    """Energy between two finite boxes with disjoint interiors."""
    if not (A.is_finite and B.is_finite):
        raise InvalidArgumentError("box_box_energy needs finite boxes")
    if A.interiors_overlap(B):
        raise InvalidArgumentError("boxes have overlapping interiors")
    return tent_energy(A, B, s, tol)


def rect_perimeter_s(
    w: float, h: float, s: SLike, tol: QuadratureSettings | None = None
) -> EnergyValue:
    """
    Fractional perimeter of a w x h rectangle.

    The two half-planes beside the rectangle contribute 2h*C(s)*w^(1-2s)/(1-2s)
    in closed form; the slabs above and below come from tent_energy.

    Raises:
        DivergentEnergyError: If s >= 1/2.
    """
    order = FracOrder.of(s)
    if order.s >= 0.5:
        raise DivergentEnergyError(f"fractional perimeter is infinite for s >= 1/2 (got {order.s})")
    if w <= 0.0 or h <= 0.0:
        raise InvalidArgumentError("rectangle sides must be positive")
    p = 1.0 - 2.0 * order.s
    lateral = 2.0 * h * angular_constant(order) * w**p / p
    rect = AxisBox.of((0.0, w), (0.0, h))
    slab = tent_energy(rect, AxisBox.of((0.0, w), (h, math.inf)), order, tol)
    return EnergyValue.quadrature(lateral + 2.0 * slab.value, 2.0 * slab.abserr)


def ball_perimeter_s(
    s: SLike, R: float = 1.0, tol: QuadratureSettings | None = None
) -> EnergyValue:
    """
    Fractional perimeter of the disc of radius R by polar quadrature.

    From a point at radius r the ray at angle theta (to the outward radial
    direction) leaves the unit disc after rho = sqrt(1 - r^2 sin^2) - r cos, and
    the outside kernel mass along it is rho^(-2s)/(2s).
    """
    order = FracOrder.of(s)
    if order.s >= 0.5:
        raise DivergentEnergyError(f"fractional perimeter is infinite for s >= 1/2 (got {order.s})")
    if R <= 0.0:
        raise InvalidArgumentError("radius must be positive")
    tol = tol or QuadratureSettings()
    sv = order.s
    boundary_limit = 2.0 * math.pi * angular_constant(sv)

    def outside_mass(r: float) -> float:
        def ray(theta: float) -> float:
            rho = math.sqrt(max(1.0 - (r * math.sin(theta)) ** 2, 0.0)) - r * math.cos(theta)
            return rho ** (-2.0 * sv)

        value, _ = integrate.quad(ray, 0.0, math.pi, epsabs=0.0, epsrel=1e-11, limit=tol.limit)
        return 2.0 * value / (2.0 * sv)

    def radial(r: float) -> float:
        if r >= 1.0:
            return boundary_limit
        return 2.0 * math.pi * r * outside_mass(r) * (1.0 - r) ** (2.0 * sv)

    value, abserr, _ = _quad(radial, 0.0, 1.0, tol, weight="alg", wvar=(0.0, -2.0 * sv))
    scale = R ** (2.0 - 2.0 * sv)
    return EnergyValue.quadrature(value * scale, abserr * scale)


def ball_perimeter_chord(s: SLike, R: float = 1.0) -> EnergyValue:
    """
    Fractional perimeter of a disc from its chord-length representation.

    For a convex set the perimeter is 1/(2s(1-2s)) times the integral of
    L^(1-2s) over all lines, L the chord length; for the disc this is
    pi * 2^(1-2s) * R^(2-2s) * B(1/2, 3/2 - s) / (s(1-2s)).
    """
    sv = order_value(s)
    if sv >= 0.5:
        raise DivergentEnergyError(f"fractional perimeter is infinite for s >= 1/2 (got {sv})")
    value = (
        math.pi
        * 2.0 ** (1.0 - 2.0 * sv)
        * R ** (2.0 - 2.0 * sv)
        * special.beta(0.5, 1.5 - sv)
        / (sv * (1.0 - 2.0 * sv))
    )
    return EnergyValue.closed_form(float(value))
