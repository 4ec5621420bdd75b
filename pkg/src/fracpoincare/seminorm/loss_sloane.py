"""
loss_sloane.py

PURPOSE: The directional (Loss-Sloane) evaluation of indicator seminorms.
DEPENDENCIES: numpy, geometry.slicing, kernels.closed_forms

ARCHITECTURE NOTES:
Writing y = x + r*omega and splitting x along omega turns the planar
seminorm into

    [f]^2 = 1/2 * integral over omega in S^1 of
            integral over lines parallel to omega of [f restricted to the line]^2,

where the inner seminorm is the one-dimensional one with kernel |t - t'|^(-1-2s).
Directions omega and -omega give the same lines, so the code integrates the
direction angle over [0, pi) with weight one.

Each line meets the disjoint support boxes in disjoint intervals I_i, and the
one-dimensional indicator energy is 2 * (sum_i Per(I_i) - sum_{i != j} E(I_i, I_j)),
all closed forms. Everything is vectorized over the lines of one direction;
the angle rule is the periodic trapezoid rule, and the even-index subrule
supplies the error estimate.
"""

import logging
import math

import numpy as np

from fracpoincare.errors import DivergentEnergyError, InvalidArgumentError
from fracpoincare.geometry.slicing import clip_lines
from fracpoincare.kernels.closed_forms import interval_pair_energy
from fracpoincare.models.energy import EnergyValue
from fracpoincare.models.geometry import IndicatorFunction
from fracpoincare.models.order import FracOrder, SLike
from fracpoincare.parallel import ordered_map

logger = logging.getLogger(__name__)

DEFAULT_ANGLES = 512
DEFAULT_LINE_SPACING = 1.0 / 256.0


def _support_arrays(f: IndicatorFunction) -> tuple[np.ndarray, np.ndarray]:
    lo = np.array([box.lo for box in f.boxes])
    hi = np.array([box.hi for box in f.boxes])
    return lo, hi


def slice_energies(t_lo: np.ndarray, t_hi: np.ndarray, s: float) -> np.ndarray:
    """
    One-dimensional indicator energies of many lines.

    Args:
        t_lo, t_hi: Per-line, per-box parameter intervals, shape (L, B), with
            disjoint nonempty intervals along each line.

    Returns:
        [1_slice]^2 for every line, shape (L,).
    """
    lengths = np.maximum(t_hi - t_lo, 0.0)
    p = 1.0 - 2.0 * s
    own = np.sum(lengths**p, axis=1) / (s * p)
    cross = np.zeros(t_lo.shape[0])
    for i in range(t_lo.shape[1]):
        for j in range(i + 1, t_lo.shape[1]):
            a, b = t_lo[:, i], t_hi[:, i]
            c, d = t_lo[:, j], t_hi[:, j]
            left = b <= c
            first = (np.where(left, a, c), np.where(left, b, d))
            second = (np.where(left, c, a), np.where(left, d, b))
            cross += 2.0 * interval_pair_energy(*first, *second, s)
    return 2.0 * (own - cross)


def _direction_integral(
    lo: np.ndarray, hi: np.ndarray, theta: float, spacing: float, s: float
) -> float:
    """Integral over the lines of one direction of the slice energies."""
    omega = np.array([math.cos(theta), math.sin(theta)])
    normal = np.array([-omega[1], omega[0]])
    mixed = [np.stack([lo[:, 0], hi[:, 1]], axis=1), np.stack([hi[:, 0], lo[:, 1]], axis=1)]
    corners = np.concatenate([lo, hi, *mixed])
    proj = corners @ normal
    p_min, p_max = float(proj.min()) - spacing, float(proj.max()) + spacing
    n_lines = max(math.ceil((p_max - p_min) / spacing), 1)
    offsets = p_min + (np.arange(n_lines) + 0.5) * spacing
    t_lo, t_hi = clip_lines(lo, hi, offsets[:, None] * normal[None, :], omega)
    t_hi = np.maximum(t_hi, t_lo)
    return float(np.sum(slice_energies(t_lo, t_hi, s)) * spacing)


def loss_sloane_energy(
    f: IndicatorFunction,
    s: SLike,
    angles: int = DEFAULT_ANGLES,
    line_spacing: float = DEFAULT_LINE_SPACING,
    threads: int = 1,
) -> EnergyValue:
    """
    [f]^2 from its one-dimensional slices.

    Args:
        angles: Number of equally spaced directions in [0, pi); must be even.
        line_spacing: Offset spacing of the parallel lines (midpoint rule).

    Raises:
        DivergentEnergyError: If s >= 1/2.
        InvalidArgumentError: If angles is odd or the spacing is not positive.
    """
    order = FracOrder.of(s)
    if order.s >= 0.5:
        raise DivergentEnergyError(f"indicator seminorms are infinite for s >= 1/2 (got {order.s})")
    if angles < 2 or angles % 2:
        raise InvalidArgumentError("angles must be a positive even number")
    if line_spacing <= 0.0:
        raise InvalidArgumentError("line_spacing must be positive")
    lo, hi = _support_arrays(f)

    if f.dim == 1:
        value = float(slice_energies(lo.reshape(1, -1), hi.reshape(1, -1), order.s)[0])
        return EnergyValue.closed_form(value)

    thetas = [math.pi * i / angles for i in range(angles)]
    per_direction = ordered_map(
        lambda theta: _direction_integral(lo, hi, theta, line_spacing, order.s), thetas, threads
    )
    step = math.pi / angles
    value = math.fsum(per_direction) * step
    coarse = math.fsum(per_direction[::2]) * 2.0 * step
    logger.debug(f"Loss-Sloane energy {value:.8g} over {angles} directions (coarse {coarse:.8g})")
    return EnergyValue.quadrature(value, abs(value - coarse))
