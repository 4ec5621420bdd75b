"""
montecarlo.py

PURPOSE: Stratified Monte Carlo oracles for box energies and convex perimeters.
DEPENDENCIES: numpy

ARCHITECTURE NOTES:
Every stratum draws from its own counter-based Philox stream keyed by
(seed, stratum index), so the estimate is a fixed function of the config: the
order in which strata are processed, or how they are split across workers,
cannot change a single bit. Strata are combined with equal weights, and the
standard error is the usual stratified one, sqrt(sum var_h / n_h) / H.

The oracles are deliberately plain (no importance sampling): they exist to be
trusted, not to be fast.
"""

import logging
import math

import numpy as np

from fracpoincare.errors import DivergentEnergyError, InvalidArgumentError
from fracpoincare.models.energy import EnergyMethod, EnergyValue, McConfig
from fracpoincare.models.geometry import AxisBox
from fracpoincare.models.order import SLike, order_value

logger = logging.getLogger(__name__)


def stratum_generator(seed: int, stratum: int) -> np.random.Generator:
    """Independent Philox stream for one stratum."""
    return np.random.Generator(np.random.Philox(key=(seed << 64) | stratum))


def _stratum_counts(samples: int, strata: int) -> list[int]:
    """Split samples over strata, at least two per stratum for a variance estimate."""
    base, extra = divmod(samples, strata)
    return [max(base + (1 if h < extra else 0), 2) for h in range(strata)]


def _combine(means: list[float], variances: list[float], counts: list[int]) -> tuple[float, float]:
    strata = len(means)
    mean = math.fsum(means) / strata
    var = math.fsum(v / n for v, n in zip(variances, counts, strict=True)) / strata**2
    return mean, math.sqrt(var)


def _stratum_cells(box: AxisBox, per_axis: int) -> list[tuple[np.ndarray, np.ndarray]]:
    """Sub-boxes of a finite box split per_axis times along every axis, C order."""
    edges = [np.linspace(lo, hi, per_axis + 1) for lo, hi in box.bounds]
    cells = []
    for index in np.ndindex(*([per_axis] * box.dim)):
        lo = np.array([edges[a][i] for a, i in enumerate(index)])
        hi = np.array([edges[a][i + 1] for a, i in enumerate(index)])
        cells.append((lo, hi))
    return cells


def mc_energy(A: AxisBox, B: AxisBox, s: SLike, cfg: McConfig | None = None) -> EnergyValue:
    """
    Stratified estimate of the integral of |x - y|^(-n-2s) over A x B.

    The source box A is stratified per axis; targets are drawn uniformly in B.

    Raises:
        InvalidArgumentError: If a box is infinite or the interiors overlap.
    """
    sv = order_value(s)
    cfg = cfg or McConfig()
    if not (A.is_finite and B.is_finite):
        raise InvalidArgumentError("mc_energy needs finite boxes")
    if A.interiors_overlap(B):
        raise InvalidArgumentError("boxes have overlapping interiors")

    dim = A.dim
    exponent = -(dim + 2.0 * sv)
    cells = _stratum_cells(A, cfg.stratification)
    counts = _stratum_counts(cfg.samples, len(cells))
    means, variances = [], []
    for h, ((lo, hi), n) in enumerate(zip(cells, counts, strict=True)):
        rng = stratum_generator(cfg.seed, h)
        x = lo + (hi - lo) * rng.random((n, dim))
        y = B.lo + (B.hi - B.lo) * rng.random((n, dim))
        values = np.linalg.norm(x - y, axis=1) ** exponent
        means.append(float(values.mean()))
        variances.append(float(values.var(ddof=1)))

    mean, stderr = _combine(means, variances, counts)
    scale = A.volume * B.volume
    logger.debug(f"mc_energy {mean * scale:.6g} +- {stderr * scale:.2e} ({sum(counts)} samples)")
    return EnergyValue(value=mean * scale, method=EnergyMethod.MONTE_CARLO, stderr=stderr * scale)


def _rect_chords(
    w: float, h: float, theta: np.ndarray, frac: np.ndarray
) -> tuple[np.ndarray, np.ndarray]:
    """Projection width and chord length of the rectangle (0,w)x(0,h) along random lines."""
    cos, sin = np.cos(theta), np.sin(theta)
    normal = np.stack([-sin, cos], axis=1)
    corners = np.array([[0.0, 0.0], [w, 0.0], [0.0, h], [w, h]])
    proj = normal @ corners.T
    pmin, pmax = proj.min(axis=1), proj.max(axis=1)
    p = pmin + frac * (pmax - pmin)
    base = normal * p[:, None]
    t_lo = np.full(len(theta), -np.inf)
    t_hi = np.full(len(theta), np.inf)
    with np.errstate(divide="ignore", invalid="ignore"):
        for axis, (lo, hi) in enumerate(((0.0, w), (0.0, h))):
            direction = cos if axis == 0 else sin
            a = (lo - base[:, axis]) / direction
            b = (hi - base[:, axis]) / direction
            t_lo = np.maximum(t_lo, np.where(direction == 0.0, -np.inf, np.minimum(a, b)))
            t_hi = np.minimum(t_hi, np.where(direction == 0.0, np.inf, np.maximum(a, b)))
    return pmax - pmin, np.maximum(t_hi - t_lo, 0.0)


def mc_perimeter(
    s: SLike,
    cfg: McConfig | None = None,
    width: float | None = None,
    height: float | None = None,
    radius: float | None = None,
) -> EnergyValue:
    """
    Random-chord estimate of the fractional perimeter of a rectangle or a disc.

    Uses Per_s(E) = 1/(2s(1-2s)) * integral over lines of L^(1-2s) for convex
    E; lines are drawn by direction in [0, pi) and offset across the projection,
    stratified on both.

    Raises:
        DivergentEnergyError: If s >= 1/2.
    """
    sv = order_value(s)
    cfg = cfg or McConfig()
    if sv >= 0.5:
        raise DivergentEnergyError(f"fractional perimeter is infinite for s >= 1/2 (got {sv})")
    if radius is not None and width is None and height is None:
        r, w, ht = radius, 0.0, 0.0
    elif radius is None and width is not None and height is not None:
        r, w, ht = 0.0, width, height
    else:
        raise InvalidArgumentError("give either a radius or both width and height")
    is_disc = radius is not None

    per_axis = cfg.stratification
    counts = _stratum_counts(cfg.samples, per_axis * per_axis)
    prefactor = 2.0 * math.pi / (2.0 * sv * (1.0 - 2.0 * sv))
    means, variances = [], []
    for h, n in enumerate(counts):
        i, j = divmod(h, per_axis)
        rng = stratum_generator(cfg.seed, h)
        u = rng.random((n, 2))
        theta = math.pi * (i + u[:, 0]) / per_axis
        frac = (j + u[:, 1]) / per_axis
        if is_disc:
            p = r * (2.0 * frac - 1.0)
            span = np.full(n, 2.0 * r)
            chord = 2.0 * np.sqrt(np.maximum(r * r - p * p, 0.0))
        else:
            span, chord = _rect_chords(w, ht, theta, frac)
        values = prefactor * span * chord ** (1.0 - 2.0 * sv)
        means.append(float(values.mean()))
        variances.append(float(values.var(ddof=1)))

    mean, stderr = _combine(means, variances, counts)
    return EnergyValue(value=mean, method=EnergyMethod.MONTE_CARLO, stderr=stderr)
