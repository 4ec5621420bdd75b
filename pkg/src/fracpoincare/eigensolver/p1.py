"""
p1.py

PURPOSE: Continuous piecewise-linear Galerkin forms on unions of intervals, for every s in (0, 1).
DEPENDENCIES: numpy, scipy.integrate

ARCHITECTURE NOTES:
On a uniform mesh every hat function is a translate of one reference hat, so
the full-space form a(phi_i, phi_j) depends only on d = |i - j|. The second
derivative of a hat is a three-point stencil of Dirac masses, which turns the
form into a five-point difference of the fourth antiderivative of the kernel:

    a(d) = h^(1-2s) * sum_{c=-2..2} W_c * phi(|d + c|),   W = (1, -4, 6, -4, 1),
    phi(t) = t^(3-2s) / (s (1-2s) (2-2s) (3-2s)),

with phi(t) = t^2 log t at s = 1/2 (the t^2 part of the limit is annihilated
by the stencil). The domain only decides which hats are kept: interior nodes
of each interval, so the basis vanishes at and outside every endpoint and the
full form couples intervals through the gaps between them.

The regional form drops the pairs with a point outside the domain:

    a_regional(u, v) = a(u, v) - 2 * integral over the domain of u v kappa,
    kappa(x) = integral over the complement of |x - y|^(-1-2s) dy,

a tridiagonal correction integrated element by element with scipy quad.
"""

import logging
import math

import numpy as np
from scipy import integrate

from fracpoincare.errors import InvalidArgumentError, QuadratureError
from fracpoincare.models.geometry import IntervalUnion
from fracpoincare.models.order import FracOrder, SLike
from fracpoincare.models.params import ElementOrder, FormMode, GridSpec

logger = logging.getLogger(__name__)

STENCIL = np.array([1.0, -4.0, 6.0, -4.0, 1.0])
NODE_RTOL = 1e-9


def quartic_antiderivative(t: np.ndarray, s: float) -> np.ndarray:
    """phi with fourth derivative -2 |t|^(-1-2s) up to cubic terms, for t >= 0."""
    t = np.asarray(t, dtype=float)
    if s == 0.5:
        with np.errstate(divide="ignore", invalid="ignore"):
            return np.where(t > 0.0, t * t * np.log(t), 0.0)
    return t ** (3.0 - 2.0 * s) / (s * (1.0 - 2.0 * s) * (2.0 - 2.0 * s) * (3.0 - 2.0 * s))


def hat_form(d: np.ndarray, h: float, s: float) -> np.ndarray:
    """Full-space form between hats d nodes apart on a mesh of width h."""
    d = np.asarray(d, dtype=float)
    shifts = np.arange(-2, 3, dtype=float)
    values = quartic_antiderivative(np.abs(d[..., None] + shifts), s)
    return h ** (1.0 - 2.0 * s) * (values @ STENCIL)


def active_nodes(domain: IntervalUnion, grid: GridSpec) -> np.ndarray:
    """
    Indices of mesh nodes strictly inside the domain.

    Raises:
        InvalidArgumentError: If an interval is unbounded, leaves the grid, or
            has an endpoint off the mesh.
    """
    if not domain.is_bounded or len(domain) == 0:
        raise InvalidArgumentError("P1 assembly needs a nonempty union of finite intervals")
    nodes = grid.axis_nodes(0)
    (h,) = grid.h
    lo, hi = grid.bbox.bounds[0]
    slack = NODE_RTOL * h
    keep = np.zeros(len(nodes), dtype=bool)
    for a, b in domain.intervals:
        if a < lo - slack or b > hi + slack:
            raise InvalidArgumentError(f"interval ({a}, {b}) leaves the grid box ({lo}, {hi})")
        for end in (a, b):
            if np.min(np.abs(nodes - end)) > slack:
                raise InvalidArgumentError(f"interval endpoint {end} is not a mesh node")
        keep |= (nodes > a + slack) & (nodes < b - slack)
    return np.flatnonzero(keep)


def killing_density(domain: IntervalUnion, x: float, s: float) -> float:
    """kappa(x): the kernel mass of the complement seen from x inside the domain."""
    pieces = []
    edge = -math.inf
    for a, b in domain.intervals:
        if a > edge:
            pieces.append((edge, a))
        edge = b
    pieces.append((edge, math.inf))
    total = []
    for p, q in pieces:
        near, far = (x - q, x - p) if q <= x else (p - x, q - x)
        far_term = 0.0 if math.isinf(far) else far ** (-2.0 * s)
        total.append((near ** (-2.0 * s) - far_term) / (2.0 * s))
    return math.fsum(total)


def _element_integral(
    domain: IntervalUnion, left: float, h: float, s: float, i: int, j: int
) -> float:
    """Integral over [left, left + h] of hat_i hat_j kappa, with 0 = left hat, 1 = right hat."""

    def shape(k: int, x: float) -> float:
        r = (x - left) / h
        return 1.0 - r if k == 0 else r

    value, abserr = integrate.quad(
        lambda x: shape(i, x) * shape(j, x) * killing_density(domain, x, s),
        left,
        left + h,
        epsabs=0.0,
        epsrel=1e-11,
        limit=200,
    )
    if not math.isfinite(value):
        raise QuadratureError(f"regional correction diverged on element at {left}")
    logger.debug(f"element {left:.6g}: ({i}, {j}) -> {value:.10g} (abserr {abserr:.1e})")
    return value


def regional_correction(
    domain: IntervalUnion, grid: GridSpec, nodes: np.ndarray, s: float
) -> np.ndarray:
    """The matrix of 2 * integral of phi_i phi_j kappa over the domain, on the given nodes."""
    mesh = grid.axis_nodes(0)
    (h,) = grid.h
    position = {int(node): k for k, node in enumerate(nodes)}
    correction = np.zeros((len(nodes), len(nodes)))
    elements = sorted({e for node in nodes for e in (int(node) - 1, int(node))})
    for e in elements:
        ends = [e, e + 1]
        live = [(local, position[n]) for local, n in enumerate(ends) if n in position]
        for li, pi in live:
            for lj, pj in live:
                if pj < pi:
                    continue
                value = 2.0 * _element_integral(domain, float(mesh[e]), h, s, li, lj)
                correction[pi, pj] += value
                if pi != pj:
                    correction[pj, pi] += value
    return correction


def consistent_mass(nodes: np.ndarray, h: float) -> np.ndarray:
    """Tridiagonal hat mass matrix: 2h/3 on the diagonal, h/6 between neighbouring nodes."""
    mass = np.diag(np.full(len(nodes), 2.0 * h / 3.0))
    neighbours = np.flatnonzero(np.diff(nodes) == 1)
    mass[neighbours, neighbours + 1] = h / 6.0
    mass[neighbours + 1, neighbours] = h / 6.0
    return mass


def assemble_p1_1d(
    domain: IntervalUnion,
    grid: GridSpec,
    s: SLike,
    mode: FormMode = FormMode.FULL,
) -> tuple[np.ndarray, np.ndarray]:
    """
    Hat-function stiffness and consistent mass matrices on a union of intervals.

    Raises:
        InvalidArgumentError: If the grid is not P1, an endpoint is off the mesh,
            or no node lies inside the domain.
    """
    order = FracOrder.of(s)
    if grid.order is not ElementOrder.P1:
        raise InvalidArgumentError("assemble_p1_1d needs a P1 grid")
    nodes = active_nodes(domain, grid)
    if len(nodes) == 0:
        raise InvalidArgumentError("no mesh node lies inside the domain")
    (h,) = grid.h
    toeplitz = hat_form(np.arange(nodes[-1] - nodes[0] + 1), h, order.s)
    stiffness = toeplitz[np.abs(nodes[:, None] - nodes[None, :])]
    if mode is FormMode.REGIONAL:
        stiffness -= regional_correction(domain, grid, nodes, order.s)
    mass = consistent_mass(nodes, h)
    logger.info(f"Assembled P1 {mode} form on {len(nodes)} nodes (h = {h:.4g})")
    return stiffness, mass
