"""
quadrature.py

PURPOSE: Brute-force deterministic oracles: tensor quadrature of box energies and
a pairwise assembly of the indicator-basis Gagliardo form.
DEPENDENCIES: numpy, scipy.integrate, kernels

ARCHITECTURE NOTES:
quad_energy integrates the 2n-dimensional double integral directly with
scipy's nquad and is independent of the tent reduction. It is only accurate
for well-separated boxes, so it refuses touching ones.

grid_form_oracle assembles the stiffness matrix entry by entry from kernel
calls, with no translation table and no symmetry reuse. It is slow on purpose
and meant for grids of at most 16 cells per axis.
"""

import logging

import numpy as np
from scipy import integrate

from fracpoincare.config import QuadratureSettings
from fracpoincare.errors import InvalidArgumentError
from fracpoincare.geometry.arrangement import point_in_domain
from fracpoincare.kernels.closed_forms import interval_complement_energy
from fracpoincare.kernels.tent import box_box_energy, rect_perimeter_s
from fracpoincare.models.energy import EnergyValue
from fracpoincare.models.geometry import AxisBox, BoxUnionDomain
from fracpoincare.models.order import FracOrder, SLike, order_value
from fracpoincare.models.params import FormMode

logger = logging.getLogger(__name__)

ORACLE_MAX_CELLS = 16


def separation(A: AxisBox, B: AxisBox) -> float:
    """Euclidean distance between the closures of two boxes."""
    gaps = np.maximum(np.maximum(A.lo - B.hi, B.lo - A.hi), 0.0)
    return float(np.linalg.norm(gaps))


def quad_energy(A: AxisBox, B: AxisBox, s: SLike, epsrel: float = 1e-8) -> EnergyValue:
    """
    Direct nquad of the integral of |x - y|^(-n-2s) over A x B.

    Raises:
        InvalidArgumentError: If the boxes are infinite or not separated.
    """
    sv = order_value(s)
    if not (A.is_finite and B.is_finite):
        raise InvalidArgumentError("quad_energy needs finite boxes")
    if separation(A, B) <= 0.0:
        raise InvalidArgumentError("quad_energy needs boxes at positive distance")
    dim = A.dim
    exponent = -(dim + 2.0 * sv) / 2.0

    def integrand(*coords: float) -> float:
        diff = np.subtract(coords[:dim], coords[dim:])
        return float(np.dot(diff, diff) ** exponent)

    ranges = [list(pair) for pair in A.bounds] + [list(pair) for pair in B.bounds]
    value, abserr = integrate.nquad(integrand, ranges, opts={"epsrel": epsrel, "epsabs": 0.0})
    return EnergyValue.quadrature(value, abserr)


def cell_boxes(bbox: AxisBox, cells: int) -> list[AxisBox]:
    """A cells-per-axis tensor grid over bbox as boxes, C order over axes."""
    nodes = [np.linspace(lo, hi, cells + 1) for lo, hi in bbox.bounds]
    boxes = []
    for index in np.ndindex(*([cells] * bbox.dim)):
        boxes.append(
            AxisBox.of(*((float(nodes[a][i]), float(nodes[a][i + 1])) for a, i in enumerate(index)))
        )
    return boxes


def grid_form_oracle(
    domain: BoxUnionDomain,
    s: SLike,
    cells: int,
    mode: FormMode = FormMode.FULL,
    tol: QuadratureSettings | None = None,
) -> tuple[np.ndarray, np.ndarray]:
    """
    Indicator-basis Gagliardo form on a cells-per-axis grid over the domain's bounding box.

    Cells whose centers lie in the domain are active. Off-diagonal entries are
    -2 E(cell_p, cell_q); the full-space diagonal is 2 Per_s(cell_p), the
    regional one 2 * sum over the other active cells of E(cell_p, cell_q).

    Returns:
        (stiffness, mass) for the active cells.
    """
    order = FracOrder.of(s)
    order.require_sub("grid_form_oracle")
    if not 1 <= cells <= ORACLE_MAX_CELLS:
        raise InvalidArgumentError(
            f"grid_form_oracle supports at most {ORACLE_MAX_CELLS} cells per axis"
        )
    if not domain.is_bounded:
        raise InvalidArgumentError("grid_form_oracle needs a bounded domain")
    grid = cell_boxes(domain.bounding_box(), cells)
    centers = np.array([0.5 * (box.lo + box.hi) for box in grid])
    active = point_in_domain(domain, centers)
    boxes = [box for box, keep in zip(grid, active, strict=True) if keep]

    n = len(boxes)
    stiffness = np.zeros((n, n))
    for p in range(n):
        for q in range(n):
            if p != q:
                stiffness[p, q] = -2.0 * box_box_energy(boxes[p], boxes[q], order, tol).value
    for p in range(n):
        if mode is FormMode.REGIONAL:
            stiffness[p, p] = -float(np.sum(stiffness[p]))
        elif domain.dim == 1:
            stiffness[p, p] = 2.0 * interval_complement_energy(boxes[p].sides[0], order).value
        else:
            w, h = boxes[p].sides
            stiffness[p, p] = 2.0 * rect_perimeter_s(w, h, order, tol).value
    mass = np.array([box.volume for box in boxes])
    logger.debug(f"grid_form_oracle assembled {n} active cells")
    return stiffness, mass
