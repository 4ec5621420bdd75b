"""
assembly.py

PURPOSE: Piecewise-constant Galerkin forms of the fractional Dirichlet problem on box unions.
DEPENDENCIES: numpy, scipy.signal, scipy.sparse.linalg, kernels, geometry

ARCHITECTURE NOTES:
The basis is the set of indicators of grid cells whose centers lie in the
domain. On a uniform grid the energy between two cells depends only on their
integer offset, so one table T[|dx|, |dy|] of cell-cell energies is computed
per grid shape and every matrix entry is read from it:

    A_pq = -2 T[offset(p, q)]                 (p != q)
    A_pp = 2 Per_s(cell)                      (full mode)
    A_pp = 2 sum_{q active, q != p} T[...]    (regional mode)

Near offsets come from the tent reduction in kernels.tent; offsets at least
FAR_OFFSET cells apart use a tensor Gauss-Legendre rule, which is far below
the tent tolerance there. In one dimension every entry is a closed form.

Systems up to dense_limit unknowns are returned as dense arrays. Larger
systems come back as a CellConvolution operator whose matvec is an FFT
convolution of the active-cell field with the offset table.
"""

import logging
import math

import numpy as np
from scipy.signal import fftconvolve
from scipy.sparse.linalg import LinearOperator

from fracpoincare.config import EigenSettings, QuadratureSettings
from fracpoincare.errors import InvalidArgumentError
from fracpoincare.geometry.arrangement import point_in_domain
from fracpoincare.kernels.closed_forms import interval_complement_energy, interval_pair_energy
from fracpoincare.kernels.tent import box_box_energy, rect_perimeter_s
from fracpoincare.models.geometry import AxisBox, BoxUnionDomain
from fracpoincare.models.order import FracOrder, SLike
from fracpoincare.models.params import ElementOrder, FormMode, GridSpec
from fracpoincare.observability import traced
from fracpoincare.parallel import ordered_map

logger = logging.getLogger(__name__)

FAR_OFFSET = 4
GAUSS_POINTS = 6
_ROW_CHUNK = 512


def _far_energies(offsets: np.ndarray, h: tuple[float, float], s: float) -> np.ndarray:
    """Cell-cell energies for well-separated integer offsets, shape (M,)."""
    nodes, weights = np.polynomial.legendre.leggauss(GAUSS_POINTS)
    xs = [0.5 * hk * (nodes + 1.0) for hk in h]
    ws = [0.5 * hk * weights for hk in h]
    px, py = np.meshgrid(xs[0], xs[1], indexing="ij")
    wp = np.outer(ws[0], ws[1]).ravel()
    pts = np.stack([px.ravel(), py.ravel()], axis=1)
    diff = (pts[:, None, :] - pts[None, :, :]).reshape(-1, 2)
    wdiff = np.outer(wp, wp).ravel()
    shift = offsets * np.asarray(h)
    out = np.empty(len(offsets))
    for i, (ox, oy) in enumerate(shift):
        r2 = (diff[:, 0] - ox) ** 2 + (diff[:, 1] - oy) ** 2
        out[i] = float(np.dot(wdiff, r2 ** (-(1.0 + s))))
    return out


def offset_table(
    grid: GridSpec,
    s: SLike,
    tol: QuadratureSettings | None = None,
    threads: int = 1,
) -> np.ndarray:
    """
    Energies between the origin cell and the cell at every nonnegative offset.

    Returns:
        Array of shape grid.cells with T[0, ...] at the origin set to 0.
    """
    order = FracOrder.of(s)
    sv = order.s
    h = grid.h
    if grid.dim == 1:
        (hx,) = h
        d = np.arange(grid.cells[0], dtype=float)
        table = interval_pair_energy(
            np.zeros_like(d), np.full_like(d, hx), d * hx, (d + 1.0) * hx, sv
        )
        table[0] = 0.0
        return table

    nx, ny = grid.cells
    table = np.zeros((nx, ny))
    near = [(i, j) for i in range(min(nx, FAR_OFFSET)) for j in range(min(ny, FAR_OFFSET))]
    near = [ij for ij in near if ij != (0, 0)]
    origin = AxisBox.of((0.0, h[0]), (0.0, h[1]))

    def near_energy(ij: tuple[int, int]) -> float:
        i, j = ij
        other = origin.translated((i * h[0], j * h[1]))
        return box_box_energy(origin, other, order, tol).value

    for ij, value in zip(near, ordered_map(near_energy, near, threads), strict=True):
        table[ij] = value

    ii, jj = np.meshgrid(np.arange(nx), np.arange(ny), indexing="ij")
    far = (ii >= FAR_OFFSET) | (jj >= FAR_OFFSET)
    if far.any():
        offsets = np.stack([ii[far], jj[far]], axis=1).astype(float)
        table[far] = _far_energies(offsets, (h[0], h[1]), sv)
    logger.debug(f"Offset table {nx}x{ny}: {len(near)} tent quadratures, {int(far.sum())} Gauss")
    return table


def _cell_perimeter(grid: GridSpec, s: FracOrder, tol: QuadratureSettings | None) -> float:
    if grid.dim == 1:
        return interval_complement_energy(grid.h[0], s).value
    return rect_perimeter_s(grid.h[0], grid.h[1], s, tol).value


def _full_kernel(table: np.ndarray) -> np.ndarray:
    """Mirror the nonnegative-offset table into the full signed-offset kernel."""
    kernel = table
    for axis in range(table.ndim):
        flipped = np.flip(np.delete(kernel, 0, axis=axis), axis=axis)
        kernel = np.concatenate([flipped, kernel], axis=axis)
    return kernel


class CellConvolution(LinearOperator):
    """Matrix-free piecewise-constant stiffness matrix on the active cells of a grid."""

    def __init__(self, table: np.ndarray, active: np.ndarray, diagonal: np.ndarray) -> None:
        self._kernel = _full_kernel(table)
        self._active = active
        self._diag = diagonal
        n = int(active.sum())
        super().__init__(dtype=np.float64, shape=(n, n))

    def diagonal(self) -> np.ndarray:
        return self._diag.copy()

    def _matvec(self, x: np.ndarray) -> np.ndarray:
        x = np.asarray(x, dtype=float).ravel()
        field = np.zeros(self._active.shape)
        field[self._active] = x
        coupled = fftconvolve(field, self._kernel, mode="same")[self._active]
        return self._diag * x - 2.0 * coupled

    def _rmatvec(self, x: np.ndarray) -> np.ndarray:
        return self._matvec(x)

    def _adjoint(self) -> "CellConvolution":
        return self


def active_cells(domain: BoxUnionDomain, grid: GridSpec) -> np.ndarray:
    """Boolean mask of shape grid.cells marking cells whose centers lie in the domain."""
    if domain.dim != grid.dim:
        raise InvalidArgumentError("grid and domain dimensions differ")
    return point_in_domain(domain, grid.cell_centers()).reshape(grid.cells)


def _dense_stiffness(
    table: np.ndarray, active: np.ndarray, diagonal: np.ndarray | None
) -> np.ndarray:
    """Dense matrix from the table; a missing diagonal is the regional one, minus the row sums."""
    index = np.argwhere(active)
    n = len(index)
    stiffness = np.empty((n, n))
    for start in range(0, n, _ROW_CHUNK):
        rows = index[start : start + _ROW_CHUNK]
        gap = np.abs(rows[:, None, :] - index[None, :, :])
        axes = tuple(gap[..., a] for a in range(gap.shape[-1]))
        stiffness[start : start + len(rows)] = -2.0 * table[axes]
    stiffness[np.diag_indices(n)] = 0.0
    if diagonal is None:
        stiffness[np.diag_indices(n)] = -stiffness.sum(axis=1)
    else:
        stiffness[np.diag_indices(n)] = diagonal
    return stiffness


@traced("eigensolver.assemble_p0")
def assemble_p0(
    domain: BoxUnionDomain,
    grid: GridSpec,
    s: SLike,
    mode: FormMode = FormMode.FULL,
    tol: QuadratureSettings | None = None,
    threads: int = 1,
    settings: EigenSettings | None = None,
) -> tuple[np.ndarray | CellConvolution, np.ndarray]:
    """
    Piecewise-constant stiffness matrix and mass diagonal on the cells inside the domain.

    Raises:
        OutOfRegimeError: If s >= 1/2.
        InvalidArgumentError: If no cell center lies in the domain.
    """
    order = FracOrder.of(s)
    order.require_sub("piecewise-constant assembly")
    if grid.order is not ElementOrder.P0:
        raise InvalidArgumentError("assemble_p0 needs a P0 grid")
    settings = settings or EigenSettings()
    active = active_cells(domain, grid)
    n = int(active.sum())
    if n == 0:
        raise InvalidArgumentError("no grid cell lies inside the domain")

    table = offset_table(grid, order, tol, threads)
    diagonal = None
    if mode is FormMode.FULL:
        diagonal = np.full(n, 2.0 * _cell_perimeter(grid, order, tol))
    mass = np.full(n, math.prod(grid.h))

    stiffness: np.ndarray | CellConvolution
    if n <= settings.dense_limit:
        stiffness = _dense_stiffness(table, active, diagonal)
    else:
        if diagonal is None:
            near = fftconvolve(active.astype(float), _full_kernel(table), mode="same")
            diagonal = 2.0 * near[active]
        stiffness = CellConvolution(table, active, diagonal)
    logger.info(f"Assembled P0 {mode} form: {n} cells on a {grid.cells} grid")
    return stiffness, mass


def assemble_p0_2d(
    domain: BoxUnionDomain,
    grid: GridSpec,
    s: SLike,
    mode: FormMode = FormMode.FULL,
    tol: QuadratureSettings | None = None,
    threads: int = 1,
    settings: EigenSettings | None = None,
) -> tuple[np.ndarray | CellConvolution, np.ndarray]:
    """The planar case of assemble_p0."""
    if grid.dim != 2 or domain.dim != 2:
        raise InvalidArgumentError("assemble_p0_2d needs a planar domain and grid")
    return assemble_p0(domain, grid, s, mode, tol, threads, settings)
