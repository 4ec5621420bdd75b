"""
experiments.py

PURPOSE: Eigenvalues of long cylinders (-ell, ell) x omega against the cross-section constant.
DEPENDENCIES: numpy, eigensolver, kernels.closed_forms, observability

ARCHITECTURE NOTES:
Every grid here uses one mesh width h on both axes, so the y-grid of the
cylinder is the 1D grid of omega. The cross-section constant is the first
eigenvalue of the 1D piecewise-constant problem on omega times the kernel
line mass B(1/2, s + 1/2): integrating the planar kernel along a line gives
exactly that multiple of the 1D kernel, so for the unnormalized kernels used
throughout the package this is the constant of the infinite cylinder, and on
matched grids the planar eigenvalues bracket it from above.
"""

import logging

from fracpoincare.config import EigenSettings, QuadratureSettings
from fracpoincare.eigensolver.assembly import assemble_p0, assemble_p0_2d
from fracpoincare.eigensolver.solve import solve_eigs
from fracpoincare.errors import InvalidArgumentError
from fracpoincare.kernels.closed_forms import kernel_line_mass
from fracpoincare.models.geometry import AxisBox, BoxUnionDomain
from fracpoincare.models.order import FracOrder, SLike
from fracpoincare.models.params import ElementOrder, FormMode, GridSpec
from fracpoincare.models.results import AsymptoticsRow, AsymptoticsTable, log_log_slope
from fracpoincare.observability import traced

logger = logging.getLogger(__name__)

DEFAULT_CROSS_CELLS = 8
MESH_RTOL = 1e-9


def cells_for(length: float, h: float) -> int:
    """The number of cells of width h in a segment; h must divide the length."""
    cells = round(length / h)
    if cells < 4 or abs(cells * h - length) > MESH_RTOL * length:
        raise InvalidArgumentError(f"h = {h} must divide {length} into at least 4 cells")
    return cells


def cylinder(ell: float, omega: tuple[float, float]) -> BoxUnionDomain:
    """The rectangle (-ell, ell) x omega."""
    if ell <= 0.0:
        raise InvalidArgumentError("ell must be positive")
    return BoxUnionDomain(dim=2, boxes=(AxisBox.of((-ell, ell), omega),), name=f"cylinder {ell:g}")


def cylinder_grid(ell: float, omega: tuple[float, float], h: float) -> GridSpec:
    bbox = AxisBox.of((-ell, ell), omega)
    cells = (cells_for(2.0 * ell, h), cells_for(omega[1] - omega[0], h))
    return GridSpec(cells=cells, bbox=bbox, order=ElementOrder.P0)


def p0_1d_matched(
    omega: tuple[float, float],
    h: float,
    s: SLike,
    settings: EigenSettings | None = None,
) -> float:
    """Cross-section constant of the cylinder over omega on the 1D grid of width h."""
    order = FracOrder.of(s)
    segment = AxisBox.of(omega)
    grid = GridSpec(cells=(cells_for(segment.sides[0], h),), bbox=segment, order=ElementOrder.P0)
    domain = BoxUnionDomain(dim=1, boxes=(segment,))
    stiffness, mass = assemble_p0(domain, grid, order, FormMode.FULL, settings=settings)
    lam = solve_eigs(stiffness, mass, 1, settings, grid).eigenvalues[0]
    return lam * kernel_line_mass(order)


def cylinder_eigenvalues(
    ell: float,
    omega: tuple[float, float],
    h: float,
    s: SLike,
    count: int,
    settings: EigenSettings | None = None,
    tol: QuadratureSettings | None = None,
    threads: int = 1,
) -> tuple[float, ...]:
    grid = cylinder_grid(ell, omega, h)
    stiffness, mass = assemble_p0_2d(
        cylinder(ell, omega), grid, s, FormMode.FULL, tol, threads, settings
    )
    return solve_eigs(stiffness, mass, count, settings, grid).eigenvalues


@traced("eigensolver.asymptotics_experiment")
def asymptotics_experiment(
    s: SLike,
    omega: tuple[float, float] = (0.0, 1.0),
    ells: tuple[float, ...] = (2.0, 4.0, 8.0, 16.0),
    k: int = 3,
    h: float | None = None,
    settings: EigenSettings | None = None,
    tol: QuadratureSettings | None = None,
    threads: int = 1,
) -> AsymptoticsTable:
    """
    lambda_1..lambda_k of (-ell, ell) x omega for every ell, with their gaps to P^2(omega).

    Raises:
        OutOfRegimeError: If s >= 1/2.
        InvalidArgumentError: On a bad ell list, a mesh that does not fit, or a
            cylinder over the cell budget.
    """
    order = FracOrder.of(s)
    order.require_sub("asymptotics_experiment")
    settings = settings or EigenSettings()
    if k < 1:
        raise InvalidArgumentError("k must be positive")
    if not ells or any(b <= a for a, b in zip(ells, ells[1:], strict=False)) or ells[0] <= 0:
        raise InvalidArgumentError("ells must be positive and strictly ascending")
    if not omega[0] < omega[1]:
        raise InvalidArgumentError("omega must be a nonempty bounded interval")
    width = omega[1] - omega[0]
    h = h if h is not None else width / DEFAULT_CROSS_CELLS
    for ell in ells:
        grid = cylinder_grid(ell, omega, h)
        if grid.n_cells > settings.max_cells:
            raise InvalidArgumentError(
                f"ell = {ell:g} needs {grid.n_cells} cells, "
                f"above the budget of {settings.max_cells}"
            )

    p2 = p0_1d_matched(omega, h, order, settings)
    logger.info(f"Cross-section constant P^2(omega) = {p2:.10g} at h = {h:g}")
    count = max(k, 2)
    spectra = {
        ell: cylinder_eigenvalues(ell, omega, h, order, count, settings, tol, threads)
        for ell in ells
    }
    exponents = {
        j: log_log_slope(list(ells), [spectra[ell][j - 1] - p2 for ell in ells])
        for j in range(1, k + 1)
    }
    rows = [
        AsymptoticsRow(
            ell=ell,
            k=j,
            lam=spectra[ell][j - 1],
            p2_omega=p2,
            gap=spectra[ell][j - 1] - p2,
            fitted_exponent=exponents[j],
        )
        for ell in ells
        for j in range(1, k + 1)
    ]
    return AsymptoticsTable(
        s=order.s,
        omega=omega,
        h=h,
        rows=tuple(rows),
        fitted_exponents=exponents,
        spectral_gaps={ell: spectra[ell][1] - spectra[ell][0] for ell in ells},
    )


def partition_sanity(
    ell: float,
    omega: tuple[float, float],
    h: float,
    s: SLike,
    settings: EigenSettings | None = None,
    tol: QuadratureSettings | None = None,
) -> tuple[float, float]:
    """
    lambda_1 of the cylinders of half-lengths ell and ell/3 on matched grids.

    The longer cylinder contains a translate of the shorter one, so the first
    value never exceeds the second.
    """
    long_lam = cylinder_eigenvalues(ell, omega, h, s, 1, settings, tol)[0]
    short_lam = cylinder_eigenvalues(ell / 3.0, omega, h, s, 1, settings, tol)[0]
    logger.info(f"lambda_1: {long_lam:.8g} (ell = {ell:g}) vs {short_lam:.8g} (ell = {ell / 3:g})")
    return long_lam, short_lam
