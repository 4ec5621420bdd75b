"""
solve.py

PURPOSE: Smallest eigenvalues, Richardson extrapolation and discrete Poincaré constants.
DEPENDENCIES: numpy, scipy.linalg, scipy.sparse.linalg, scipy.optimize

ARCHITECTURE NOTES:
solve_eigs takes the generalized problem A v = lambda M v with M either a
diagonal (given as a vector) or a full symmetric matrix. Up to dense_limit
unknowns it calls LAPACK through scipy.linalg.eigh with an index subset.
Above that it runs ARPACK in shift-invert mode: the mass is symmetrically
scaled away, and the shifted inverse is applied by Jacobi-preconditioned CG,
so the stiffness only ever needs matvecs. The shift sits just below zero,
which keeps the shifted operator definite even for singular regional forms.

Eigenvectors always come back mass-orthonormal.
"""

import logging
import math

import numpy as np
import scipy.linalg
from scipy.optimize import brentq
from scipy.sparse import diags
from scipy.sparse.linalg import ArpackError, ArpackNoConvergence, LinearOperator, cg, eigsh

from fracpoincare.config import EigenSettings, QuadratureSettings
from fracpoincare.eigensolver.assembly import assemble_p0
from fracpoincare.eigensolver.p1 import assemble_p1_1d
from fracpoincare.errors import EigenSolverError, InvalidArgumentError
from fracpoincare.geometry.arrangement import normalize
from fracpoincare.models.geometry import AxisBox, BoxUnionDomain, IntervalUnion
from fracpoincare.models.order import FracOrder, SLike
from fracpoincare.models.params import ElementOrder, FormMode, GridSpec
from fracpoincare.models.results import EigResult, Extrapolation
from fracpoincare.observability import traced

logger = logging.getLogger(__name__)

# matvecs through FFTs are symmetric only to roundoff
OPERATOR_SYMMETRY_RTOL = 1e-9
SHIFT_FRACTION = 1e-6
MAX_ORDER = 8.0


def _check_symmetric(stiffness: np.ndarray | LinearOperator, rtol: float) -> None:
    if isinstance(stiffness, np.ndarray):
        scale = float(np.max(np.abs(stiffness))) or 1.0
        if float(np.max(np.abs(stiffness - stiffness.T))) > rtol * scale:
            raise InvalidArgumentError("stiffness matrix is not symmetric")
        return
    rng = np.random.default_rng(0)
    x, y = rng.standard_normal((2, stiffness.shape[0]))
    ax, ay = stiffness.matvec(x), stiffness.matvec(y)
    scale = float(np.linalg.norm(ax) * np.linalg.norm(y)) or 1.0
    if abs(float(y @ ax) - float(x @ ay)) > max(rtol, OPERATOR_SYMMETRY_RTOL) * scale:
        raise InvalidArgumentError("stiffness operator is not symmetric")


def _dense(
    stiffness: np.ndarray, mass: np.ndarray, count: int
) -> tuple[np.ndarray, np.ndarray]:
    full_mass = np.diag(mass) if mass.ndim == 1 else mass
    try:
        return scipy.linalg.eigh(stiffness, full_mass, subset_by_index=[0, count - 1])
    except scipy.linalg.LinAlgError as e:
        raise EigenSolverError(f"dense generalized eigensolve failed: {e}") from e


def _operator_diagonal(stiffness: np.ndarray | LinearOperator) -> np.ndarray | None:
    if isinstance(stiffness, np.ndarray):
        return np.diag(stiffness).copy()
    diagonal = getattr(stiffness, "diagonal", None)
    return diagonal() if callable(diagonal) else None


def _iterative(
    stiffness: np.ndarray | LinearOperator,
    mass: np.ndarray,
    count: int,
    settings: EigenSettings,
) -> tuple[np.ndarray, np.ndarray]:
    n = stiffness.shape[0]
    if count >= n:
        raise InvalidArgumentError(f"iterative solve needs count < {n}")
    if mass.ndim == 2:
        if not isinstance(stiffness, np.ndarray):
            raise InvalidArgumentError("a full mass matrix needs an explicit stiffness matrix")
        shift = -SHIFT_FRACTION * float(np.mean(np.diag(stiffness)) / np.mean(np.diag(mass)))
        try:
            values, vectors = eigsh(
                stiffness, k=count, M=mass, sigma=shift, which="LM", tol=settings.iterative_tol
            )
        except (ArpackNoConvergence, ArpackError) as e:
            raise EigenSolverError(f"shift-invert Lanczos failed: {e}") from e
        norms = np.sqrt(np.einsum("ij,ij->j", vectors, mass @ vectors))
        return values, vectors / norms

    scale = 1.0 / np.sqrt(mass)

    def scaled(x: np.ndarray) -> np.ndarray:
        return scale * stiffness.dot(scale * np.ravel(x))

    diagonal = _operator_diagonal(stiffness)
    reference = float(np.mean(diagonal * scale**2)) if diagonal is not None else 1.0
    shift = -SHIFT_FRACTION * reference

    def shifted(x: np.ndarray) -> np.ndarray:
        return scaled(x) - shift * np.ravel(x)

    shifted_op = LinearOperator((n, n), matvec=shifted, dtype=np.float64)
    precond = None
    if diagonal is not None:
        precond = diags(1.0 / (diagonal * scale**2 - shift))

    def inverse(x: np.ndarray) -> np.ndarray:
        solution, info = cg(shifted_op, np.ravel(x), rtol=settings.iterative_tol, M=precond)
        if info != 0:
            raise EigenSolverError(f"inner CG solve did not converge (info={info})")
        return solution

    operator = LinearOperator((n, n), matvec=scaled, dtype=np.float64)
    inverse_op = LinearOperator((n, n), matvec=inverse, dtype=np.float64)
    try:
        values, vectors = eigsh(
            operator,
            k=count,
            sigma=shift,
            which="LM",
            OPinv=inverse_op,
            tol=settings.iterative_tol,
        )
    except (ArpackNoConvergence, ArpackError) as e:
        raise EigenSolverError(f"shift-invert Lanczos failed: {e}") from e
    return values, scale[:, None] * vectors


def solve_eigs(
    stiffness: np.ndarray | LinearOperator,
    mass: np.ndarray,
    count: int,
    settings: EigenSettings | None = None,
    grid: GridSpec | None = None,
    form_mode: FormMode = FormMode.FULL,
) -> EigResult:
    """
    The count smallest eigenvalues of stiffness v = lambda mass v.

    Args:
        mass: A positive vector (diagonal mass) or a symmetric positive definite matrix.

    Raises:
        InvalidArgumentError: On asymmetric input, mismatched shapes or a bad count.
        EigenSolverError: If the solver fails to converge.
    """
    settings = settings or EigenSettings()
    mass = np.asarray(mass, dtype=float)
    n = stiffness.shape[0]
    if stiffness.shape != (n, n) or mass.shape[0] != n:
        raise InvalidArgumentError("stiffness and mass shapes do not match")
    if not 1 <= count <= n:
        raise InvalidArgumentError(f"count must lie in [1, {n}] (got {count})")
    _check_symmetric(stiffness, settings.symmetry_rtol)

    if n <= settings.dense_limit and isinstance(stiffness, np.ndarray):
        values, vectors = _dense(stiffness, mass, count)
        solver = "dense"
    else:
        values, vectors = _iterative(stiffness, mass, count, settings)
        solver = "shift-invert"
    order = np.argsort(values)
    values, vectors = values[order], vectors[:, order]
    logger.info(f"{solver} solve, {n} dof: lambda_1 = {values[0]:.10g}")
    return EigResult(
        eigenvalues=tuple(float(v) for v in values),
        grid=grid,
        form_mode=form_mode,
        dof=n,
        solver=solver,
        eigenvectors=vectors,
    )


def richardson(
    values: list[float] | tuple[float, ...], ladder: list[int] | tuple[int, ...]
) -> Extrapolation:
    """
    Extrapolate the last three ladder values to zero mesh width.

    The convergence order p solves
    (v0 - v1) / (v1 - v2) = (h0^p - h1^p) / (h1^p - h2^p) with h = 1/cells.
    Values that do not strictly decrease are reported as non-monotone with no
    limit; a ratio with no admissible order gives a monotone, limitless result.
    """
    if len(values) != len(ladder) or len(values) < 3:
        raise InvalidArgumentError("richardson needs at least three ladder values")
    base = Extrapolation(ladder=tuple(ladder), values=tuple(values))
    v0, v1, v2 = values[-3:]
    h0, h1, h2 = (1.0 / n for n in ladder[-3:])
    if not all(a > b for a, b in zip(values, values[1:], strict=False)):
        logger.warning(f"ladder values are not decreasing: {list(values)}")
        return base.model_copy(update={"monotone": False})
    ratio = (v0 - v1) / (v1 - v2)

    def mismatch(p: float) -> float:
        return (h0**p - h1**p) / (h1**p - h2**p) - ratio

    lo, hi = 1e-3, MAX_ORDER
    if mismatch(lo) * mismatch(hi) > 0.0:
        logger.warning(f"no convergence order in ({lo}, {hi}) fits the ladder ratio {ratio:.4g}")
        return base
    p = brentq(mismatch, lo, hi, xtol=1e-12)
    correction = (v1 - v2) * h2**p / (h1**p - h2**p)
    limit = v2 - correction
    return base.model_copy(update={"limit": limit, "order": p, "error_estimate": abs(correction)})


def ladder_grid(bbox_sides: tuple[float, ...], cells: int) -> tuple[int, ...]:
    """Cells per axis for one ladder rung: `cells` on the longest axis, proportional elsewhere."""
    longest = max(bbox_sides)
    return tuple(max(4, round(cells * side / longest)) for side in bbox_sides)


def as_interval_union(domain: BoxUnionDomain | IntervalUnion) -> IntervalUnion:
    """The disjoint interval form of a one-dimensional domain."""
    if isinstance(domain, IntervalUnion):
        return domain
    if domain.dim != 1:
        raise InvalidArgumentError("expected a one-dimensional domain")
    boxes = sorted(normalize(domain).boxes, key=lambda box: box.bounds[0][0])
    return IntervalUnion(intervals=tuple(box.bounds[0] for box in boxes))


def eigenvalues_on_grid(
    domain: BoxUnionDomain | IntervalUnion,
    s: SLike,
    cells: tuple[int, ...],
    mode: FormMode = FormMode.FULL,
    count: int = 1,
    settings: EigenSettings | None = None,
    tol: QuadratureSettings | None = None,
    threads: int = 1,
) -> EigResult:
    """
    The `count` lowest eigenvalues on an explicit grid over the bounding box.

    One-dimensional domains use P1 hats on the interval hull, planar ones P0 cells.

    Raises:
        InvalidArgumentError: For an unbounded domain or a grid of the wrong dimension.
    """
    order = FracOrder.of(s)
    if isinstance(domain, IntervalUnion) or domain.dim == 1:
        if len(cells) != 1:
            raise InvalidArgumentError("a one-dimensional domain takes a single cell count")
        intervals = as_interval_union(domain)
        lo = intervals.intervals[0][0]
        hi = intervals.intervals[-1][1]
        if not (math.isfinite(lo) and math.isfinite(hi)):
            raise InvalidArgumentError("Poincaré constants need a bounded domain")
        grid = GridSpec(cells=cells, bbox=AxisBox.of((lo, hi)), order=ElementOrder.P1)
        stiffness, mass = assemble_p1_1d(intervals, grid, order, mode)
        return solve_eigs(stiffness, mass, count, settings, grid, mode)
    bbox = domain.bounding_box()
    if not bbox.is_finite:
        raise InvalidArgumentError("Poincaré constants need a bounded domain")
    if len(cells) != domain.dim:
        raise InvalidArgumentError(f"a {domain.dim}D domain needs {domain.dim} cell counts")
    grid = GridSpec(cells=cells, bbox=bbox, order=ElementOrder.P0)
    p0_stiffness, p0_mass = assemble_p0(domain, grid, order, mode, tol, threads, settings)
    return solve_eigs(p0_stiffness, p0_mass, count, settings, grid, mode)


def first_eigenvalue(
    domain: BoxUnionDomain | IntervalUnion,
    s: SLike,
    cells: int,
    mode: FormMode = FormMode.FULL,
    count: int = 1,
    settings: EigenSettings | None = None,
    tol: QuadratureSettings | None = None,
    threads: int = 1,
) -> EigResult:
    """Eigenvalues on one ladder rung: `cells` along the longest axis of the bounding box."""
    if isinstance(domain, IntervalUnion) or domain.dim == 1:
        per_axis: tuple[int, ...] = (cells,)
    else:
        bbox = domain.bounding_box()
        if not bbox.is_finite:
            raise InvalidArgumentError("Poincaré constants need a bounded domain")
        per_axis = ladder_grid(bbox.sides, cells)
    return eigenvalues_on_grid(domain, s, per_axis, mode, count, settings, tol, threads)


@traced("eigensolver.poincare_constant")
def poincare_constant(
    domain: BoxUnionDomain | IntervalUnion,
    s: SLike,
    ladder: tuple[int, ...] | None = None,
    mode: FormMode = FormMode.FULL,
    settings: EigenSettings | None = None,
    tol: QuadratureSettings | None = None,
    threads: int = 1,
) -> EigResult:
    """
    First eigenvalue across a refinement ladder with its Richardson limit.

    Full mode gives P^2, regional mode P^1. The returned result holds the
    eigenvalues of the finest rung; the ladder and limit are in `extrapolated`.

    Raises:
        OutOfRegimeError: For a planar domain with s >= 1/2.
    """
    settings = settings or EigenSettings()
    rungs = ladder or settings.ladder
    if len(rungs) < 3 or any(b <= a for a, b in zip(rungs, rungs[1:], strict=False)):
        raise InvalidArgumentError("ladder needs at least three strictly increasing cell counts")
    results = [
        first_eigenvalue(domain, s, cells, mode, 1, settings, tol, threads) for cells in rungs
    ]
    values = [r.eigenvalues[0] for r in results]
    extrapolated = richardson(values, rungs)
    if extrapolated.inconclusive:
        logger.warning("Richardson extrapolation is inconclusive; reporting ladder values only")
    else:
        logger.info(
            f"P constant {extrapolated.limit:.10g} (order {extrapolated.order:.3g}, "
            f"error {extrapolated.error_estimate:.2e})"
        )
    finest = results[-1]
    return finest.model_copy(update={"extrapolated": extrapolated})

