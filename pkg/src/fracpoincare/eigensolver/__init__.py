"""Galerkin eigensolvers for fractional Dirichlet problems and the cylinder experiment."""

from fracpoincare.eigensolver.assembly import (
    CellConvolution,
    active_cells,
    assemble_p0,
    assemble_p0_2d,
    offset_table,
)
from fracpoincare.eigensolver.experiments import (
    asymptotics_experiment,
    cylinder,
    cylinder_eigenvalues,
    p0_1d_matched,
    partition_sanity,
)
from fracpoincare.eigensolver.p1 import assemble_p1_1d, hat_form, killing_density
from fracpoincare.eigensolver.solve import (
    as_interval_union,
    eigenvalues_on_grid,
    first_eigenvalue,
    poincare_constant,
    richardson,
    solve_eigs,
)

__all__ = [
    "CellConvolution",
    "active_cells",
    "as_interval_union",
    "assemble_p0",
    "assemble_p0_2d",
    "assemble_p1_1d",
    "asymptotics_experiment",
    "cylinder",
    "cylinder_eigenvalues",
    "eigenvalues_on_grid",
    "first_eigenvalue",
    "hat_form",
    "killing_density",
    "offset_table",
    "p0_1d_matched",
    "partition_sanity",
    "poincare_constant",
    "richardson",
    "solve_eigs",
]
