"""Brute-force oracles used to cross-check the closed forms and the assembly."""

from fracpoincare.oracle.montecarlo import mc_energy, mc_perimeter, stratum_generator
from fracpoincare.oracle.quadrature import (
    ORACLE_MAX_CELLS,
    cell_boxes,
    grid_form_oracle,
    quad_energy,
    separation,
)
from fracpoincare.oracle.verify import compare, summarize, verify_kernels

__all__ = [
    "ORACLE_MAX_CELLS",
    "cell_boxes",
    "compare",
    "grid_form_oracle",
    "mc_energy",
    "mc_perimeter",
    "quad_energy",
    "separation",
    "stratum_generator",
    "summarize",
    "verify_kernels",
]
