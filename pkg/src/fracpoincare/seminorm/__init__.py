"""Gagliardo seminorms of indicator functions and their directional decomposition."""

from fracpoincare.seminorm.indicator import (
    box_perimeter,
    indicator_seminorm,
    pair_energy_bound,
    rayleigh_quotient,
)
from fracpoincare.seminorm.loss_sloane import loss_sloane_energy, slice_energies
from fracpoincare.seminorm.reflection import pattern_complement, reflection_comparison

__all__ = [
    "box_perimeter",
    "indicator_seminorm",
    "loss_sloane_energy",
    "pair_energy_bound",
    "pattern_complement",
    "rayleigh_quotient",
    "reflection_comparison",
    "slice_energies",
]
