"""Closed-form and semi-analytic fractional interaction energies."""

from fracpoincare.kernels.closed_forms import (
    angular_constant,
    box_strip_between,
    box_strip_energy,
    interval_complement_energy,
    interval_interval_energy,
    interval_pair_energy,
    kernel_antiderivative,
    kernel_line_mass,
    power_inequality_holds,
    vertical_strip_integral,
)
from fracpoincare.kernels.tent import (
    Tent,
    axis_tent,
    ball_perimeter_chord,
    ball_perimeter_s,
    box_box_energy,
    rect_perimeter_s,
    tent_energy,
)

__all__ = [
    "Tent",
    "angular_constant",
    "axis_tent",
    "ball_perimeter_chord",
    "ball_perimeter_s",
    "box_box_energy",
    "box_strip_between",
    "box_strip_energy",
    "interval_complement_energy",
    "interval_interval_energy",
    "interval_pair_energy",
    "kernel_antiderivative",
    "kernel_line_mass",
    "power_inequality_holds",
    "rect_perimeter_s",
    "tent_energy",
    "vertical_strip_integral",
]
