"""Sufficient and necessary conditions for a positive fractional Poincare constant."""

from fracpoincare.conditions.constants import (
    ConstantEntry,
    ConstantsFile,
    ReferenceConstants,
    reference_bump_quotient,
    unit_interval_constant,
)
from fracpoincare.conditions.density import check_complement_density, complement_area_map
from fracpoincare.conditions.lines import arc_directions, check_ls, interval_union_lower_bound
from fracpoincare.conditions.necessary import (
    BallMode,
    extended_ball_bound,
    necessary_upper_bound,
    plain_ball_bound,
)

__all__ = [
    "BallMode",
    "ConstantEntry",
    "ConstantsFile",
    "ReferenceConstants",
    "arc_directions",
    "check_complement_density",
    "check_ls",
    "complement_area_map",
    "extended_ball_bound",
    "interval_union_lower_bound",
    "necessary_upper_bound",
    "plain_ball_bound",
    "reference_bump_quotient",
    "unit_interval_constant",
]
