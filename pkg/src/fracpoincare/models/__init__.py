"""Domain models for fractional energies, domains and results."""

from fracpoincare.models.energy import EnergyMethod, EnergyValue, McConfig, weakest_method
from fracpoincare.models.geometry import (
    AxisBox,
    BoxUnionDomain,
    GeneratorSpec,
    IndicatorFunction,
    IntervalUnion,
    format_bound,
    parse_bound,
)
from fracpoincare.models.order import FracOrder, Regime, SLike, order_value
from fracpoincare.models.params import CexParams, ElementOrder, FormMode, GridSpec, height_for
from fracpoincare.models.results import (
    AsymptoticsRow,
    AsymptoticsTable,
    ConditionReport,
    EigResult,
    Extrapolation,
    KernelCheck,
    KernelReport,
    QuotientRow,
    QuotientTable,
    SeminormBreakdown,
    Verdict,
    log_log_slope,
)
from fracpoincare.models.run import Command, RunConfig, parse_and_validate

__all__ = [
    "AsymptoticsRow",
    "AsymptoticsTable",
    "AxisBox",
    "BoxUnionDomain",
    "CexParams",
    "Command",
    "ConditionReport",
    "EigResult",
    "ElementOrder",
    "EnergyMethod",
    "EnergyValue",
    "Extrapolation",
    "FormMode",
    "FracOrder",
    "GeneratorSpec",
    "GridSpec",
    "IndicatorFunction",
    "IntervalUnion",
    "KernelCheck",
    "KernelReport",
    "McConfig",
    "QuotientRow",
    "QuotientTable",
    "Regime",
    "RunConfig",
    "SLike",
    "SeminormBreakdown",
    "Verdict",
    "format_bound",
    "height_for",
    "log_log_slope",
    "order_value",
    "parse_and_validate",
    "parse_bound",
    "weakest_method",
]
