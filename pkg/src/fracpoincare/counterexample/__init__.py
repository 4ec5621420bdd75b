"""The strip-family counterexample: domain, test functions and quotient table."""

from fracpoincare.counterexample.construction import (
    build_domain,
    p_zero_index,
    psi_indicator,
    support_in_domain,
)
from fracpoincare.counterexample.quotients import (
    gap_energy_split,
    quotient_sequence,
    step4_terms,
    step4_upper_bound,
)

__all__ = [
    "build_domain",
    "gap_energy_split",
    "p_zero_index",
    "psi_indicator",
    "quotient_sequence",
    "step4_terms",
    "step4_upper_bound",
    "support_in_domain",
]
