"""
quotients.py

PURPOSE: The Rayleigh-quotient sequence of the counterexample and its analytic bound.
DEPENDENCIES: numpy, seminorm, kernels, observability

ARCHITECTURE NOTES:
The numerator of every quotient comes from the exact perimeter / cross-term
decomposition in seminorm.indicator; the analytic estimates enter only as the
step4_bound column and the optional gap_energy_split diagnostics. The table
divides by the exact support area (k + 1) * k0.
"""

import logging
import math

from fracpoincare.config import QuadratureSettings
from fracpoincare.counterexample.construction import p_zero_index, psi_indicator
from fracpoincare.geometry.generators import gap_bounds, gap_sequence, strip_offsets
from fracpoincare.kernels.closed_forms import box_strip_between
from fracpoincare.models.params import CexParams, height_for
from fracpoincare.models.results import QuotientRow, QuotientTable
from fracpoincare.observability import traced
from fracpoincare.seminorm.indicator import indicator_seminorm

logger = logging.getLogger(__name__)

QUOTIENT_EPSREL = 1e-6


def step4_terms(params: CexParams, k: int) -> tuple[float, float, float, float]:
    """
    The four terms of the analytic upper bound, without its constant.

    k^(1-2s(P0+1)), k*k0^(-2s), (1/k) sum_{m<=k} s_m^(1-2s) and
    (1/k) sum_{m<=k} s_[m/2]^(1-2s).
    """
    s = params.s
    p0 = p_zero_index(s)
    k0 = height_for(k, params.A)
    gaps = gap_sequence(params.beta, k)
    p = 1.0 - 2.0 * s
    first = k ** (1.0 - 2.0 * s * (p0 + 1))
    second = k * float(k0) ** (-2.0 * s)
    third = math.fsum(float(g) ** p for g in gaps) / k
    fourth = math.fsum(float(gaps[m // 2]) ** p for m in range(k + 1)) / k
    return first, second, third, fourth


def step4_upper_bound(params: CexParams, k: int) -> float:
    """The bracketed sum bounding the quotient of psi_{k,k0} up to a constant."""
    return math.fsum(step4_terms(params, k))


def gap_energy_split(
    params: CexParams, k: int, tail: int | None = None
) -> tuple[float, float, float]:
    """
    Energy of the support against the gap strips, split by gap index.

    I(m, j) is the energy of (a_m, a_m + 1) x (0, k0) against the gap strip S_j.
    J1 sums j <= [m/2], J3 sums j in {m, m + 1}, and J2 sums the remaining
    j > [m/2]. Gaps are taken for |j| <= tail (default 4k + 16).

    Returns:
        (J1, J2, J3).
    """
    span = tail if tail is not None else 4 * k + 16
    span = max(span, k + 1)
    k0 = float(height_for(k, params.A))
    offsets = strip_offsets(params.beta, span)
    gaps = gap_bounds(params.beta, span)
    j1: list[float] = []
    j2: list[float] = []
    j3: list[float] = []
    for m in range(k + 1):
        strip = (offsets[m], offsets[m] + 1.0)
        for j, bounds in gaps.items():
            value = box_strip_between(strip, k0, bounds, params.s)
            if j <= m // 2:
                j1.append(value)
            elif j in (m, m + 1):
                j3.append(value)
            else:
                j2.append(value)
    return math.fsum(j1), math.fsum(j2), math.fsum(j3)


@traced("counterexample.quotient_sequence")
def quotient_sequence(
    params: CexParams,
    tol: QuadratureSettings | None = None,
    threads: int = 1,
    diagnostics: bool = False,
) -> QuotientTable:
    """
    Rayleigh quotients of psi_{k,k0} for every k in params.k_list.

    Raises:
        QuadratureError: If a box energy fails to converge.
    """
    tol = tol or QuadratureSettings(epsrel=QUOTIENT_EPSREL)
    rows: list[QuotientRow] = []
    notes: dict[int, dict[str, float]] = {}
    worst_abserr = 0.0
    worst_truncation = 0.0
    for k in params.k_list:
        psi = psi_indicator(params, k)
        breakdown = indicator_seminorm(psi, params.s, tol=tol, threads=threads)
        row = QuotientRow(
            k=k,
            k0=height_for(k, params.A),
            seminorm=breakdown.total,
            area=breakdown.area,
            quotient=breakdown.total / breakdown.area,
            step4_bound=step4_upper_bound(params, k),
        )
        rows.append(row)
        worst_abserr = max(worst_abserr, breakdown.abserr / breakdown.total)
        worst_truncation = max(worst_truncation, breakdown.truncation_bound / breakdown.total)
        logger.info(f"k={k}: quotient {row.quotient:.6g} (bound shape {row.step4_bound:.6g})")
        if diagnostics:
            j1, j2, j3 = gap_energy_split(params, k)
            notes[k] = {
                "j1": j1,
                "j2": j2,
                "j3": j3,
                "perimeters": math.fsum(breakdown.perimeter_terms),
                "cross_terms": breakdown.cross_terms,
            }
    return QuotientTable(
        rows=tuple(rows),
        params=params,
        tolerances={
            "epsrel": tol.epsrel,
            "max_relative_abserr": worst_abserr,
            "max_relative_truncation": worst_truncation,
        },
        diagnostics=notes,
    )
