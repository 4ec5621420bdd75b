"""
verify.py

PURPOSE: Cross-check the closed-form kernels against the brute-force oracles.
DEPENDENCIES: numpy, scipy.integrate, kernels, oracle, parallel, observability

ARCHITECTURE NOTES:
Parameters for every case are drawn up front from one Philox stream keyed by
the seed, then the cases run through ordered_map; the report is therefore the
same for any thread count. Deterministic oracles must agree to QUAD_RTOL
relative; Monte Carlo oracles must agree within MC_SIGMAS standard errors.

The planar box-box check uses Monte Carlo only: nquad over four dimensions is
far too slow for a routine check, and the tent reduction is already compared
entry by entry with the grid oracle in the eigensolver tests.
"""

import logging
import math
from typing import Any

import numpy as np
from scipy import integrate

from fracpoincare.config import QuadratureSettings
from fracpoincare.kernels.closed_forms import (
    box_strip_energy,
    interval_interval_energy,
    vertical_strip_integral,
)
from fracpoincare.kernels.tent import (
    ball_perimeter_chord,
    ball_perimeter_s,
    box_box_energy,
    rect_perimeter_s,
)
from fracpoincare.models.energy import EnergyValue, McConfig
from fracpoincare.models.geometry import AxisBox
from fracpoincare.models.order import FracOrder, SLike
from fracpoincare.models.results import KernelCheck, KernelReport
from fracpoincare.observability import traced
from fracpoincare.oracle.montecarlo import mc_energy, mc_perimeter
from fracpoincare.oracle.quadrature import quad_energy
from fracpoincare.parallel import ordered_map

logger = logging.getLogger(__name__)

QUAD_RTOL = 1e-5
MC_SIGMAS = 3.0
ORACLE_EPSREL = 1e-10


def compare(name: str, params: dict[str, float], closed: float, oracle: EnergyValue) -> KernelCheck:
    """Compare one closed-form value with one oracle value."""
    rel = abs(closed - oracle.value) / abs(oracle.value) if oracle.value else abs(closed)
    if oracle.stderr > 0.0:
        error = oracle.stderr
        passed = abs(closed - oracle.value) <= MC_SIGMAS * error + 1e-14 * abs(closed)
    else:
        error = oracle.abserr
        passed = rel <= QUAD_RTOL
    if not passed:
        logger.warning(f"{name} {params}: closed form {closed:.10g} vs oracle {oracle.value:.10g}")
    return KernelCheck(
        name=name,
        params=params,
        closed_form=closed,
        oracle=oracle.value,
        oracle_error=error,
        method=oracle.method,
        rel_error=rel,
        passed=passed,
    )


def strip_mass_oracle(a: float, b: float, s: float) -> EnergyValue:
    """Kernel mass of the strip (a, b) x R seen from the origin, by dblquad."""
    value, abserr = integrate.dblquad(
        lambda u, t: (t * t + u * u) ** (-1.0 - s),
        a,
        b,
        -math.inf,
        math.inf,
        epsabs=0.0,
        epsrel=ORACLE_EPSREL,
    )
    return EnergyValue.quadrature(value, abserr)


def box_strip_oracle(q1: float, q2: float, M: float, N: float, s: float) -> EnergyValue:
    """Energy of (0, M) x (0, N) against (M + q1, M + q2) x R, by tplquad."""
    value, abserr = integrate.tplquad(
        lambda u, t, x: ((M - x + t) ** 2 + u * u) ** (-1.0 - s),
        0.0,
        M,
        q1,
        q2,
        -math.inf,
        math.inf,
        epsabs=0.0,
        epsrel=1e-9,
    )
    return EnergyValue.quadrature(N * value, N * abserr)


def _draw_cases(seed: int, cases: int) -> list[dict[str, float]]:
    rng = np.random.Generator(np.random.Philox(key=seed))
    draws = []
    for _ in range(cases):
        u = rng.uniform(size=12)
        draws.append(
            {
                "a": 0.2 + 1.8 * u[0],
                "b_extra": 0.3 + 2.7 * u[1],
                "q1": 0.1 + 0.9 * u[2],
                "q_width": 0.5 + 2.5 * u[3],
                "M": 0.5 + 1.5 * u[4],
                "N": 0.5 + 1.5 * u[5],
                "gap": 0.2 + 0.8 * u[6],
                "dy": -1.0 + 2.0 * u[7],
                "w2": 0.5 + 1.5 * u[8],
                "h2": 0.5 + 1.5 * u[9],
                "L1": 0.3 + 1.7 * u[10],
                "L2": 0.3 + 1.7 * u[11],
            }
        )
    return draws


def _run_case(
    index: int,
    draw: dict[str, float],
    s: float,
    mc: McConfig,
    tol: QuadratureSettings,
) -> list[KernelCheck]:
    cfg = mc.model_copy(update={"seed": mc.seed + index})
    checks: list[KernelCheck] = []

    a, b = draw["a"], draw["a"] + draw["b_extra"]
    checks.append(
        compare(
            "vertical_strip_integral",
            {"a": a, "b": b},
            vertical_strip_integral(a, b, s).value,
            strip_mass_oracle(a, b, s),
        )
    )

    first = AxisBox.of((0.0, draw["L1"]))
    second = AxisBox.of((draw["L1"] + draw["gap"], draw["L1"] + draw["gap"] + draw["L2"]))
    pair_params = {"L1": draw["L1"], "gap": draw["gap"], "L2": draw["L2"]}
    pair = interval_interval_energy(first.bounds[0], second.bounds[0], s).value
    for oracle in (quad_energy(first, second, s, ORACLE_EPSREL), mc_energy(first, second, s, cfg)):
        checks.append(compare("interval_interval_energy", pair_params, pair, oracle))

    A = AxisBox.of((0.0, draw["M"]), (0.0, draw["N"]))
    x0 = draw["M"] + draw["gap"]
    B = AxisBox.of((x0, x0 + draw["w2"]), (draw["dy"], draw["dy"] + draw["h2"]))
    checks.append(
        compare(
            "box_box_energy",
            {key: draw[key] for key in ("M", "N", "gap", "dy", "w2", "h2")},
            box_box_energy(A, B, s, tol).value,
            mc_energy(A, B, s, cfg),
        )
    )

    if s < 0.5:
        q1, q2 = draw["q1"], draw["q1"] + draw["q_width"]
        checks.append(
            compare(
                "box_strip_energy",
                {"q1": q1, "q2": q2, "M": draw["M"], "N": draw["N"]},
                box_strip_energy(q1, q2, draw["M"], draw["N"], s).value,
                box_strip_oracle(q1, q2, draw["M"], draw["N"], s),
            )
        )
        checks.append(
            compare(
                "rect_perimeter_s",
                {"w": draw["M"], "h": draw["N"]},
                rect_perimeter_s(draw["M"], draw["N"], s, tol).value,
                mc_perimeter(s, cfg, width=draw["M"], height=draw["N"]),
            )
        )
    return checks


@traced("oracle.verify_kernels")
def verify_kernels(
    s: SLike,
    cases: int = 20,
    mc: McConfig | None = None,
    tol: QuadratureSettings | None = None,
    threads: int = 1,
) -> KernelReport:
    """
    Check every closed-form kernel against its oracles on `cases` random parameter sets.

    The fractional ball perimeter is checked once, against the chord formula
    and the random-chord estimate.
    """
    sv = FracOrder.of(s).s
    mc = mc or McConfig()
    tol = tol or QuadratureSettings()
    draws = _draw_cases(mc.seed, cases)
    per_case = ordered_map(
        lambda item: _run_case(item[0], item[1], sv, mc, tol), list(enumerate(draws)), threads
    )
    checks = [check for group in per_case for check in group]

    if sv < 0.5:
        ball = ball_perimeter_s(sv, 1.0, tol).value
        checks.append(compare("ball_perimeter_s", {"R": 1.0}, ball, ball_perimeter_chord(sv)))
        ball_cfg = mc.model_copy(update={"seed": mc.seed + cases})
        chords = mc_perimeter(sv, ball_cfg, radius=1.0)
        checks.append(compare("ball_perimeter_s", {"R": 1.0}, ball, chords))

    report = KernelReport(s=sv, seed=mc.seed, cases=cases, checks=tuple(checks))
    logger.info(
        f"Kernel verification at s = {sv}: {len(report.checks) - len(report.failures)}"
        f"/{len(report.checks)} checks passed"
    )
    return report


def summarize(report: KernelReport) -> dict[str, Any]:
    """Pass counts and worst relative error per kernel."""
    summary: dict[str, Any] = {}
    for check in report.checks:
        entry = summary.setdefault(check.name, {"checks": 0, "passed": 0, "worst_rel_error": 0.0})
        entry["checks"] += 1
        entry["passed"] += int(check.passed)
        entry["worst_rel_error"] = max(entry["worst_rel_error"], check.rel_error)
    return summary
