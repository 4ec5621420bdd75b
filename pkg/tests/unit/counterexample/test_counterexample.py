"""
TEST DOC: Strip-Family Counterexample

WHAT: Tests for p_zero_index, build_domain, psi_indicator, the analytic bound
      terms and the quotient sequence.
WHY: This is the headline experiment: quotients of admissible indicators that
     tend to zero on a connected domain.
HOW: Check the construction against hand-computed offsets, verify that every
     test function is admissible, and run small quotient tables. The full
     reference table is marked slow.

CASES:
- P0 for s = 0.25, 0.4 and 0.05
- a_1 = 2, a_2 = 3.125, a_3 = 4.162037 for beta = 3
- psi_{k,k0} has k + 1 boxes of height ceil(k^A) inside the domain
- Step-4 terms by hand for k = 2
- Quotient rows are positive ratios; the table is thread-count independent
- Reference parameters: decay, slope window, finite k = 32 and 64 rows (slow)

EDGE CASES:
- p_zero_index outside s < 1/2
- k = 0 and k_max = 0
- A box crossing a gap is not admissible
"""

import math

import pytest

from fracpoincare.config import QuadratureSettings
from fracpoincare.counterexample import (
    build_domain,
    gap_energy_split,
    p_zero_index,
    psi_indicator,
    quotient_sequence,
    step4_terms,
    step4_upper_bound,
    support_in_domain,
)
from fracpoincare.errors import InvalidArgumentError, OutOfRegimeError
from fracpoincare.geometry import extended_inscribed_radius
from fracpoincare.models import AxisBox, CexParams, IndicatorFunction

PARAMS = CexParams(s=0.25, beta=3.0, A=3.0, k_list=(2, 3))


class TestPZeroIndex:
    """Tests for the integer P0 with 1/(P0+1) < 2s <= 1/P0."""

    @pytest.mark.parametrize("s,expected", [(0.25, 2), (0.4, 1), (0.05, 10), (0.2, 2)])
    def test_values(self, s, expected):
        """Known values of P0."""
        assert p_zero_index(s) == expected

    def test_regime(self):
        """P0 is defined for s < 1/2 only."""
        with pytest.raises(OutOfRegimeError):
            p_zero_index(0.5)


class TestConstruction:
    """Tests for the domain and the test functions."""

    def test_offsets_metadata(self):
        """The strip offsets follow the gap recurrence."""
        domain = build_domain(PARAMS, 3)
        a_k = domain.metadata["a_k"]
        assert a_k["0"] == 0.0
        assert a_k["1"] == 2.0
        assert a_k["2"] == pytest.approx(3.125)
        assert a_k["3"] == pytest.approx(4.162037, abs=1e-6)
        assert domain.s == 0.25

    def test_strip_widths(self):
        """Every strip has width one and the cross strip is finite in y."""
        domain = build_domain(PARAMS, 4)
        strips = [box for box in domain.boxes if math.isinf(box.bounds[1][0])]
        assert len(strips) == 9
        assert all(box.sides[0] == pytest.approx(1.0) for box in strips)

    def test_k_max_positive(self):
        """The truncation needs at least one strip on each side."""
        with pytest.raises(InvalidArgumentError):
            build_domain(PARAMS, 0)

    def test_psi(self):
        """psi_{2,8} is three boxes of height 8."""
        psi = psi_indicator(PARAMS, 2)
        assert len(psi.boxes) == 3
        assert all(box.bounds[1] == (0.0, 8.0) for box in psi.boxes)
        assert psi.area == 24.0

    def test_psi_admissible(self):
        """Every test function lies inside the truncated domain."""
        for k in (1, 2, 5):
            assert support_in_domain(psi_indicator(PARAMS, k), build_domain(PARAMS, k))

    def test_gap_crossing_not_admissible(self):
        """A box reaching into the gap S_1 = (1, 2) x R is not inside the domain."""
        box = IndicatorFunction.of_boxes([AxisBox.of((0.5, 1.5), (0.0, 1.0))])
        assert not support_in_domain(box, build_domain(PARAMS, 2))

    def test_psi_needs_positive_k(self):
        """k = 0 has no test function."""
        with pytest.raises(InvalidArgumentError):
            psi_indicator(PARAMS, 0)


class TestAnalyticBound:
    """Tests for the Step-4 bound terms."""

    def test_terms_by_hand(self):
        """k = 2: gaps (0, 1, 1/8), P0 = 2, k0 = 8."""
        first, second, third, fourth = step4_terms(PARAMS, 2)
        assert first == pytest.approx(2.0**-0.5)
        assert second == pytest.approx(2.0 * 8.0**-0.5)
        assert third == pytest.approx((1.0 + math.sqrt(0.125)) / 2.0)
        assert fourth == pytest.approx(0.5)
        assert step4_upper_bound(PARAMS, 2) == pytest.approx(first + second + third + fourth)

    def test_gap_split_nonnegative(self):
        """The gap energy split has nonnegative parts, J3 included."""
        j1, j2, j3 = gap_energy_split(PARAMS, 2, tail=8)
        assert j1 > 0.0
        assert j2 >= 0.0
        assert j3 > 0.0


class TestQuotientSequence:
    """Tests for the quotient table."""

    def test_rows(self):
        """Rows carry k, k0 = k^3 and quotient = seminorm / area."""
        table = quotient_sequence(PARAMS)
        assert [row.k for row in table.rows] == [2, 3]
        assert [row.k0 for row in table.rows] == [8, 27]
        for row in table.rows:
            assert row.quotient > 0.0
            assert row.area == (row.k + 1) * row.k0
            assert row.quotient == pytest.approx(row.seminorm / row.area)
        assert table.tolerances["epsrel"] == 1e-6

    def test_threads(self):
        """Threads do not change the table."""
        tol = QuadratureSettings(epsrel=1e-6)
        params = CexParams(s=0.25, k_list=(2,))
        assert quotient_sequence(params, tol, threads=1) == quotient_sequence(
            params, tol, threads=2
        )

    def test_diagnostics(self):
        """Diagnostics record the gap split per k."""
        table = quotient_sequence(CexParams(s=0.25, k_list=(2,)), diagnostics=True)
        assert set(table.diagnostics[2]) == {"j1", "j2", "j3", "perimeters", "cross_terms"}


@pytest.mark.slow
class TestReferenceTable:
    """The reference experiment at s = 0.25, beta = 3, A = 3."""

    def test_decay(self):
        """Quotients decay, with log-log slope in [-0.8, -0.2]."""
        table = quotient_sequence(CexParams(s=0.25, beta=3.0, A=3.0, k_list=(8, 16, 32, 64)))
        quotients = [row.quotient for row in table.rows]
        assert quotients[2] < quotients[1]
        assert quotients[3] < quotients[2]
        assert quotients[3] <= 0.5 * quotients[0]
        assert -0.8 <= table.log_slope() <= -0.2
        c_fit, _ = table.fitted_constant()
        assert c_fit > 0.0

    @pytest.mark.parametrize("k", [32, 64])
    def test_large_k_rows(self, k):
        """Rows with tall boxes have finite positive quotients below the k = 8 row."""
        params = CexParams(s=0.25, beta=3.0, A=3.0, k_list=(8, k))
        first, row = quotient_sequence(params).rows
        assert row.k0 == math.ceil(k**3.0)
        assert math.isfinite(row.seminorm)
        assert 0.0 < row.quotient < first.quotient

    def test_extended_radius_bounded(self):
        """The truncated domain has no large extended inscribed ball."""
        domain = build_domain(CexParams(s=0.25), 8)
        estimate = extended_inscribed_radius(domain, AxisBox.of((-4.0, 4.0), (-4.0, 4.0)))
        assert estimate.radius <= 2.0
