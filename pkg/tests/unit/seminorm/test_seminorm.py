"""
TEST DOC: Indicator Seminorms

WHAT: Tests for indicator_seminorm, the Loss-Sloane decomposition and the
      reflection comparison for parallel strips.
WHY: The counterexample quotients are ratios of indicator seminorms; the two
     independent evaluations must agree and respect the symmetries of [f]^2.
HOW: Evaluate simple supports, compare decompositions, and check scaling,
     rotation and splitting invariance.

CASES:
- One interval: [1_I]^2 = 2 L^(1-2s) / (s(1-2s))
- Two intervals: perimeters minus twice the cross energy
- Splitting a box into touching halves leaves [f]^2 unchanged
- [1_(lambda Q)]^2 = lambda^(2-2s) [1_Q]^2 and 90-degree rotations are free
- Power-of-two dilations of a box union scale to 1e-12
- Loss-Sloane agrees with the decomposition (slow, reference resolution)
- Reflection: the cross-strip energy never exceeds the same-strip energy

EDGE CASES:
- s >= 1/2 diverges for both evaluations
- Odd angle counts and nonpositive spacings are rejected
- Overlapping or infinite patterns in the reflection comparison
"""

import math

import pytest

from fracpoincare.errors import DivergentEnergyError, InvalidArgumentError, OutOfRegimeError
from fracpoincare.kernels import box_box_energy, interval_interval_energy, rect_perimeter_s
from fracpoincare.models import AxisBox, IndicatorFunction
from fracpoincare.seminorm import (
    indicator_seminorm,
    loss_sloane_energy,
    pair_energy_bound,
    pattern_complement,
    rayleigh_quotient,
    reflection_comparison,
)

S = 0.25
TWO_INTERVALS = IndicatorFunction.of_boxes([AxisBox.of((0.0, 1.0)), AxisBox.of((2.0, 3.0))])
TWO_SQUARES = IndicatorFunction.of_boxes(
    [AxisBox.of((0.0, 1.0), (0.0, 1.0)), AxisBox.of((2.0, 3.0), (0.0, 1.0))]
)


class TestIndicatorSeminorm:
    """Tests for the perimeter / cross-term decomposition."""

    def test_single_interval(self):
        """The unit interval at s = 1/4 has [f]^2 = 16."""
        f = IndicatorFunction.of_boxes([AxisBox.of((0.0, 1.0))])
        result = indicator_seminorm(f, S)
        assert result.total == pytest.approx(16.0)
        assert result.cross_terms == 0.0
        assert result.quotient == pytest.approx(16.0)

    def test_two_intervals(self):
        """Two intervals: 2 * (16 - 2 E)."""
        energy = interval_interval_energy((0.0, 1.0), (2.0, 3.0), S).value
        result = indicator_seminorm(TWO_INTERVALS, S)
        assert result.total == pytest.approx(2.0 * (16.0 - 2.0 * energy))
        assert result.area == 2.0

    def test_unit_square(self, unit_indicator):
        """A single box is twice its perimeter."""
        result = indicator_seminorm(unit_indicator, S)
        assert result.total == pytest.approx(2.0 * rect_perimeter_s(1.0, 1.0, S).value)
        assert rayleigh_quotient(unit_indicator, S) == pytest.approx(result.total)

    def test_split_invariant(self, unit_indicator):
        """Two touching halves give the same seminorm as the square."""
        halves = IndicatorFunction.of_boxes(
            [AxisBox.of((0.0, 0.5), (0.0, 1.0)), AxisBox.of((0.5, 1.0), (0.0, 1.0))]
        )
        whole = indicator_seminorm(unit_indicator, S).total
        assert indicator_seminorm(halves, S).total == pytest.approx(whole, rel=1e-6)

    def test_scaling(self, unit_indicator):
        """Doubling the support multiplies [f]^2 by 2^(2-2s)."""
        small = indicator_seminorm(unit_indicator, S).total
        large = indicator_seminorm(unit_indicator.scaled(2.0), S).total
        assert large == pytest.approx(2.0**1.5 * small, rel=1e-6)

    @pytest.mark.parametrize("factor", [1.0, 2.0, 4.0, 8.0])
    def test_box_union_scaling_exact(self, factor):
        """Power-of-two dilations of a box union scale [f]^2 to rounding error."""
        f = IndicatorFunction.of_boxes(
            [
                AxisBox.of((0.0, 2.0), (0.0, 1.0)),
                AxisBox.of((2.0, 3.0), (0.5, 2.5)),
                AxisBox.of((4.0, 5.0), (0.0, 1.0)),
            ]
        )
        base = indicator_seminorm(f, S).total
        scaled = indicator_seminorm(f.scaled(factor), S).total
        assert scaled == pytest.approx(factor ** (2.0 - 2.0 * S) * base, rel=1e-12)

    def test_rotation(self):
        """Rotating by 90 degrees leaves the seminorm unchanged."""
        f = IndicatorFunction.of_boxes(
            [AxisBox.of((0.0, 2.0), (0.0, 1.0)), AxisBox.of((3.0, 4.0), (0.5, 2.5))]
        )
        assert indicator_seminorm(f.rotated90(), S).total == pytest.approx(
            indicator_seminorm(f, S).total, rel=1e-6
        )

    def test_thread_count_irrelevant(self):
        """The result does not depend on the thread count."""
        single = indicator_seminorm(TWO_SQUARES, S, threads=1)
        multi = indicator_seminorm(TWO_SQUARES, S, threads=3)
        assert single == multi

    def test_divergent(self, unit_indicator):
        """Indicators are not in H^s for s >= 1/2."""
        with pytest.raises(DivergentEnergyError):
            indicator_seminorm(unit_indicator, 0.5)

    def test_pair_bound(self):
        """The skip bound dominates the actual pair energy."""
        a, b = TWO_SQUARES.boxes
        assert pair_energy_bound(a, b, S) >= box_box_energy(a, b, S).value


class TestLossSloane:
    """Tests for the directional decomposition."""

    def test_one_dimensional(self):
        """On the line the decomposition is the closed form itself."""
        result = loss_sloane_energy(TWO_INTERVALS, S)
        assert result.value == pytest.approx(indicator_seminorm(TWO_INTERVALS, S).total)

    def test_odd_angles(self, unit_indicator):
        """The angle rule needs an even count."""
        with pytest.raises(InvalidArgumentError, match="even"):
            loss_sloane_energy(unit_indicator, S, angles=7)

    def test_spacing(self, unit_indicator):
        """Line spacing must be positive."""
        with pytest.raises(InvalidArgumentError, match="line_spacing"):
            loss_sloane_energy(unit_indicator, S, line_spacing=0.0)

    def test_divergent(self, unit_indicator):
        """s >= 1/2 is rejected."""
        with pytest.raises(DivergentEnergyError):
            loss_sloane_energy(unit_indicator, 0.6)

    @pytest.mark.slow
    @pytest.mark.parametrize("name", ["unit_square", "two_squares"])
    def test_matches_decomposition(self, name, unit_indicator):
        """At 512 angles and spacing 1/256 the two evaluations agree to 1e-3."""
        f = unit_indicator if name == "unit_square" else TWO_SQUARES
        directional = loss_sloane_energy(f, S, angles=512, line_spacing=1.0 / 256.0)
        reference = indicator_seminorm(f, S).total
        assert directional.value == pytest.approx(reference, rel=1e-3)


class TestReflection:
    """Tests for the strip reflection comparison."""

    def test_pattern_complement(self):
        """Gaps between and around the pattern."""
        assert pattern_complement([(0.0, 1.0), (2.0, 3.0)]) == [
            (-math.inf, 0.0),
            (1.0, 2.0),
            (3.0, math.inf),
        ]

    @pytest.mark.parametrize(
        "gap,k0,pattern",
        [
            (0.5, 2.0, ((0.0, 1.0),)),
            (0.1, 1.0, ((0.0, 0.5),)),
            (1.0, 3.0, ((0.0, 0.25), (0.5, 1.0))),
        ],
    )
    def test_cross_below_same(self, gap, k0, pattern):
        """Reflecting C_m onto C_j brings no pair closer, so cross <= same."""
        cross, same = reflection_comparison(gap, k0, S, pattern)
        assert 0.0 < cross <= same

    def test_regime(self):
        """The comparison needs s < 1/2."""
        with pytest.raises(OutOfRegimeError):
            reflection_comparison(0.5, 1.0, 0.5)

    def test_bad_scale(self):
        """k0 must be positive."""
        with pytest.raises(InvalidArgumentError):
            reflection_comparison(0.5, 0.0, S)

    def test_overlapping_pattern(self):
        """Pattern intervals must be disjoint."""
        with pytest.raises(InvalidArgumentError, match="disjoint"):
            reflection_comparison(0.5, 1.0, S, ((0.0, 0.6), (0.5, 1.0)))
