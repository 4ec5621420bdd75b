"""
TEST DOC: Closed-Form Energies

WHAT: Tests for the angular constant, strip and box-strip energies, and the
      one-dimensional interval energies.
WHY: These formulas are the reference values the oracle verifies against and
     the building blocks of every quotient and seminorm.
HOW: Compare with independent scipy quadratures and hand-computed values.

CASES:
- C(1/2) = 2 and C(s) matches the gamma-function form
- The box-strip energy equals the integrated strip profile
- Interval-interval energies match a direct double integral
- An interval against its complement: L^(1-2s) / (s(1-2s))

EDGE CASES:
- a = 0 in the strip integral is singular
- Touching intervals diverge for s >= 1/2; two half-lines for s <= 1/2
- Box-strip formulas refuse s >= 1/2
"""

import math

import pytest
from scipy import integrate, special

from fracpoincare.errors import (
    DivergentEnergyError,
    InvalidArgumentError,
    OutOfRegimeError,
    SingularArgumentError,
)
from fracpoincare.kernels import (
    angular_constant,
    box_strip_between,
    box_strip_energy,
    interval_complement_energy,
    interval_interval_energy,
    kernel_line_mass,
    power_inequality_holds,
    vertical_strip_integral,
)


def _cos_power_integral(p: float) -> float:
    return math.sqrt(math.pi) * special.gamma(0.5 * (p + 1.0)) / special.gamma(0.5 * p + 1.0)


class TestAngularConstant:
    """Tests for C(s) and the line mass."""

    def test_half(self):
        """C(1/2) = 2 and the line mass of (1 + u^2)^(-3/2) is 2."""
        assert angular_constant(0.5) == pytest.approx(2.0, rel=1e-10)
        assert kernel_line_mass(0.5) == pytest.approx(2.0, rel=1e-10)

    @pytest.mark.parametrize("s", [0.1, 0.25, 0.75, 0.9])
    def test_gamma_form(self, s):
        """C(s) agrees with the beta-function value of the cosine integral."""
        expected = _cos_power_integral(2.0 * s) / (2.0 * s)
        assert angular_constant(s) == pytest.approx(expected, rel=1e-8)


class TestStripEnergies:
    """Tests for strip and box-strip energies."""

    def test_vertical_strip_half_plane(self):
        """A half-plane at distance 1 carries mass C(s)."""
        result = vertical_strip_integral(1.0, math.inf, 0.25)
        assert result.value == pytest.approx(angular_constant(0.25))
        assert result.method == "closed_form"

    def test_vertical_strip_singular(self):
        """The profile blows up at the strip edge."""
        with pytest.raises(SingularArgumentError):
            vertical_strip_integral(0.0, 1.0, 0.25)

    def test_vertical_strip_order(self):
        """The near edge must be nearer."""
        with pytest.raises(InvalidArgumentError):
            vertical_strip_integral(2.0, 1.0, 0.25)

    def test_box_strip_value(self):
        """Unit box against the unit strip one unit away."""
        assert box_strip_energy(1.0, 2.0, 1.0, 1.0, 0.25).value == pytest.approx(
            0.92378, rel=1e-4
        )

    @pytest.mark.parametrize("q1,q2,M,N", [(0.0, 1.0, 1.0, 2.0), (0.5, math.inf, 2.0, 1.0)])
    def test_box_strip_integrated_profile(self, q1, q2, M, N):
        """The closed form equals N times the strip profile integrated over the box."""
        s = 0.25
        C = angular_constant(s)

        def profile(x: float) -> float:
            far = 0.0 if math.isinf(q2) else (q2 + M - x) ** (-2 * s)
            return C * ((q1 + M - x) ** (-2 * s) - far)

        expected, _ = integrate.quad(profile, 0.0, M, epsabs=0.0, epsrel=1e-11)
        assert box_strip_energy(q1, q2, M, N, s).value == pytest.approx(N * expected, rel=1e-6)

    def test_box_strip_empty(self):
        """An empty strip has zero energy."""
        assert box_strip_energy(1.0, 1.0, 1.0, 1.0, 0.25).value == 0.0

    def test_box_strip_regime(self):
        """The strip formula needs s < 1/2."""
        with pytest.raises(OutOfRegimeError):
            box_strip_energy(1.0, 2.0, 1.0, 1.0, 0.5)

    def test_box_strip_between_sides(self):
        """Strips left and right at mirrored distances have equal energies."""
        right = box_strip_between((0.0, 1.0), 1.0, (2.0, 3.0), 0.25)
        left = box_strip_between((0.0, 1.0), 1.0, (-2.0, -1.0), 0.25)
        assert right == pytest.approx(left)
        with pytest.raises(InvalidArgumentError):
            box_strip_between((0.0, 1.0), 1.0, (0.5, 2.0), 0.25)


class TestIntervalEnergies:
    """Tests for one-dimensional energies."""

    def test_against_double_integral(self):
        """(0,1) against (2,3) matches a direct double integral."""
        s = 0.25
        expected, _ = integrate.dblquad(
            lambda y, x: abs(x - y) ** (-1.0 - 2.0 * s), 0.0, 1.0, 2.0, 3.0, epsrel=1e-10
        )
        result = interval_interval_energy((0.0, 1.0), (2.0, 3.0), s)
        assert result.value == pytest.approx(expected, rel=1e-7)
        assert result.value == pytest.approx(4.0 * (2.0 * math.sqrt(2.0) - 1.0 - math.sqrt(3.0)))

    def test_order_independent(self):
        """Swapping the intervals does not change the energy."""
        first = interval_interval_energy((0.0, 1.0), (2.0, 5.0), 0.6).value
        second = interval_interval_energy((2.0, 5.0), (0.0, 1.0), 0.6).value
        assert first == pytest.approx(second)

    def test_half_lines(self):
        """(-inf, 0) against (1, inf) is 1/(2s(2s-1)) = 4/3 at s = 3/4."""
        result = interval_interval_energy((-math.inf, 0.0), (1.0, math.inf), 0.75)
        assert result.value == pytest.approx(4.0 / 3.0)

    def test_half_lines_divergent(self):
        """Two half-lines diverge for s <= 1/2."""
        with pytest.raises(DivergentEnergyError):
            interval_interval_energy((-math.inf, 0.0), (1.0, math.inf), 0.25)

    def test_touching_divergent(self):
        """Touching intervals diverge for s >= 1/2."""
        with pytest.raises(DivergentEnergyError):
            interval_interval_energy((0.0, 1.0), (1.0, 2.0), 0.75)

    def test_overlap_rejected(self):
        """Overlapping intervals are not a valid pair."""
        with pytest.raises(InvalidArgumentError, match="overlap"):
            interval_interval_energy((0.0, 2.0), (1.0, 3.0), 0.25)

    def test_complement(self):
        """The unit interval against its complement at s = 1/4 is 8."""
        assert interval_complement_energy(1.0, 0.25).value == pytest.approx(8.0)
        with pytest.raises(DivergentEnergyError):
            interval_complement_energy(1.0, 0.5)


class TestPowerInequality:
    """Tests for the elementary power inequality."""

    def test_holds(self):
        """||a|^m - |b|^m| <= |a - b|^m on sample points."""
        assert power_inequality_holds(1.0, 0.0, 0.5)
        assert power_inequality_holds(-3.0, 2.0, 0.3)

    def test_exponent_range(self):
        """The inequality is stated for 0 < m < 1."""
        with pytest.raises(InvalidArgumentError):
            power_inequality_holds(1.0, 0.0, 1.0)
