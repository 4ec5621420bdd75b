"""
TEST DOC: Positivity Conditions

WHAT: Tests for the complement-density check, the interval and LS(s) lower
      bounds, the ball upper bounds and the reference-constants cache.
WHY: These are the decision procedures the check command reports; a Holds
     verdict must carry a correct bound and a Fails verdict a real witness.
HOW: Use domains whose answers are obvious by hand (squares, strips,
     half-lines) and pass explicit constants so no ladder runs.

CASES:
- Density holds on the unit square and strip; it is inconclusive on the whole plane
- Interval bounds: M^(-2s) scaling with the longest piece
- LS(s) holds across parallel strips and fails along them
- Ball bounds use the exact inscribed radius of a single box
- The constants cache round-trips through its file and honors recipe hashes

EDGE CASES:
- Non-planar domains, infinite windows, nonpositive radii
- Windows missing the domain
- s on the wrong side of 1/2 for each bound
- Corrupt constants caches
"""

import math

import numpy as np
import pytest

from fracpoincare.conditions import (
    BallMode,
    ConstantEntry,
    ReferenceConstants,
    arc_directions,
    check_complement_density,
    check_ls,
    complement_area_map,
    extended_ball_bound,
    interval_union_lower_bound,
    necessary_upper_bound,
    plain_ball_bound,
    unit_interval_constant,
)
from fracpoincare.conditions.constants import BUMP_RECIPE, recipe_hash
from fracpoincare.config import EigenSettings
from fracpoincare.eigensolver import as_interval_union
from fracpoincare.errors import DomainError, InvalidArgumentError, OutOfRegimeError, UsageError
from fracpoincare.gallery import load_gallery, suggested_window
from fracpoincare.geometry import generate, load_domain
from fracpoincare.kernels import ball_perimeter_s
from fracpoincare.models import AxisBox, BoxUnionDomain, GeneratorSpec, IntervalUnion, Verdict

UNIT_WINDOW = AxisBox.of((0.0, 1.0), (0.0, 1.0))
STRIPS_WINDOW = AxisBox.of((-3.0, 3.0), (-1.0, 1.0))


@pytest.fixture
def strips() -> BoxUnionDomain:
    """Three unit strips with unit gaps: (-2.5, -1.5), (-0.5, 0.5), (1.5, 2.5) times R."""
    return generate(GeneratorSpec(type="parallel_strips", count=3, width=1.0, gap=1.0))


class TestComplementDensity:
    """Tests for |complement ∩ B(x, R)| > c."""

    def test_area_map(self, unit_square):
        """Pixels inside the square hold no complement; pixels outside are full."""
        edges = np.array([0.0, 0.5, 1.0, 1.5])
        areas = complement_area_map(unit_square, edges, edges)
        assert np.allclose(areas[:2, :2], 0.0)
        assert areas[2, 2] == pytest.approx(0.25)
        assert areas[0, 2] == pytest.approx(0.25)

    def test_unit_square_holds(self, unit_square):
        """Every disc of radius 1 around the square sees at least pi - 1 of complement."""
        report = check_complement_density(unit_square, 1.0, UNIT_WINDOW, 0.25, grid=16)
        assert report.verdict is Verdict.HOLDS
        assert report.bound_kind == "lower"
        witness = report.witness
        assert witness["c_min"] >= math.pi - 1.0 - witness["tolerance"]
        assert report.bound == pytest.approx(witness["c_min"])

    def test_strip_holds(self):
        """The strip's suggested window and radius certify the condition."""
        domain = load_gallery("strip")
        window = suggested_window(domain)
        report = check_complement_density(domain, domain.metadata["R"], window, 0.25, grid=64)
        assert report.verdict is Verdict.HOLDS

    def test_whole_plane_inconclusive(self):
        """No complement, no certificate."""
        plane = AxisBox.of((-math.inf, math.inf), (-math.inf, math.inf))
        domain = BoxUnionDomain(dim=2, boxes=(plane,))
        report = check_complement_density(domain, 1.0, UNIT_WINDOW, 0.25, grid=8)
        assert report.verdict is Verdict.INCONCLUSIVE
        assert report.witness["c_min"] == 0.0
        assert report.bound is None

    def test_window_outside(self, unit_square):
        """A window with no pixel center in the domain is a domain error."""
        with pytest.raises(DomainError):
            check_complement_density(unit_square, 1.0, AxisBox.of((5.0, 6.0), (5.0, 6.0)), 0.25)

    def test_arguments(self, unit_square, two_intervals):
        """Planar domains, finite windows and positive radii only."""
        with pytest.raises(InvalidArgumentError, match="planar"):
            check_complement_density(two_intervals, 1.0, UNIT_WINDOW, 0.25)
        with pytest.raises(InvalidArgumentError, match="finite"):
            check_complement_density(
                unit_square, 1.0, AxisBox.of((0.0, math.inf), (0.0, 1.0)), 0.25
            )
        with pytest.raises(InvalidArgumentError):
            check_complement_density(unit_square, 0.0, UNIT_WINDOW, 0.25)


class TestIntervalBounds:
    """Tests for unions of intervals on the line."""

    def test_half_line_fails(self, fixtures_dir):
        """An unbounded piece fails before any constant is needed."""
        u = as_interval_union(load_domain(fixtures_dir / "half_line.json"))
        report = interval_union_lower_bound(u, 0.75)
        assert report.verdict is Verdict.FAILS
        assert report.witness["interval"] == ["0.0", "inf"]

    def test_longest_piece(self):
        """The bound is p1_unit * M^(-2s) with M the longest interval."""
        u = IntervalUnion(intervals=((0.0, 1.0), (2.0, 4.0)))
        report = interval_union_lower_bound(u, 0.75, p1_unit=1.0)
        assert report.verdict is Verdict.HOLDS
        assert report.witness["M"] == 2.0
        assert report.bound == pytest.approx(2.0**-1.5)

    def test_regime(self):
        """The interval bound needs s > 1/2."""
        with pytest.raises(OutOfRegimeError):
            interval_union_lower_bound(IntervalUnion(intervals=((0.0, 1.0),)), 0.25, p1_unit=1.0)

    def test_bad_constant(self):
        """p1_unit must be positive."""
        with pytest.raises(InvalidArgumentError, match="p1_unit"):
            interval_union_lower_bound(IntervalUnion(intervals=((0.0, 1.0),)), 0.75, p1_unit=0.0)


class TestLineSlices:
    """Tests for arc_directions and check_ls."""

    def test_arc_weights(self):
        """Trapezoid weights sum to the arc length; directions are unit vectors."""
        directions, weights = arc_directions(0.0, math.pi, 5)
        assert weights.sum() == pytest.approx(math.pi)
        assert np.allclose(np.linalg.norm(directions, axis=1), 1.0)
        single, single_weight = arc_directions(0.2, 0.4, 1)
        assert single_weight.tolist() == pytest.approx([0.2])
        assert single[0].tolist() == pytest.approx([math.cos(0.3), math.sin(0.3)])

    def test_arc_arguments(self):
        """An arc needs a direction and a nonnegative length."""
        with pytest.raises(InvalidArgumentError):
            arc_directions(0.0, 1.0, 0)
        with pytest.raises(InvalidArgumentError, match="precedes"):
            arc_directions(1.0, 0.0, 3)

    def test_holds_across_strips(self, strips):
        """Lines tilted by at most 0.3 cross every strip in at most 1/cos(0.3)."""
        directions, weights = arc_directions(-0.3, 0.3, 5)
        report = check_ls(
            strips, directions, weights, 0.75, line_samples=16, window=STRIPS_WINDOW, p1_unit=1.0
        )
        assert report.verdict is Verdict.HOLDS
        longest = report.witness["M"]
        assert longest == pytest.approx(1.0 / math.cos(0.3), rel=1e-9)
        assert report.bound == pytest.approx(0.5 * 0.6 * longest**-1.5)

    def test_fails_along_strips(self, strips):
        """A vertical line inside a strip is an unbounded slice."""
        report = check_ls(
            strips,
            np.array([[0.0, 1.0]]),
            np.array([0.1]),
            0.75,
            line_samples=16,
            window=STRIPS_WINDOW,
            p1_unit=1.0,
        )
        assert report.verdict is Verdict.FAILS
        assert "inf" in report.witness["interval"][1]

    def test_threads(self, strips):
        """The report does not depend on the thread count."""
        directions, weights = arc_directions(-0.2, 0.2, 4)
        kwargs = {"line_samples": 8, "window": STRIPS_WINDOW, "p1_unit": 1.0}
        single = check_ls(strips, directions, weights, 0.75, threads=1, **kwargs)
        multi = check_ls(strips, directions, weights, 0.75, threads=3, **kwargs)
        assert single == multi

    def test_arguments(self, strips):
        """Regime, weights and window are validated."""
        directions, weights = arc_directions(-0.3, 0.3, 3)
        with pytest.raises(OutOfRegimeError):
            check_ls(strips, directions, weights, 0.25, window=STRIPS_WINDOW, p1_unit=1.0)
        with pytest.raises(InvalidArgumentError, match="weight"):
            check_ls(strips, directions, weights[:2], 0.75, window=STRIPS_WINDOW, p1_unit=1.0)
        with pytest.raises(InvalidArgumentError, match="positive length"):
            check_ls(strips, directions, 0.0 * weights, 0.75, window=STRIPS_WINDOW, p1_unit=1.0)
        with pytest.raises(InvalidArgumentError, match="finite window"):
            check_ls(strips, directions, weights, 0.75, p1_unit=1.0)


class TestBallBounds:
    """Tests for the necessary-condition upper bounds."""

    def test_formulas(self):
        """lambda_ref R^(-2s) and (2 P_s(B_1) / pi) R^(-2s)."""
        assert plain_ball_bound(4.0, 0.25, 3.0) == pytest.approx(1.5)
        assert extended_ball_bound(4.0, 0.25, math.pi) == pytest.approx(1.0)

    def test_plain_unit_square(self, unit_square):
        """The inscribed disc of the unit square has radius 1/2."""
        report = necessary_upper_bound(
            unit_square, BallMode.PLAIN, UNIT_WINDOW, 0.25, lambda_ref=10.0
        )
        assert report.verdict is Verdict.INCONCLUSIVE
        assert report.bound_kind == "upper"
        assert report.witness["R"] == pytest.approx(0.5)
        assert report.bound == pytest.approx(10.0 * math.sqrt(2.0))

    def test_extended_unit_square(self, unit_square):
        """Extended balls use the fractional perimeter of the unit disc."""
        report = necessary_upper_bound(unit_square, "extended", UNIT_WINDOW, 0.25)
        perimeter = ball_perimeter_s(0.25).value
        assert report.condition == "extended_ball"
        assert report.bound == pytest.approx(2.0 * perimeter / math.pi * 0.5**-0.5, rel=1e-9)

    def test_extended_regime(self, unit_square):
        """Extended balls need s < 1/2."""
        with pytest.raises(OutOfRegimeError):
            necessary_upper_bound(unit_square, BallMode.EXTENDED, UNIT_WINDOW, 0.5)

    def test_planar_only(self, two_intervals):
        """Ball bounds are planar."""
        with pytest.raises(InvalidArgumentError, match="planar"):
            necessary_upper_bound(
                two_intervals, BallMode.PLAIN, AxisBox.of((0.0, 1.0)), 0.25, lambda_ref=1.0
            )


class TestReferenceConstants:
    """Tests for the constants cache."""

    def test_recipe_hash(self):
        """Hashes are short and stable."""
        assert recipe_hash("abc") == recipe_hash("abc")
        assert len(recipe_hash("abc")) == 16
        assert recipe_hash("abc") != recipe_hash("abd")

    def test_cached_entry_used(self, settings):
        """A matching entry is returned without recomputation."""
        constants = ReferenceConstants(settings)
        constants.data.lambda_ref["0.2500"] = ConstantEntry(
            value=1.25, recipe_hash=recipe_hash(BUMP_RECIPE)
        )
        assert constants.lambda_ref(0.25) == 1.25
        assert not constants.dirty

    def test_round_trip(self, settings):
        """Saved entries are read back from the user cache."""
        constants = ReferenceConstants(settings)
        constants.data.p1_unit["0.7500"] = ConstantEntry(value=3.5, recipe_hash="x" * 16)
        path = constants.save()
        assert path == settings.data_dir / "constants.json"
        reloaded = ReferenceConstants(settings)
        assert reloaded.data.p1_unit["0.7500"].value == 3.5

    def test_stale_entry_recomputed(self, settings):
        """An entry with an outdated recipe hash is recomputed."""
        constants = ReferenceConstants(settings)
        constants.data.lambda_ref["0.2500"] = ConstantEntry(value=-1.0, recipe_hash="stale")
        value = constants.lambda_ref(0.25)
        assert value > 0.0
        assert constants.dirty

    def test_corrupt_cache(self, settings):
        """An unreadable cache is a usage error."""
        settings.data_dir.mkdir(parents=True, exist_ok=True)
        (settings.data_dir / "constants.json").write_text("{not json")
        with pytest.raises(UsageError, match="constants cache"):
            ReferenceConstants(settings)

    def test_unit_interval_constant(self):
        """p1_unit comes from the regional P1 ladder for s > 1/2."""
        value, _ = unit_interval_constant(0.75, EigenSettings(ladder=(8, 16, 32)))
        assert value > 0.0
        with pytest.raises(OutOfRegimeError):
            unit_interval_constant(0.25)
