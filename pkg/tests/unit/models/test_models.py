"""
TEST DOC: Core Models

WHAT: Tests for FracOrder, AxisBox, BoxUnionDomain, IntervalUnion, IndicatorFunction,
      EnergyValue, CexParams, GridSpec and the result records.
WHY: Every module trusts these models to reject malformed input, so the
     validation rules have to hold exactly.
HOW: Build valid and invalid instances and check properties and error messages.

CASES:
- Regime classification around s = 1/2
- Box JSON round trip with infinite bounds
- Whole-space boxes need the explicit flag
- Interval unions must be sorted and disjoint
- Counterexample parameters enforce their exponent conditions
- Quotient rows must be consistent

EDGE CASES:
- s exactly 1/2
- "inf"/"-inf" string bounds
- Touching intervals are allowed
"""

import math

import pytest
from pydantic import ValidationError

from fracpoincare.errors import OutOfRegimeError
from fracpoincare.models import (
    AxisBox,
    BoxUnionDomain,
    CexParams,
    ConditionReport,
    EigResult,
    EnergyMethod,
    EnergyValue,
    FracOrder,
    GridSpec,
    IndicatorFunction,
    IntervalUnion,
    QuotientRow,
    Regime,
    Verdict,
    height_for,
    log_log_slope,
    parse_bound,
    weakest_method,
)


class TestFracOrder:
    """Tests for the fractional order."""

    @pytest.mark.parametrize(
        ("s", "regime"),
        [(0.25, Regime.SUB), (0.5, Regime.CRITICAL), (0.75, Regime.SUPER)],
    )
    def test_regime(self, s, regime):
        """The regime follows the comparison with 1/2."""
        assert FracOrder.of(s).regime is regime

    @pytest.mark.parametrize("s", [0.0, 1.0, -0.1, 1.5])
    def test_out_of_range_rejected(self, s):
        """s must lie strictly inside (0, 1)."""
        with pytest.raises(ValidationError):
            FracOrder(s=s)

    def test_require_sub_at_critical(self):
        """s = 1/2 is not subcritical."""
        with pytest.raises(OutOfRegimeError, match="s < 1/2"):
            FracOrder.of(0.5).require_sub("test")

    def test_require_super(self):
        """require_super passes above 1/2 and fails below."""
        FracOrder.of(0.75).require_super("test")
        with pytest.raises(OutOfRegimeError, match="s > 1/2"):
            FracOrder.of(0.25).require_super("test")

    def test_of_passes_through(self):
        """FracOrder.of returns an existing order unchanged."""
        order = FracOrder(s=0.3)
        assert FracOrder.of(order) is order


class TestBounds:
    """Tests for JSON bound parsing."""

    def test_string_infinities(self):
        """'inf' and '-inf' parse to infinities."""
        assert parse_bound("inf") == math.inf
        assert parse_bound("-inf") == -math.inf

    def test_bad_string(self):
        """Other strings are rejected."""
        with pytest.raises(ValueError, match="Bound must be"):
            parse_bound("big")

    def test_bool_rejected(self):
        """Booleans are not numbers here."""
        with pytest.raises(ValueError):
            parse_bound(True)


class TestAxisBox:
    """Tests for open axis-aligned boxes."""

    def test_axis_keys(self):
        """The {"x": ..., "y": ...} form is accepted."""
        box = AxisBox.model_validate({"x": [0, 2], "y": [1, 4]})
        assert box.bounds == ((0.0, 2.0), (1.0, 4.0))
        assert box.sides == (2.0, 3.0)
        assert box.volume == 6.0

    def test_serialize_infinite(self):
        """Infinite bounds serialize as strings."""
        box = AxisBox.of((0.0, 1.0), (-math.inf, math.inf))
        assert box.model_dump() == {"x": [0.0, 1.0], "y": ["-inf", "inf"]}

    def test_roundtrip(self):
        """A dumped box validates back to itself."""
        box = AxisBox.of((0.0, math.inf), (-1.0, 1.0))
        assert AxisBox.model_validate(box.model_dump()) == box

    def test_reversed_bounds(self):
        """lo must be below hi."""
        with pytest.raises(ValidationError, match="lo < hi"):
            AxisBox.model_validate({"x": [1, 0]})

    def test_whole_space_needs_flag(self):
        """An everywhere-infinite box needs full_space=true."""
        with pytest.raises(ValidationError, match="full_space"):
            AxisBox.model_validate({"x": ["-inf", "inf"], "y": ["-inf", "inf"]})

    def test_of_flags_whole_space(self):
        """AxisBox.of sets the flag automatically."""
        box = AxisBox.of((-math.inf, math.inf))
        assert box.full_space
        assert not box.is_finite

    def test_overlap_is_open(self):
        """Boxes sharing only an edge do not overlap."""
        a = AxisBox.of((0.0, 1.0), (0.0, 1.0))
        b = AxisBox.of((1.0, 2.0), (0.0, 1.0))
        c = AxisBox.of((0.5, 2.0), (0.5, 2.0))
        assert not a.interiors_overlap(b)
        assert a.interiors_overlap(c)

    def test_rotated90(self):
        """Rotation maps (x, y) to (-y, x)."""
        box = AxisBox.of((0.0, 1.0), (2.0, 5.0))
        assert box.rotated90().bounds == ((-5.0, -2.0), (0.0, 1.0))


class TestBoxUnionDomain:
    """Tests for box-union domains."""

    def test_needs_boxes_or_generator(self):
        """An empty domain without a generator is rejected."""
        with pytest.raises(ValidationError, match="at least one box"):
            BoxUnionDomain(dim=2)

    def test_dimension_mismatch(self):
        """Boxes must match the domain dimension."""
        with pytest.raises(ValidationError, match="dimension"):
            BoxUnionDomain(dim=2, boxes=(AxisBox.of((0.0, 1.0)),))

    def test_bounding_box(self):
        """The bounding box covers every input box."""
        domain = BoxUnionDomain(
            dim=2,
            boxes=(AxisBox.of((0.0, 1.0), (0.0, 1.0)), AxisBox.of((2.0, 3.0), (-1.0, 0.5))),
        )
        assert domain.bounding_box().bounds == ((0.0, 3.0), (-1.0, 1.0))
        assert domain.is_bounded

    def test_unbounded(self, strip):
        """A strip is unbounded."""
        assert not strip.is_bounded
        assert not strip.bounding_box().is_finite

    def test_generator_accepts_extra_params(self):
        """Generator parameters are kept as extras."""
        domain = BoxUnionDomain.model_validate(
            {"dim": 2, "generator": {"type": "parallel_strips", "count": 3}}
        )
        assert domain.generator is not None
        assert domain.generator.params == {"count": 3}

    def test_unknown_generator(self):
        """Unknown generator families are rejected by the schema."""
        with pytest.raises(ValidationError):
            BoxUnionDomain.model_validate({"dim": 2, "generator": {"type": "spiral"}})


class TestIntervalUnion:
    """Tests for interval unions."""

    def test_properties(self):
        """Lengths, measure and the longest piece."""
        u = IntervalUnion(intervals=((0.0, 1.0), (2.0, 4.5)))
        assert u.lengths == [1.0, 2.5]
        assert u.measure == 3.5
        assert u.max_length == 2.5
        assert len(u) == 2

    def test_touching_allowed(self):
        """Intervals may share an endpoint."""
        u = IntervalUnion(intervals=((0.0, 1.0), (1.0, 2.0)))
        assert len(u) == 2

    def test_unsorted_rejected(self):
        """Overlapping or unsorted intervals are rejected."""
        with pytest.raises(ValidationError, match="sorted and disjoint"):
            IntervalUnion(intervals=((2.0, 3.0), (0.0, 1.0)))

    def test_unbounded(self):
        """Infinite endpoints make the union unbounded."""
        assert not IntervalUnion(intervals=((0.0, "inf"),)).is_bounded


class TestIndicatorFunction:
    """Tests for box-union indicators."""

    def test_area(self, unit_indicator):
        """The area is the sum of box volumes."""
        assert unit_indicator.area == 1.0
        assert unit_indicator.dim == 2

    def test_overlap_rejected(self):
        """Support boxes must be disjoint."""
        with pytest.raises(ValidationError, match="disjoint"):
            IndicatorFunction.of_boxes(
                [AxisBox.of((0.0, 2.0), (0.0, 2.0)), AxisBox.of((1.0, 3.0), (1.0, 3.0))]
            )

    def test_unbounded_rejected(self):
        """Support boxes must be finite."""
        with pytest.raises(ValidationError, match="finite"):
            IndicatorFunction.of_boxes([AxisBox.of((0.0, 1.0), (0.0, math.inf))])


class TestEnergyValue:
    """Tests for energies with provenance."""

    def test_stderr_only_for_monte_carlo(self):
        """Deterministic methods cannot carry a standard error."""
        with pytest.raises(ValidationError, match="stderr"):
            EnergyValue(value=1.0, method=EnergyMethod.CLOSED_FORM, stderr=0.1)

    def test_scaled(self):
        """Scaling multiplies value and error terms."""
        value = EnergyValue.quadrature(2.0, 0.1).scaled(3.0)
        assert value.value == 6.0
        assert value.abserr == pytest.approx(0.3)
        assert float(value) == 6.0

    def test_weakest_method(self):
        """Monte Carlo dominates quadrature, which dominates closed forms."""
        values = [EnergyValue.closed_form(1.0), EnergyValue.quadrature(1.0)]
        assert weakest_method(values) is EnergyMethod.ADAPTIVE_QUADRATURE
        assert weakest_method([]) is EnergyMethod.CLOSED_FORM


class TestCexParams:
    """Tests for counterexample parameters."""

    def test_defaults_valid(self):
        """beta = A = 3 works at s = 1/4."""
        params = CexParams(s=0.25)
        assert params.k_list == (8, 16, 32, 64)

    def test_requires_subcritical(self):
        """s must be below 1/2."""
        with pytest.raises(ValidationError, match="s < 1/2"):
            CexParams(s=0.6)

    def test_summable_gaps(self):
        """beta*(1-2s) must exceed 1."""
        with pytest.raises(ValidationError, match="summable"):
            CexParams(s=0.25, beta=2.0)

    def test_height_exponent(self):
        """2*s*A must exceed 1."""
        with pytest.raises(ValidationError, match="2\\*s\\*A"):
            CexParams(s=0.25, A=1.5)

    def test_k_ascending(self):
        """k values must increase."""
        with pytest.raises(ValidationError, match="ascending"):
            CexParams(s=0.25, k_list=(16, 8))

    def test_height_for(self):
        """k0 = ceil(k^A), exact for integral A."""
        assert height_for(8, 3) == 512
        assert height_for(2, 1.5) == 3


class TestGridSpec:
    """Tests for uniform grids."""

    def test_geometry(self):
        """Cell sizes, counts and centers."""
        grid = GridSpec(cells=(4, 8), bbox=AxisBox.of((0.0, 1.0), (0.0, 2.0)))
        assert grid.h == (0.25, 0.25)
        assert grid.n_cells == 32
        centers = grid.cell_centers()
        assert centers.shape == (32, 2)
        assert centers[0].tolist() == [0.125, 0.125]

    def test_minimum_cells(self):
        """Every axis needs four cells."""
        with pytest.raises(ValidationError, match="at least 4"):
            GridSpec(cells=(2,), bbox=AxisBox.of((0.0, 1.0)))

    def test_p1_is_one_dimensional(self):
        """P1 elements need a one-dimensional grid."""
        with pytest.raises(ValidationError, match="one-dimensional"):
            GridSpec(
                cells=(4, 4), bbox=AxisBox.of((0.0, 1.0), (0.0, 1.0)), order="P1"
            )


class TestResults:
    """Tests for result records."""

    def test_quotient_row_consistency(self):
        """quotient must equal seminorm / area."""
        QuotientRow(k=1, k0=1, seminorm=2.0, area=4.0, quotient=0.5, step4_bound=1.0)
        with pytest.raises(ValidationError, match="seminorm / area"):
            QuotientRow(k=1, k0=1, seminorm=2.0, area=4.0, quotient=0.7, step4_bound=1.0)

    def test_decisive_verdict_needs_witness(self):
        """Holds and Fails carry a witness; Inconclusive may not."""
        ConditionReport(condition="x", verdict=Verdict.INCONCLUSIVE)
        with pytest.raises(ValidationError, match="witness"):
            ConditionReport(condition="x", verdict=Verdict.HOLDS)

    def test_bound_needs_kind(self):
        """A bound always comes with its kind."""
        with pytest.raises(ValidationError, match="together"):
            ConditionReport(condition="x", verdict=Verdict.INCONCLUSIVE, bound=1.0)

    def test_eigenvalues_ascending(self):
        """Eigenvalues must be sorted."""
        with pytest.raises(ValidationError, match="ascending"):
            EigResult(eigenvalues=(2.0, 1.0))

    def test_eigenvectors_not_serialized(self):
        """Eigenvectors stay out of JSON dumps."""
        result = EigResult(eigenvalues=(1.0,), eigenvectors=[[1.0]])
        assert "eigenvectors" not in result.model_dump()

    def test_log_log_slope(self):
        """A power law y = x^-2 has slope -2; nonpositive values give NaN."""
        assert log_log_slope([1.0, 2.0, 4.0], [1.0, 0.25, 0.0625]) == pytest.approx(-2.0)
        assert math.isnan(log_log_slope([1.0, 2.0], [1.0, -1.0]))
