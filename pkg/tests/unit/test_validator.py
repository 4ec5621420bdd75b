"""
TEST DOC: Domain Validator

WHAT: Tests for DomainValidator and validate_domain.
WHY: Validation runs before any experiment; it must flag unusable generators
     and warn about degenerate domains and orders without refusing usable input.
HOW: Validate raw documents (not yet expanded) and inspect severities,
     locations and messages.

CASES:
- A plain box domain without an order has no issues
- Overlapping input boxes are reported as INFO
- Generators report their expansion; bad parameters are errors
- The whole plane warns; a zero-area complement is INFO
- Each regime of s gets its own note

EDGE CASES:
- Errors sort before warnings and infos
- Issues print as "[SEVERITY] location: message"
"""

import json
import math

from fracpoincare.gallery import gallery_document
from fracpoincare.models import AxisBox, BoxUnionDomain, GeneratorSpec
from fracpoincare.validator import (
    DomainValidator,
    ValidationIssue,
    ValidationSeverity,
    validate_domain,
)


def raw(path) -> BoxUnionDomain:
    return BoxUnionDomain.model_validate(json.loads(path.read_text()))


class TestValidator:
    """Tests for domain validation."""

    def test_clean_domain(self, fixtures_dir):
        """The unit square needs no comment beyond its order."""
        domain = raw(fixtures_dir / "unit_square.json")
        assert validate_domain(domain.model_copy(update={"s": None})) == []
        issues = validate_domain(domain)
        assert [(i.severity, i.location) for i in issues] == [(ValidationSeverity.INFO, "s")]

    def test_overlaps(self, fixtures_dir):
        """Overlapping boxes are normalized later, so they are informational."""
        issues = validate_domain(raw(fixtures_dir / "overlapping_boxes.json"))
        assert [(i.severity, i.location) for i in issues] == [(ValidationSeverity.INFO, "box:0")]
        assert "overlaps box 1" in issues[0].message

    def test_generator_expansion(self):
        """A valid generator reports how many boxes it builds."""
        domain = BoxUnionDomain(dim=2, generator=GeneratorSpec(type="parallel_strips", count=2))
        issues = validate_domain(domain)
        assert any(
            i.location == "generator" and "expands to 2 boxes" in i.message for i in issues
        )

    def test_bad_generator(self):
        """Parameters the family refuses are errors, and errors come first."""
        domain = BoxUnionDomain(
            dim=2, s=0.25, generator=GeneratorSpec(type="parallel_strips", colour="red")
        )
        issues = validate_domain(domain)
        assert issues[0].severity is ValidationSeverity.ERROR
        assert issues[0].location == "generator"
        assert issues[-1].location == "s"

    def test_whole_plane(self):
        """The whole plane has Poincaré constant zero."""
        plane = AxisBox.of((-math.inf, math.inf), (-math.inf, math.inf))
        issues = validate_domain(BoxUnionDomain(dim=2, boxes=(plane,)))
        assert [(i.severity, i.location) for i in issues] == [
            (ValidationSeverity.WARNING, "boxes")
        ]

    def test_zero_area_complement(self):
        """The slit plane's complement is a set of rays."""
        domain = BoxUnionDomain.model_validate(gallery_document("slit_plane"))
        messages = [i.message for i in validate_domain(domain)]
        assert any("zero area" in m for m in messages)

    def test_regimes(self, fixtures_dir):
        """s = 1/2 and s > 1/2 warn; s < 1/2 is a note."""
        base = raw(fixtures_dir / "unit_square.json")
        for s, severity in [
            (0.25, ValidationSeverity.INFO),
            (0.5, ValidationSeverity.WARNING),
            (0.75, ValidationSeverity.WARNING),
        ]:
            issues = DomainValidator(base.model_copy(update={"s": s})).validate()
            assert [(i.severity, i.location) for i in issues] == [(severity, "s")]

    def test_issue_str(self):
        """Issues render with severity and location."""
        issue = ValidationIssue(ValidationSeverity.WARNING, "diverges", "s")
        assert str(issue) == "[WARNING] s: diverges"
