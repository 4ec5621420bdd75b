"""
validator.py

PURPOSE: Validate domain documents for issues the schema cannot catch.
DEPENDENCIES: models, geometry

ARCHITECTURE NOTES:
Pydantic already rejects malformed boxes, unknown generator families and
orders outside (0, 1). The validator looks at what is left:
- generator parameters a family refuses
- overlapping input boxes (harmless, normalized before use)
- a suggested order in a regime where some energies are infinite
- domains whose complement has no area, where every condition degenerates

Running validation before an experiment catches these issues early.
"""

import itertools
import logging
from dataclasses import dataclass
from enum import Enum, auto

from fracpoincare.errors import InvalidArgumentError, UsageError
from fracpoincare.geometry.arrangement import complement_boxes
from fracpoincare.geometry.loader import expand
from fracpoincare.models.geometry import BoxUnionDomain
from fracpoincare.models.order import FracOrder, Regime

logger = logging.getLogger(__name__)


class ValidationSeverity(Enum):
    """Severity level for validation issues."""

    ERROR = auto()  # The domain cannot be used
    WARNING = auto()  # Some commands will refuse or diverge
    INFO = auto()  # Handled automatically


@dataclass
class ValidationIssue:
    """A single validation issue found in a domain."""

    severity: ValidationSeverity
    message: str
    location: str  # e.g., "box:3", "generator", "s"

    def __str__(self) -> str:
        return f"[{self.severity.name}] {self.location}: {self.message}"


class DomainValidator:
    """
    Validates a domain document.

    Usage:
        validator = DomainValidator(domain)
        issues = validator.validate()
        for issue in issues:
            print(issue)
    """

    # Pairwise overlap checks are skipped above this many boxes
    MAX_OVERLAP_PAIRS = 2000

    def __init__(self, domain: BoxUnionDomain):
        self.domain = domain
        self.expanded: BoxUnionDomain | None = None
        self.issues: list[ValidationIssue] = []

    def validate(self) -> list[ValidationIssue]:
        """
        Run all validation checks.

        Returns:
            List of ValidationIssue objects, sorted by severity.
        """
        self.issues = []

        self._validate_generator()
        if self.expanded is not None:
            self._validate_overlaps()
            self._validate_complement()
        self._validate_order()

        self.issues.sort(key=lambda i: i.severity.value)
        logger.debug(f"Validated domain '{self.domain.name}': {len(self.issues)} issues")
        return self.issues

    def _add(self, severity: ValidationSeverity, location: str, message: str) -> None:
        self.issues.append(ValidationIssue(severity=severity, message=message, location=location))

    def _validate_generator(self) -> None:
        """Expand the generator; parameter errors become ERROR issues."""
        try:
            self.expanded = expand(self.domain)
        except (InvalidArgumentError, UsageError) as e:
            self._add(ValidationSeverity.ERROR, "generator", str(e))
            return
        if self.domain.generator is not None:
            self._add(
                ValidationSeverity.INFO,
                "generator",
                f"'{self.domain.generator.type}' expands to {len(self.expanded.boxes)} boxes",
            )

    def _validate_overlaps(self) -> None:
        boxes = self.expanded.boxes if self.expanded else ()
        if len(boxes) > self.MAX_OVERLAP_PAIRS:
            return
        overlapping = [
            (i, j) for (i, a), (j, b) in itertools.combinations(enumerate(boxes), 2)
            if a.interiors_overlap(b)
        ]
        if overlapping:
            i, j = overlapping[0]
            self._add(
                ValidationSeverity.INFO,
                f"box:{i}",
                f"overlaps box {j} ({len(overlapping)} overlapping pairs); "
                "boxes are normalized before use",
            )

    def _validate_complement(self) -> None:
        if self.expanded is None:
            return
        lo, _ = complement_boxes(self.expanded)
        if lo.shape[0] == 0:
            self._add(
                ValidationSeverity.WARNING,
                "boxes",
                "the domain is the whole space; its Poincare constant is zero",
            )
            return
        lo_ext, _ = complement_boxes(self.expanded, extended=True)
        if lo_ext.shape[0] == 0:
            self._add(
                ValidationSeverity.INFO,
                "boxes",
                "the complement has zero area; extended balls are unbounded",
            )

    def _validate_order(self) -> None:
        if self.domain.s is None:
            return
        order = FracOrder.of(self.domain.s)
        if order.regime is Regime.CRITICAL:
            self._add(
                ValidationSeverity.WARNING,
                "s",
                "s = 1/2: fractional perimeters diverge and the LS(s) bound needs s > 1/2",
            )
        elif order.regime is Regime.SUPER:
            self._add(
                ValidationSeverity.WARNING,
                "s",
                f"s = {order.s} > 1/2: indicator energies and perimeters are infinite",
            )
        else:
            self._add(
                ValidationSeverity.INFO,
                "s",
                f"s = {order.s} < 1/2: check_ls and interval bounds need s > 1/2",
            )


def validate_domain(domain: BoxUnionDomain) -> list[ValidationIssue]:
    """
    Convenience function to validate a domain.

    Args:
        domain: The domain to validate

    Returns:
        List of validation issues
    """
    validator = DomainValidator(domain)
    return validator.validate()
