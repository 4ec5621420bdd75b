"""
errors.py

PURPOSE: Exception hierarchy shared by every numerical module and the CLI.
DEPENDENCIES: none

ARCHITECTURE NOTES:
All library errors derive from FracPoincareError so callers can catch one type.
The CLI maps usage-style errors (bad arguments, regime violations, empty domains)
to exit code 2 and computational failures (non-convergence) to exit code 1.
"""


class FracPoincareError(Exception):
    """Base class for all fracpoincare errors."""

    pass


class InvalidArgumentError(FracPoincareError, ValueError):
    """An argument violates an operation's precondition (overlap, zero direction, ...)."""

    pass


class OutOfRegimeError(InvalidArgumentError):
    """The fractional order lies outside the regime an operation is valid for."""

    pass


class DivergentEnergyError(InvalidArgumentError):
    """The requested energy is infinite (e.g. touching sets with s >= 1/2)."""

    pass


class SingularArgumentError(InvalidArgumentError):
    """A closed form was evaluated exactly at its singularity."""

    pass


class DomainError(FracPoincareError):
    """The domain has no points inside the requested window."""

    pass


class QuadratureError(FracPoincareError):
    """Adaptive quadrature failed to reach the requested tolerance."""

    pass


class EigenSolverError(FracPoincareError):
    """The eigensolver failed to converge."""

    pass


class UsageError(FracPoincareError):
    """A command configuration failed validation before any computation ran."""

    pass


def exit_code_for(error: FracPoincareError) -> int:
    """Map an error to the CLI exit code (2 for usage, 1 for computation)."""
    if isinstance(error, UsageError | InvalidArgumentError | DomainError):
        return 2
    return 1
