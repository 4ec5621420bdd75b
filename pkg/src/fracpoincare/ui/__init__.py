"""UI module for console output."""

from fracpoincare.ui import plain

__all__ = ["plain"]
