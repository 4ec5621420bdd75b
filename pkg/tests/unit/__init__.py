"""Unit tests for fracpoincare."""
