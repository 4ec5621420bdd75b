"""Integration tests for fracpoincare."""
