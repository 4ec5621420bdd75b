"""Test fixtures for fracpoincare."""
