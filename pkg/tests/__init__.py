"""Tests for the fracpoincare package."""
