"""Geometry unit tests."""
