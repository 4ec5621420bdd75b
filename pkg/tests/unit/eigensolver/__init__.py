"""Eigensolver unit tests."""
