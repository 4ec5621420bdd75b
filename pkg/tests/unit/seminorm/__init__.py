"""Seminorm unit tests."""
