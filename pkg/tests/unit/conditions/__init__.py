"""Conditions unit tests."""
