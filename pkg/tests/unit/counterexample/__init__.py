"""Counterexample unit tests."""
