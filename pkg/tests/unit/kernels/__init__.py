"""Kernels unit tests."""
