"""Models unit tests."""
