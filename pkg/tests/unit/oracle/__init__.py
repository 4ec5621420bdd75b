"""Oracle unit tests."""
