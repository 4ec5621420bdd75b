"""
conftest.py

Shared pytest fixtures for fracpoincare tests.
"""

from pathlib import Path

import pytest

from fracpoincare.config import EigenSettings, Settings
from fracpoincare.geometry import load_domain
from fracpoincare.models import AxisBox, BoxUnionDomain, IndicatorFunction

FIXTURES_DIR = Path(__file__).parent / "fixtures"


@pytest.fixture(autouse=True)
def isolated_data_dir(tmp_path: Path, monkeypatch: pytest.MonkeyPatch) -> Path:
    """Keep constant caches and outputs out of the user's home directory."""
    data_dir = tmp_path / "fracpk-data"
    monkeypatch.setenv("FRACPK_DATA_DIR", str(data_dir))
    return data_dir


@pytest.fixture
def settings(isolated_data_dir: Path) -> Settings:
    """Default settings pointing at the isolated data directory."""
    return Settings(data_dir=isolated_data_dir)


@pytest.fixture
def small_eigen() -> EigenSettings:
    """A short refinement ladder for planar solves."""
    return EigenSettings(ladder=(8, 12, 16))


@pytest.fixture
def unit_square_path() -> Path:
    """Path to the unit square domain file."""
    return FIXTURES_DIR / "unit_square.json"


@pytest.fixture
def unit_square(unit_square_path: Path) -> BoxUnionDomain:
    """The unit square (0, 1)^2."""
    return load_domain(unit_square_path)


@pytest.fixture
def two_intervals() -> BoxUnionDomain:
    """(0, 1) u (2, 3) on the line."""
    return load_domain(FIXTURES_DIR / "two_intervals.json")


@pytest.fixture
def strip() -> BoxUnionDomain:
    """The strip (0, 1) x R."""
    return BoxUnionDomain(dim=2, boxes=(AxisBox.of((0.0, 1.0), (float("-inf"), float("inf"))),))


@pytest.fixture
def unit_indicator() -> IndicatorFunction:
    """The indicator of the unit square."""
    return IndicatorFunction.of_boxes([AxisBox.of((0.0, 1.0), (0.0, 1.0))])


@pytest.fixture
def fixtures_dir() -> Path:
    """Directory holding the test domain and config files."""
    return FIXTURES_DIR
