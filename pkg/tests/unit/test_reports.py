"""
TEST DOC: Report Writers and Gallery

WHAT: Tests for the atomic JSON/CSV writers and the shipped domain gallery.
WHY: Result files are read by other tools; their layout and schema version
     must not drift, and a crash must never leave a half-written file.
HOW: Write to tmp_path and read back; load every gallery fixture.

CASES:
- JSON gets schema_version and sorted keys; pydantic models dump in JSON mode
- CSV starts with "# schema_version=1" followed by the header
- Writing replaces an existing file and leaves no temporary siblings
- Every gallery fixture loads; windows come from metadata

EDGE CASES:
- A failing row iterator leaves the old file untouched
- Unknown gallery names list the alternatives
"""

import csv
import json
import math

import pytest

from fracpoincare.errors import UsageError
from fracpoincare.gallery import gallery_document, list_gallery, load_gallery, suggested_window
from fracpoincare.models import AxisBox, EnergyValue
from fracpoincare.reports import (
    SCHEMA_VERSION,
    render_json,
    to_jsonable,
    write_csv_atomic,
    write_json_atomic,
)


class TestJson:
    """Tests for JSON reports."""

    def test_schema_and_sorting(self, tmp_path):
        """Objects gain schema_version; keys are sorted."""
        path = write_json_atomic(tmp_path / "out" / "report.json", {"b": 1, "a": 2})
        text = path.read_text()
        assert json.loads(text) == {"schema_version": SCHEMA_VERSION, "a": 2, "b": 1}
        assert text.index('"a"') < text.index('"b"') < text.index('"schema_version"')
        assert text.endswith("\n")

    def test_models_dump_as_json(self):
        """Models dump in JSON mode, so enums become their values."""
        payload = to_jsonable(EnergyValue.closed_form(2.0))
        assert payload["method"] == "closed_form"
        assert json.loads(render_json(AxisBox.of((0.0, math.inf))))["x"] == [0.0, "inf"]

    def test_lists_untouched(self):
        """Only objects carry a schema version."""
        assert json.loads(render_json([1, 2])) == [1, 2]

    def test_replace(self, tmp_path):
        """A second write replaces the first and leaves no temporaries."""
        path = tmp_path / "report.json"
        write_json_atomic(path, {"run": 1})
        write_json_atomic(path, {"run": 2})
        assert json.loads(path.read_text())["run"] == 2
        assert [p.name for p in tmp_path.iterdir()] == ["report.json"]


class TestCsv:
    """Tests for CSV reports."""

    def test_layout(self, tmp_path):
        """Schema line, header, rows."""
        path = write_csv_atomic(tmp_path / "table.csv", ["k", "quotient"], [(2, 0.5), (3, 0.25)])
        lines = path.read_text().splitlines()
        assert lines[0] == f"# schema_version={SCHEMA_VERSION}"
        rows = list(csv.reader(lines[1:]))
        assert rows == [["k", "quotient"], ["2", "0.5"], ["3", "0.25"]]

    def test_failure_keeps_old_file(self, tmp_path):
        """An exception while producing rows leaves the previous file in place."""
        path = write_csv_atomic(tmp_path / "table.csv", ["k"], [(1,)])

        def rows():
            yield (2,)
            raise RuntimeError("interrupted")

        with pytest.raises(RuntimeError):
            write_csv_atomic(path, ["k"], rows())
        assert path.read_text().splitlines()[-1] == "1"
        assert [p.name for p in tmp_path.iterdir()] == ["table.csv"]


class TestGallery:
    """Tests for the shipped fixtures."""

    def test_names(self):
        """The gallery lists its fixtures, sorted."""
        names = list_gallery()
        assert names == sorted(names)
        assert {"strip", "unit_square", "slit_plane", "example2_counterexample"} <= set(names)

    @pytest.mark.parametrize("name", list_gallery())
    def test_every_fixture_loads(self, name):
        """Every fixture validates and expands to at least one box."""
        domain = load_gallery(name)
        assert domain.boxes

    def test_window(self):
        """Windows come from metadata; fixtures without one give None."""
        assert suggested_window(load_gallery("strip")) == AxisBox.of((0.0, 1.0), (-4.0, 4.0))
        assert suggested_window(load_gallery("two_boxes")) is None

    def test_unknown(self):
        """Unknown names are usage errors naming the alternatives."""
        with pytest.raises(UsageError, match="unit_square"):
            gallery_document("no_such_domain")
