"""
reports.py

PURPOSE: Atomic JSON and CSV writers for command results and the constants cache.
DEPENDENCIES: pydantic

ARCHITECTURE NOTES:
Files are written to a temporary sibling and moved into place with
os.replace, so a reader never sees a half-written report. JSON objects get a
top-level "schema_version" and sorted keys; CSV files start with a
"# schema_version=N" comment line followed by the fixed header. Pydantic
models are dumped with mode="json", so every report serializes the same way.
"""

import csv
import json
import logging
import os
import tempfile
from collections.abc import Callable, Iterable, Sequence
from pathlib import Path
from typing import IO, Any

from pydantic import BaseModel

logger = logging.getLogger(__name__)

SCHEMA_VERSION = 1

Payload = BaseModel | dict[str, Any] | list[Any]


def to_jsonable(data: Payload) -> Any:
    """Pydantic models as JSON-mode dicts; other values unchanged."""
    if isinstance(data, BaseModel):
        return data.model_dump(mode="json")
    return data


def render_json(data: Payload) -> str:
    """The exact text write_json_atomic would write."""
    payload = to_jsonable(data)
    if isinstance(payload, dict):
        payload = {"schema_version": SCHEMA_VERSION, **payload}
    return json.dumps(payload, indent=2, sort_keys=True) + "\n"


def _replace_atomically(path: Path, write: Callable[[IO[str]], None]) -> Path:
    path.parent.mkdir(parents=True, exist_ok=True)
    fd, tmp_name = tempfile.mkstemp(prefix=f".{path.name}.", dir=path.parent)
    try:
        with os.fdopen(fd, "w", newline="", encoding="utf-8") as handle:
            write(handle)
        os.replace(tmp_name, path)
    except BaseException:
        Path(tmp_name).unlink(missing_ok=True)
        raise
    logger.debug(f"Wrote {path}")
    return path


def write_json_atomic(path: Path, data: Payload) -> Path:
    """Write data as JSON, replacing any existing file in one step."""
    text = render_json(data)
    return _replace_atomically(path, lambda handle: handle.write(text))


def write_csv_atomic(path: Path, header: Sequence[str], rows: Iterable[Sequence[Any]]) -> Path:
    """Write a schema line, a header and rows as CSV, replacing any existing file in one step."""
    materialized = [list(row) for row in rows]

    def write(handle: IO[str]) -> None:
        handle.write(f"# schema_version={SCHEMA_VERSION}\n")
        writer = csv.writer(handle, lineterminator="\n")
        writer.writerow(header)
        writer.writerows(materialized)

    return _replace_atomically(path, write)
