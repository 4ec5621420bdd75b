"""Shipped domain fixtures: the worked examples, the slit plane and a few basic shapes."""

import json
import logging
from importlib import resources
from typing import Any

from fracpoincare.errors import UsageError
from fracpoincare.geometry.loader import load_domain
from fracpoincare.models.geometry import AxisBox, BoxUnionDomain

logger = logging.getLogger(__name__)


def list_gallery() -> list[str]:
    """Names of the shipped fixtures, sorted."""
    root = resources.files(__name__)
    return sorted(
        entry.name.removesuffix(".json") for entry in root.iterdir() if entry.name.endswith(".json")
    )


def gallery_document(name: str) -> dict[str, Any]:
    """The raw JSON document of a fixture."""
    if name not in list_gallery():
        raise UsageError(f"Unknown gallery domain '{name}'; try one of {', '.join(list_gallery())}")
    data: dict[str, Any] = json.loads((resources.files(__name__) / f"{name}.json").read_text())
    return data


def load_gallery(name: str) -> BoxUnionDomain:
    """
    Load and expand a shipped fixture.

    Raises:
        UsageError: If no fixture has this name.
    """
    domain = load_domain(gallery_document(name))
    logger.debug(f"Loaded gallery domain '{name}' with {len(domain.boxes)} boxes")
    return domain


def suggested_window(domain: BoxUnionDomain) -> AxisBox | None:
    """The window recorded in a fixture's metadata, if any."""
    window = domain.metadata.get("window")
    if window is None:
        return None
    return AxisBox.of(*(tuple(axis) for axis in window))


__all__ = ["gallery_document", "list_gallery", "load_gallery", "suggested_window"]
