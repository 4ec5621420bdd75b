"""
loader.py

PURPOSE: Load domain descriptions from JSON files or dictionaries.
DEPENDENCIES: pydantic, geometry.generators

ARCHITECTURE NOTES:
A domain document lists explicit boxes, a generator recipe, or both. The
generator is expanded here and its boxes are appended to the explicit ones, so
every algorithm downstream sees a plain finite box union. Pydantic validation
errors propagate unchanged; the CLI prints them as "loc -> msg".
"""

import json
import logging
from pathlib import Path
from typing import Any

from fracpoincare.errors import UsageError
from fracpoincare.geometry.generators import generate
from fracpoincare.models.geometry import BoxUnionDomain

logger = logging.getLogger(__name__)


def read_domain_file(path: Path) -> dict[str, Any]:
    """
    Read a domain JSON document without validating it.

    Raises:
        UsageError: If the file is missing or is not valid JSON.
    """
    try:
        with open(path) as f:
            data = json.load(f)
    except FileNotFoundError:
        raise UsageError(f"Domain file not found: {path}") from None
    except json.JSONDecodeError as e:
        raise UsageError(f"Invalid JSON in {path}: {e}") from None
    if not isinstance(data, dict):
        raise UsageError(f"Domain file {path} must contain a JSON object")
    return data


def expand(domain: BoxUnionDomain) -> BoxUnionDomain:
    """Append the generator's boxes to the explicit ones."""
    if domain.generator is None:
        return domain
    generated = generate(domain.generator)
    if generated.dim != domain.dim:
        raise UsageError(
            f"Generator '{domain.generator.type}' builds a {generated.dim}D domain, "
            f"file declares dim = {domain.dim}"
        )
    logger.debug(f"Expanded generator '{domain.generator.type}' into {len(generated.boxes)} boxes")
    return domain.model_copy(
        update={
            "boxes": domain.boxes + generated.boxes,
            "name": domain.name or generated.name,
            "metadata": {**generated.metadata, **domain.metadata},
        }
    )


def load_domain(source: Path | dict[str, Any]) -> BoxUnionDomain:
    """
    Load and expand a domain from a JSON file or an already parsed document.

    Raises:
        UsageError: For unreadable files.
        pydantic.ValidationError: For documents that violate the schema.
        InvalidArgumentError: For generator parameters a family rejects.
    """
    data = read_domain_file(source) if isinstance(source, Path) else source
    return expand(BoxUnionDomain.model_validate(data))
