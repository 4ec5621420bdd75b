"""
constants.py

PURPOSE: Reference constants behind the condition bounds and their on-disk cache.
DEPENDENCIES: numpy, scipy, pydantic, eigensolver, reports

ARCHITECTURE NOTES:
Two constants enter the bounds:

- lambda_ref(s): the Rayleigh quotient of the bump U(x) = exp(-1/(1 - |x|^2))
  on the unit disc. U is radial, so its Fourier transform is a Hankel
  transform, and
      [U]^2 = kappa_s / (2 pi) * integral of xi^(1+2s) |U^(xi)|^2 dxi,
      kappa_s = 2 pi B(1/2, s + 1/2) / (Gamma(1 + 2s) sin(pi s)).
- p1_unit(s): the regional constant of (0, 1), from the P1 regional ladder
  with Richardson extrapolation (s > 1/2 only).

Each cached entry records a hash of the recipe that produced it. An entry
whose hash no longer matches the code is recomputed on demand. The package
ships a cache file; `fracpk constants --regenerate` writes a fresh one to
the user location, which takes precedence when present.
"""

import hashlib
import json
import logging
import math
from importlib import resources
from pathlib import Path

import numpy as np
from pydantic import BaseModel, ConfigDict, Field, ValidationError
from scipy import integrate, special

from fracpoincare.config import EigenSettings, Settings
from fracpoincare.eigensolver.solve import poincare_constant
from fracpoincare.errors import UsageError
from fracpoincare.kernels.closed_forms import kernel_line_mass
from fracpoincare.models.geometry import IntervalUnion
from fracpoincare.models.order import FracOrder, SLike
from fracpoincare.models.params import FormMode
from fracpoincare.observability import traced
from fracpoincare.reports import write_json_atomic

logger = logging.getLogger(__name__)

BUMP_RADIAL_POINTS = 600
BUMP_XI_MAX = 400.0
BUMP_EPSREL = 1e-8
BUMP_RECIPE = (
    f"bump exp(-1/(1-r^2)) on B1; Hankel transform by {BUMP_RADIAL_POINTS}-point "
    f"Gauss-Legendre in r; xi integral by quad on [0, {BUMP_XI_MAX}] at epsrel {BUMP_EPSREL}"
)
STANDARD_S_GRID = tuple(round(0.05 * i, 2) for i in range(1, 20))
CACHE_FILE = "constants.json"


def recipe_hash(recipe: str) -> str:
    return hashlib.sha256(recipe.encode()).hexdigest()[:16]


def _radial_rule() -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    nodes, weights = np.polynomial.legendre.leggauss(BUMP_RADIAL_POINTS)
    r = 0.5 * (nodes + 1.0)
    w = 0.5 * weights
    bump = np.exp(-1.0 / (1.0 - r * r))
    return r, w, bump


def bump_transform(xi: np.ndarray | float) -> np.ndarray:
    """Fourier transform of the reference bump at radial frequencies xi."""
    r, w, bump = _radial_rule()
    xi = np.atleast_1d(np.asarray(xi, dtype=float))
    return 2.0 * math.pi * (special.j0(np.outer(xi, r)) @ (w * bump * r))


def bump_norm_squared() -> float:
    r, w, bump = _radial_rule()
    return float(2.0 * math.pi * np.sum(w * bump * bump * r))


def symbol_constant(s: SLike) -> float:
    """kappa_s with [u]^2 = (2 pi)^-2 * integral of kappa_s |xi|^(2s) |u^(xi)|^2 in the plane."""
    sv = FracOrder.of(s).s
    denominator = special.gamma(1.0 + 2.0 * sv) * math.sin(math.pi * sv)
    return 2.0 * math.pi * kernel_line_mass(sv) / denominator


def reference_bump_quotient(s: SLike) -> float:
    """lambda_ref(s): [U]^2 / ||U||^2 for the reference bump on the unit disc."""
    sv = FracOrder.of(s).s
    value, abserr = integrate.quad(
        lambda xi: xi ** (1.0 + 2.0 * sv) * float(bump_transform(xi)[0]) ** 2,
        0.0,
        BUMP_XI_MAX,
        epsabs=0.0,
        epsrel=BUMP_EPSREL,
        limit=500,
    )
    seminorm = symbol_constant(sv) / (2.0 * math.pi) * value
    quotient = seminorm / bump_norm_squared()
    logger.debug(f"lambda_ref({sv}) = {quotient:.10g} (xi integral abserr {abserr:.1e})")
    return quotient


def p1_recipe(settings: EigenSettings) -> str:
    return f"P1 regional on (0,1), ladder {settings.ladder}, Richardson on the last three rungs"


def unit_interval_constant(s: SLike, settings: EigenSettings | None = None) -> tuple[float, bool]:
    """
    p1_unit(s): the regional constant of (0, 1), for s > 1/2.

    Returns:
        (value, extrapolated). When the ladder is inconclusive the finest
        eigenvalue is returned with extrapolated = False.
    """
    order = FracOrder.of(s)
    order.require_super("unit_interval_constant")
    settings = settings or EigenSettings()
    result = poincare_constant(
        IntervalUnion(intervals=((0.0, 1.0),)), order, mode=FormMode.REGIONAL, settings=settings
    )
    extrapolation = result.extrapolated
    if extrapolation is None or extrapolation.inconclusive or extrapolation.limit is None:
        logger.warning(f"p1_unit({order.s}): ladder inconclusive, using the finest eigenvalue")
        return result.eigenvalues[0], False
    return extrapolation.limit, True


class ConstantEntry(BaseModel):
    """One cached constant with the recipe it came from."""

    model_config = ConfigDict(frozen=True)

    value: float
    recipe_hash: str
    tolerance: float = Field(default=0.0, ge=0.0)
    extrapolated: bool = True


class ConstantsFile(BaseModel):
    """On-disk layout of the constants cache, keyed by s formatted to 4 decimals."""

    version: int = 1
    lambda_ref: dict[str, ConstantEntry] = Field(default_factory=dict)
    p1_unit: dict[str, ConstantEntry] = Field(default_factory=dict)


def _key(s: float) -> str:
    return f"{s:.4f}"


def packaged_constants_path() -> Path:
    return Path(str(resources.files("fracpoincare") / "data" / CACHE_FILE))


class ReferenceConstants:
    """
    Cached lambda_ref and p1_unit values.

    Usage:
        constants = ReferenceConstants(settings)
        lam = constants.lambda_ref(0.25)
        constants.save()  # persist anything computed on demand
    """

    def __init__(self, settings: Settings | None = None) -> None:
        self.settings = settings or Settings()
        self.target = self.settings.constants_path or self.settings.data_dir / CACHE_FILE
        source = self.target if self.target.exists() else packaged_constants_path()
        self.data = self._read(source)
        self.dirty = False

    @staticmethod
    def _read(path: Path) -> ConstantsFile:
        if not path.exists():
            return ConstantsFile()
        try:
            return ConstantsFile.model_validate(json.loads(path.read_text()))
        except (json.JSONDecodeError, ValidationError) as e:
            raise UsageError(f"Invalid constants cache {path}: {e}") from None

    def lambda_ref(self, s: SLike) -> float:
        sv = FracOrder.of(s).s
        key, wanted = _key(sv), recipe_hash(BUMP_RECIPE)
        entry = self.data.lambda_ref.get(key)
        if entry is None or entry.recipe_hash != wanted:
            value = reference_bump_quotient(sv)
            entry = ConstantEntry(value=value, recipe_hash=wanted, tolerance=BUMP_EPSREL)
            self.data.lambda_ref[key] = entry
            self.dirty = True
        return entry.value

    def p1_unit(self, s: SLike) -> float:
        sv = FracOrder.of(s).s
        eigen = self.settings.eigen
        key, wanted = _key(sv), recipe_hash(p1_recipe(eigen))
        entry = self.data.p1_unit.get(key)
        if entry is None or entry.recipe_hash != wanted:
            value, extrapolated = unit_interval_constant(sv, eigen)
            entry = ConstantEntry(
                value=value,
                recipe_hash=wanted,
                tolerance=eigen.iterative_tol,
                extrapolated=extrapolated,
            )
            self.data.p1_unit[key] = entry
            self.dirty = True
        return entry.value

    def save(self, path: Path | None = None) -> Path:
        """Write the cache atomically to path (default: the user cache location)."""
        written = write_json_atomic(path or self.target, self.data)
        self.dirty = False
        return written

    @traced("conditions.regenerate_constants")
    def regenerate(self, s_values: tuple[float, ...] = STANDARD_S_GRID) -> Path:
        """Recompute every constant on the s-grid and rewrite the cache."""
        self.data = ConstantsFile()
        for sv in s_values:
            self.lambda_ref(sv)
            if sv > 0.5:
                self.p1_unit(sv)
            logger.info(f"Regenerated constants for s = {sv}")
        return self.save()
