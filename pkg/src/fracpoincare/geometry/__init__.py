"""Geometry of box-union domains: normalization, slices, radii and generators."""

from fracpoincare.geometry.arrangement import (
    Arrangement,
    build_arrangement,
    closure_interior,
    complement_boxes,
    normalize,
    point_in_domain,
)
from fracpoincare.geometry.generators import (
    counterexample,
    decreasing_widths,
    finite_strips,
    gap_bounds,
    gap_sequence,
    generate,
    lattice_holes,
    parallel_strips,
    slit_plane,
    strip_family,
    strip_offsets,
)
from fracpoincare.geometry.generators import annuli as annuli_domain
from fracpoincare.geometry.loader import expand, load_domain, read_domain_file
from fracpoincare.geometry.radius import (
    RadiusEstimate,
    distance_to_boxes,
    distance_to_complement,
    extended_inscribed_radius,
    inscribed_radius,
)
from fracpoincare.geometry.slicing import (
    check_direction,
    clip_lines,
    is_unbounded,
    longest_component,
    slice_domain,
    slice_lines,
    union_of_intervals,
)

__all__ = [
    "Arrangement",
    "RadiusEstimate",
    "annuli_domain",
    "build_arrangement",
    "check_direction",
    "clip_lines",
    "closure_interior",
    "complement_boxes",
    "counterexample",
    "decreasing_widths",
    "distance_to_boxes",
    "distance_to_complement",
    "expand",
    "extended_inscribed_radius",
    "finite_strips",
    "gap_bounds",
    "gap_sequence",
    "generate",
    "inscribed_radius",
    "is_unbounded",
    "lattice_holes",
    "load_domain",
    "longest_component",
    "normalize",
    "parallel_strips",
    "point_in_domain",
    "read_domain_file",
    "slice_domain",
    "slice_lines",
    "slit_plane",
    "strip_family",
    "strip_offsets",
    "union_of_intervals",
]
