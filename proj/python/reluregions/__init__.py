"""Exact linear-region analysis for ReLU networks."""

from ._core import (
    Error,
    InternalError,
    Network,
    ParseError,
    ResourceLimitError,
    ValidationError,
    __version__,
    amplify,
    build_arrangement_network,
    build_binary_bump,
    build_example_a,
    build_example_b,
    build_sat_bump,
    build_sat_counter,
    build_sat_ladder,
    build_well,
    count_regions,
    family_formula,
    is_affine_shallow,
    k_region_decide,
    line_census,
    networks_equivalent,
    parse_network,
    sample_lower_bounds,
    serialize_network,
    shallow_census,
    subtract,
)

__all__ = [
    "Error",
    "InternalError",
    "Network",
    "ParseError",
    "ResourceLimitError",
    "ValidationError",
    "__version__",
    "amplify",
    "build_arrangement_network",
    "build_binary_bump",
    "build_example_a",
    "build_example_b",
    "build_sat_bump",
    "build_sat_counter",
    "build_sat_ladder",
    "build_well",
    "count_regions",
    "family_formula",
    "is_affine_shallow",
    "k_region_decide",
    "line_census",
    "networks_equivalent",
    "parse_network",
    "sample_lower_bounds",
    "serialize_network",
    "shallow_census",
    "subtract",
]
