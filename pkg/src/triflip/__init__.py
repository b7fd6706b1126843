"""Edge flips on combinatorial planar triangulations."""

from .core import (
    FlipRecord,
    FlipSequence,
    SeparatingTriangle,
    Triangulation,
    canonical_code,
    canonical_triangulation,
    count_flippable_edges,
    is_isomorphic,
    separating_triangles,
    validate,
)

__version__ = "0.1.0"

__all__ = [
    "FlipRecord",
    "FlipSequence",
    "SeparatingTriangle",
    "Triangulation",
    "canonical_code",
    "canonical_triangulation",
    "count_flippable_edges",
    "is_isomorphic",
    "separating_triangles",
    "validate",
]
