"""Shortest Reeds-Shepp paths for car-like vehicles.

``accelerated.solve`` dispatches each query to a single path type;
``baseline.solve_exhaustive`` evaluates every classical word and serves as
the reference. ``underspecified.solve_underspecified`` handles goals with a
free final heading.
"""

from .accelerated import PathTypeId, solve
from .baseline import enumerate_optima, solve_exhaustive
from .errors import DomainError, InternalInconsistencyError, InvalidRadiusError, RsPlannerError
from .geometry import PathSegment, Pose, Quadrant, RsPath, SegmentKind, normalize_angle
from .integrator import endpoint_error, integrate, sample_polyline
from .underspecified import OmegaSolution, Region, solve_underspecified

__version__ = "0.1.0"

__all__ = [
    "PathTypeId", "solve", "enumerate_optima", "solve_exhaustive",
    "DomainError", "InternalInconsistencyError", "InvalidRadiusError", "RsPlannerError",
    "PathSegment", "Pose", "Quadrant", "RsPath", "SegmentKind", "normalize_angle",
    "endpoint_error", "integrate", "sample_polyline",
    "OmegaSolution", "Region", "solve_underspecified",
]
