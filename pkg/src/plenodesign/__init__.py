"""Optical design calculator for standard plenoptic cameras.

Predicts, from sensor / micro lens array / main lens parameters, where
a light field photograph refocuses, how deep the synthetic depth of
field reaches, where virtual viewpoints and their stereo baselines sit,
and which depth planes a pixel disparity triangulates to.
"""

from .errors import (
    BothOrNeitherFocusGiven,
    DegenerateDOF,
    DesignError,
    EmptySeries,
    FocusNotBeyondFocal,
    InvalidGap,
    MixedSides,
    MTooSmall,
    NonPositiveLength,
    ParallelRays,
    SchemaError,
    SingularSystem,
    UnsupportedKind,
    VirtualObject,
    VirtualPlane,
    VirtualRefocusPlane,
)
from .geometry import (
    DEFAULT_PARAMETERS,
    INFINITY,
    CameraConfig,
    Ray,
    default_config,
    image_distance,
    image_ray,
    micro_image_center,
    object_distance,
    object_ray,
    validate_config,
)
from .refocus import (
    RefocusResult,
    refocus,
    refocus_dof,
    refocus_series,
    select_refocus_rays,
)
from .scene import (
    Scene,
    SceneElement,
    build_refocus_scene,
    build_triangulation_scene,
    parse_scene,
    render_svg,
    serialize_scene,
)
from .solver import IntersectionPoint, LinearSystem, SolveResult, intersect_rays, solve
from .triangulate import (
    DepthPlane,
    TriangulationResult,
    Viewpoint,
    baseline,
    depth_plane_series,
    triangulate,
    viewpoint,
)

__version__ = "0.1.0"

__all__ = [
    "BothOrNeitherFocusGiven",
    "CameraConfig",
    "DEFAULT_PARAMETERS",
    "DegenerateDOF",
    "DepthPlane",
    "DesignError",
    "EmptySeries",
    "FocusNotBeyondFocal",
    "INFINITY",
    "IntersectionPoint",
    "InvalidGap",
    "LinearSystem",
    "MTooSmall",
    "MixedSides",
    "NonPositiveLength",
    "ParallelRays",
    "Ray",
    "RefocusResult",
    "Scene",
    "SceneElement",
    "SchemaError",
    "SingularSystem",
    "SolveResult",
    "TriangulationResult",
    "UnsupportedKind",
    "Viewpoint",
    "VirtualObject",
    "VirtualPlane",
    "VirtualRefocusPlane",
    "baseline",
    "build_refocus_scene",
    "build_triangulation_scene",
    "default_config",
    "depth_plane_series",
    "image_distance",
    "image_ray",
    "intersect_rays",
    "micro_image_center",
    "object_distance",
    "object_ray",
    "parse_scene",
    "refocus",
    "refocus_dof",
    "refocus_series",
    "render_svg",
    "select_refocus_rays",
    "serialize_scene",
    "solve",
    "triangulate",
    "validate_config",
    "viewpoint",
]
