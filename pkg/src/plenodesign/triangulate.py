"""Virtual viewpoints, stereo baselines, and triangulated depth planes.

Fixing the pixel offset ``i`` from the micro image center and sweeping
the lens index selects one perspective view of the scene.  All
object-side rays of one view cross in a single point: the virtual
viewpoint, sitting on the entrance pupil plane.  Two views separated by
an integer gap form a stereo pair whose baseline is the transverse
distance between their viewpoints; a pixel disparity measured between
the views then pins the object plane the matched feature lies on.

Distances are measured from the object-side principal plane unless the
name says ``_from_mla``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, replace
from typing import Sequence

from .errors import EmptySeries, InvalidGap, ParallelRays, VirtualPlane
from .geometry import INFINITY, CameraConfig, object_ray
from .solver import intersect_rays


@dataclass(frozen=True)
class Viewpoint:
    """Crossing point of one perspective view's object-side rays."""

    index: float
    pupil_z: float
    y: float


@dataclass(frozen=True)
class DepthPlane:
    """One triangulated plane; INFINITY for parallel rays, ``error`` set
    when the intersection falls behind the object-side principal plane."""

    disparity: float
    z_from_h1u: float | None
    z_from_mla: float | None
    error: str | None = None


@dataclass(frozen=True)
class TriangulationResult:
    gap: int
    baseline: float
    pupil_from_h1u: float
    pupil_from_mla: float
    planes: tuple[DepthPlane, ...] = ()


def viewpoint(config: CameraConfig, index: float,
              lens_index: float = 0.0) -> Viewpoint:
    """Virtual viewpoint of the view at pixel offset ``index``.

    Intersects the object-side rays of that view through micro lenses
    ``lens_index`` and ``lens_index + 1``; the result does not depend on
    which adjacent pair is chosen.
    """
    pixel = config.center_index + index
    first = object_ray(config, pixel, lens_index)
    second = object_ray(config, pixel, lens_index + 1.0)
    point = intersect_rays(first, second)
    return Viewpoint(index=index, pupil_z=point.z, y=point.y)


def baseline(config: CameraConfig, gap: int) -> TriangulationResult:
    """Stereo baseline between the reference view and the view ``gap`` away.

    Positive gaps give positive baselines: the gapped viewpoint drops
    below the reference one, and the baseline is reference minus gapped.
    """
    gap = _checked_gap(gap, allow_zero=True)
    reference = viewpoint(config, 0.0)
    other = viewpoint(config, float(gap))
    return TriangulationResult(
        gap=gap,
        baseline=reference.y - other.y,
        pupil_from_h1u=reference.pupil_z,
        pupil_from_mla=reference.pupil_z + config.object_principal_z,
    )


def triangulate(config: CameraConfig, gap: int,
                disparity: float) -> tuple[float, float]:
    """Depth plane for one disparity between the stereo pair ``gap`` apart.

    Returns (z from object-side principal plane, z from MLA); both are
    INFINITY when the triangulating rays are parallel.  Raises
    VirtualPlane when the intersection lies behind the principal plane
    and InvalidGap for a zero or non-integer gap.
    """
    gap = _checked_gap(gap, allow_zero=False)
    center = config.center_index
    reference = object_ray(config, center, 0.0)
    matched = object_ray(config, center + gap, -disparity)
    try:
        point = intersect_rays(reference, matched)
    except ParallelRays:
        return INFINITY, INFINITY
    if point.z <= 0.0:
        raise VirtualPlane(
            f"gap {gap} with disparity {disparity} triangulates to z = "
            f"{point.z} mm behind the object-side principal plane"
        )
    return point.z, point.z + config.object_principal_z


def depth_plane_series(config: CameraConfig, gap: int,
                       disparities: Sequence[float]) -> TriangulationResult:
    """Baseline plus one depth plane per disparity, failures in-band."""
    if len(disparities) == 0:
        raise EmptySeries("triangulation series needs at least one disparity")
    result = baseline(config, _checked_gap(gap, allow_zero=False))
    planes = []
    for disparity in disparities:
        try:
            z_h1u, z_mla = triangulate(config, gap, disparity)
        except VirtualPlane as exc:
            planes.append(DepthPlane(
                disparity=disparity, z_from_h1u=None, z_from_mla=None,
                error=exc.name,
            ))
        else:
            planes.append(DepthPlane(
                disparity=disparity, z_from_h1u=z_h1u, z_from_mla=z_mla,
            ))
    return replace(result, planes=tuple(planes))


def _checked_gap(gap: int, allow_zero: bool) -> int:
    if isinstance(gap, bool) or not isinstance(gap, int):
        if isinstance(gap, float) and gap == int(gap) and math.isfinite(gap):
            gap = int(gap)
        else:
            raise InvalidGap(f"gap must be an integer, got {gap!r}")
    if gap == 0 and not allow_zero:
        raise InvalidGap("gap must be nonzero to form a stereo pair")
    return gap
