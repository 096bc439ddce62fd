"""Synthetic refocusing distances and depth-of-field limits.

Refocusing at shift ``a`` integrates the micro images with their
centers displaced by ``a`` pixels per lens, which is equivalent to
collecting, for each output point, rays whose pixel and lens indices
slide against each other.  The refocusing distance follows from a
single symmetric pair of those rays: the first pixel of the micro lens
at +a*(M-1)/2 and the last pixel of the lens at -a*(M-1)/2.  Their
image-side intersection sits behind the MLA by the image-distance
elongation, and the thin lens maps the elongated image distance to the
object-side plane that appears in focus.

Depth-of-field limits repeat the construction with the ray pair moved
to the pixel borders: borders toward the micro image center bound the
near end, borders away from it the far end (the roles swap for
negative shifts; results are reported ordered).
"""

from __future__ import annotations

from dataclasses import dataclass, replace
from typing import Literal, Sequence

from .errors import DegenerateDOF, DesignError, EmptySeries, VirtualRefocusPlane
from .geometry import INFINITY, FOCAL_POINT_RTOL, CameraConfig, Ray, image_ray, object_distance
from .solver import intersect_rays

Border = Literal["none", "inner", "outer"]

#: Shifts below this magnitude give border rays that are effectively the
#: center rays again, so the bracket degenerates to the focus plane.
MIN_DOF_SHIFT = 0.05

_BORDER_OFFSETS: dict[str, float] = {"none": 0.0, "inner": 0.5, "outer": -0.5}


@dataclass(frozen=True)
class RefocusResult:
    """Refocusing outcome for one shift value.

    Distances from the object-side principal plane carry ``_from_h1u``;
    the same distances offset into the MLA frame carry ``_from_mla``.
    ``object_*`` fields are None when the plane is degenerate (see
    ``error``); depth-of-field fields are None when not requested or
    when the bracket is degenerate.  INFINITY marks planes at infinity.
    """

    shift: float
    elongation: float
    intersection_y: float
    effective_image_distance: float
    object_from_h1u: float | None
    object_from_mla: float | None
    dof_near_from_h1u: float | None = None
    dof_near_from_mla: float | None = None
    dof_far_from_h1u: float | None = None
    dof_far_from_mla: float | None = None
    error: str | None = None


def select_refocus_rays(config: CameraConfig, shift: float,
                        border: Border = "none") -> tuple[Ray, Ray]:
    """The symmetric image-side ray pair that defines the refocus plane."""
    if border not in _BORDER_OFFSETS:
        raise ValueError(f"border must be one of {sorted(_BORDER_OFFSETS)}, got {border!r}")
    offset = _BORDER_OFFSETS[border]
    last = config.micro_image_resolution - 1
    lens = shift * config.center_index
    low = image_ray(config, 0.0 + offset, lens)
    high = image_ray(config, last - offset, -lens)
    return low, high


def _effective_image_distance(config: CameraConfig, shift: float,
                              border: Border) -> tuple[float, float, float]:
    """(elongation, intersection y, effective image distance) for one pair."""
    low, high = select_refocus_rays(config, shift, border)
    point = intersect_rays(low, high)
    elongation = -point.z
    return elongation, point.y, config.image_distance + elongation


def refocus(config: CameraConfig, shift: float) -> RefocusResult:
    """Refocusing distances for one shift, without depth-of-field fields.

    Raises VirtualRefocusPlane when the effective image distance falls
    inside the focal length, meaning no real plane appears in focus.
    """
    elongation, y, effective = _effective_image_distance(config, shift, "none")
    focal = config.main_lens_focal
    if effective < focal * (1.0 - FOCAL_POINT_RTOL):
        raise VirtualRefocusPlane(
            f"shift {shift} pulls the effective image distance {effective} mm "
            f"inside the focal length {focal} mm",
            shift=shift,
            elongation=elongation,
            intersection_y=y,
            effective_image_distance=effective,
        )
    from_h1u = object_distance(focal, effective)
    return RefocusResult(
        shift=shift,
        elongation=elongation,
        intersection_y=y,
        effective_image_distance=effective,
        object_from_h1u=from_h1u,
        object_from_mla=from_h1u + config.object_principal_z,
    )


def refocus_dof(config: CameraConfig, shift: float,
                minimum_shift: float = MIN_DOF_SHIFT) -> tuple[float, float]:
    """Near and far depth-of-field limits from the object-side principal plane.

    Returns (near, far) ordered; far may be INFINITY.  Raises
    DegenerateDOF for |shift| < minimum_shift and VirtualRefocusPlane
    when the far border pair maps beyond infinity.
    """
    if abs(shift) < minimum_shift:
        raise DegenerateDOF(
            f"|shift| = {abs(shift)} below {minimum_shift}: border rays meet the "
            "center rays at the MLA and the bracket collapses onto the focus plane"
        )
    candidates = []
    for border in ("inner", "outer"):
        candidates.append(_effective_image_distance(config, shift, border)[2])
    # the larger effective image distance conjugates to the nearer plane
    far_image, near_image = sorted(candidates)
    focal = config.main_lens_focal
    if far_image < focal * (1.0 - FOCAL_POINT_RTOL):
        raise VirtualRefocusPlane(
            f"far depth-of-field limit at shift {shift} maps beyond infinity "
            f"(border image distance {far_image} mm inside focal {focal} mm)",
            shift=shift,
            elongation=far_image - config.image_distance,
            intersection_y=0.0,
            effective_image_distance=far_image,
        )
    return object_distance(focal, near_image), object_distance(focal, far_image)


def refocus_series(config: CameraConfig, shifts: Sequence[float],
                   include_dof: bool = True,
                   minimum_shift: float = MIN_DOF_SHIFT) -> list[RefocusResult]:
    """Element-wise refocus over ``shifts``; failures ride along in-band.

    Order follows the input.  A shift whose refocus fails produces an
    entry with ``error`` set and the computable fields filled; a shift
    whose depth of field is degenerate keeps its refocus fields and
    simply omits the bracket.  Raises EmptySeries for an empty request.
    """
    if len(shifts) == 0:
        raise EmptySeries("refocus series needs at least one shift")
    results = []
    for shift in shifts:
        try:
            result = refocus(config, shift)
        except VirtualRefocusPlane as exc:
            results.append(RefocusResult(
                shift=shift,
                elongation=exc.elongation,
                intersection_y=exc.intersection_y,
                effective_image_distance=exc.effective_image_distance,
                object_from_h1u=None,
                object_from_mla=None,
                error=exc.name,
            ))
            continue
        if include_dof:
            try:
                near, far = refocus_dof(config, shift, minimum_shift)
            except DesignError:
                pass
            else:
                offset = config.object_principal_z
                result = replace(
                    result,
                    dof_near_from_h1u=near,
                    dof_near_from_mla=near + offset,
                    dof_far_from_h1u=far,
                    dof_far_from_mla=far + offset,
                )
        results.append(result)
    return results
