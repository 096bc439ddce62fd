"""Paraxial geometry of a standard plenoptic camera.

All lengths are millimeters.  The optical axis is z, increasing from the
sensor toward the object space:

    sensor plane           z = -micro_lens_focal
    micro lens array (MLA) z = 0
    image-side principal plane of the main lens   z = image_distance
    object-side principal plane of the main lens  z = image_distance + hiatus

Rays are straight lines y(z) = slope * z + intercept with slope dy/dz.
Image-side rays are referenced to the MLA frame; object-side rays are
referenced to the object-side principal plane (their intercept is the
height at that plane and positions along them are distances beyond it).

Pixels inside a micro image are indexed k = 0 .. M-1 and micro lenses
are indexed j with lens j centered at j * micro_lens_pitch.  Both
indices are accepted as continuous values so that half-pixel borders
and fractional lens positions stay expressible.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Literal

from .errors import (
    BothOrNeitherFocusGiven,
    FocusNotBeyondFocal,
    MTooSmall,
    NonPositiveLength,
    SchemaError,
    VirtualObject,
)

#: Distinguished conjugate distance for rays focused at infinity.
INFINITY = math.inf

#: Image distances within this relative band around the focal length are
#: treated as exactly focal (conjugate at INFINITY) instead of producing
#: astronomically large finite distances dominated by rounding noise.
FOCAL_POINT_RTOL = 1e-9

Side = Literal["image", "object"]


@dataclass(frozen=True)
class Ray:
    """Linear ray y(z) = slope * z + intercept on one side of the main lens."""

    slope: float
    intercept: float
    side: Side

    def height(self, z: float) -> float:
        """Transverse position of the ray at axial coordinate ``z``."""
        return self.slope * z + self.intercept


_REQUIRED_FIELDS = (
    "pixel_pitch",
    "micro_lens_pitch",
    "micro_lens_focal",
    "micro_image_resolution",
    "main_lens_focal",
    "exit_pupil_distance",
)
_OPTIONAL_FIELDS = ("hiatus", "focus_distance", "image_distance")

#: A plausible miniature-camera setting used by the service defaults
#: endpoint and throughout the test suite.
DEFAULT_PARAMETERS = {
    "pixel_pitch": 0.0014,
    "micro_lens_pitch": 0.0125,
    "micro_lens_focal": 0.025,
    "micro_image_resolution": 9,
    "main_lens_focal": 16.0,
    "hiatus": 0.0,
    "exit_pupil_distance": 100.0,
    "focus_distance": 1000.0,
}


@dataclass(frozen=True)
class CameraConfig:
    """Validated plenoptic camera description.

    ``image_distance`` is always resolved (from ``focus_distance`` when
    that was what the user supplied); ``focus_distance`` is kept only
    when it was the given quantity, so serialization round-trips the
    original parameterization.  Build instances with
    :func:`validate_config` or :meth:`CameraConfig.from_dict`.
    """

    pixel_pitch: float
    micro_lens_pitch: float
    micro_lens_focal: float
    micro_image_resolution: int
    main_lens_focal: float
    hiatus: float
    exit_pupil_distance: float
    image_distance: float
    focus_distance: float | None = None

    @property
    def center_index(self) -> float:
        """Central pixel index of a micro image; half-integer when M is even."""
        return (self.micro_image_resolution - 1) / 2

    @property
    def image_principal_z(self) -> float:
        """z of the image-side principal plane in the MLA frame."""
        return self.image_distance

    @property
    def object_principal_z(self) -> float:
        """z of the object-side principal plane in the MLA frame.

        Adding this to a distance measured from the object-side
        principal plane converts it to the MLA frame.
        """
        return self.image_distance + self.hiatus

    @classmethod
    def from_dict(cls, raw: dict) -> "CameraConfig":
        """Parse the JSON parameter schema; unknown fields are rejected."""
        if not isinstance(raw, dict):
            raise SchemaError("config must be a JSON object")
        known = set(_REQUIRED_FIELDS) | set(_OPTIONAL_FIELDS)
        unknown = sorted(set(raw) - known)
        if unknown:
            raise SchemaError(f"unknown config field(s): {', '.join(unknown)}")
        missing = sorted(set(_REQUIRED_FIELDS) - set(raw))
        if missing:
            raise SchemaError(f"missing config field(s): {', '.join(missing)}")
        values = {}
        for field, value in raw.items():
            if isinstance(value, bool) or not isinstance(value, (int, float)):
                raise SchemaError(f"config field {field!r} must be a number")
            values[field] = value
        return validate_config(**values)

    def to_dict(self) -> dict:
        """JSON parameter schema for this configuration.

        Emits whichever of focus distance / image distance the user gave.
        """
        out = {
            "pixel_pitch": self.pixel_pitch,
            "micro_lens_pitch": self.micro_lens_pitch,
            "micro_lens_focal": self.micro_lens_focal,
            "micro_image_resolution": self.micro_image_resolution,
            "main_lens_focal": self.main_lens_focal,
            "hiatus": self.hiatus,
            "exit_pupil_distance": self.exit_pupil_distance,
        }
        if self.focus_distance is not None:
            out["focus_distance"] = self.focus_distance
        else:
            out["image_distance"] = self.image_distance
        return out


def image_distance(main_lens_focal: float, focus_distance: float) -> float:
    """Image distance conjugate to a focus plane beyond the focal length.

    Thin-lens rearrangement b = f * d / (d - f), measured from the
    image-side principal plane.

    Raises
    ------
    NonPositiveLength
        Either argument is not strictly positive and finite.
    FocusNotBeyondFocal
        The focus distance does not exceed the focal length.
    """
    _require_positive(main_lens_focal, "main_lens_focal")
    _require_positive(focus_distance, "focus_distance")
    if focus_distance <= main_lens_focal:
        raise FocusNotBeyondFocal(
            f"focus distance {focus_distance} mm must exceed the focal "
            f"length {main_lens_focal} mm"
        )
    return main_lens_focal * focus_distance / (focus_distance - main_lens_focal)


def object_distance(main_lens_focal: float, image_dist: float) -> float:
    """Object distance conjugate to an image distance, from the object-side
    principal plane.

    Returns INFINITY when the image distance sits on the focal length
    within FOCAL_POINT_RTOL.

    Raises
    ------
    NonPositiveLength
        Either argument is not strictly positive and finite.
    VirtualObject
        The image distance lies inside the focal length, so the
        conjugate would be virtual.
    """
    _require_positive(main_lens_focal, "main_lens_focal")
    _require_positive(image_dist, "image_distance")
    gap = image_dist - main_lens_focal
    if abs(gap) <= FOCAL_POINT_RTOL * main_lens_focal:
        return INFINITY
    if gap < 0:
        raise VirtualObject(
            f"image distance {image_dist} mm lies inside the focal length "
            f"{main_lens_focal} mm"
        )
    return main_lens_focal * image_dist / gap


# module-scope aliases; validate_config parameters shadow the public names
_image_distance = image_distance
_object_distance = object_distance


def validate_config(
    *,
    pixel_pitch: float,
    micro_lens_pitch: float,
    micro_lens_focal: float,
    micro_image_resolution: int,
    main_lens_focal: float,
    hiatus: float = 0.0,
    exit_pupil_distance: float,
    focus_distance: float | None = None,
    image_distance: float | None = None,
) -> CameraConfig:
    """Check parameter ranges and resolve the image distance.

    Exactly one of ``focus_distance`` (from the object-side principal
    plane) or ``image_distance`` (from the image-side principal plane to
    the MLA) must be given; either way the resolved image distance must
    exceed the focal length.
    """
    _require_positive(pixel_pitch, "pixel_pitch")
    _require_positive(micro_lens_pitch, "micro_lens_pitch")
    _require_positive(micro_lens_focal, "micro_lens_focal")
    _require_positive(main_lens_focal, "main_lens_focal")
    _require_positive(exit_pupil_distance, "exit_pupil_distance")
    if not math.isfinite(hiatus):
        raise NonPositiveLength("hiatus must be finite")
    if micro_image_resolution != int(micro_image_resolution):
        raise MTooSmall("micro_image_resolution must be an integer pixel count")
    if micro_image_resolution < 2:
        raise MTooSmall(
            f"micro_image_resolution {micro_image_resolution} is below the "
            "minimum of 2 pixels per micro image"
        )
    if (focus_distance is None) == (image_distance is None):
        raise BothOrNeitherFocusGiven(
            "give exactly one of focus_distance or image_distance"
        )
    if focus_distance is not None:
        resolved = _image_distance(main_lens_focal, focus_distance)
    else:
        _require_positive(image_distance, "image_distance")
        if image_distance <= main_lens_focal:
            raise FocusNotBeyondFocal(
                f"image distance {image_distance} mm must exceed the focal "
                f"length {main_lens_focal} mm"
            )
        resolved = image_distance
    return CameraConfig(
        pixel_pitch=float(pixel_pitch),
        micro_lens_pitch=float(micro_lens_pitch),
        micro_lens_focal=float(micro_lens_focal),
        micro_image_resolution=int(micro_image_resolution),
        main_lens_focal=float(main_lens_focal),
        hiatus=float(hiatus),
        exit_pupil_distance=float(exit_pupil_distance),
        image_distance=float(resolved),
        focus_distance=None if focus_distance is None else float(focus_distance),
    )


def default_config() -> CameraConfig:
    """The DEFAULT_PARAMETERS setting as a validated configuration."""
    return CameraConfig.from_dict(DEFAULT_PARAMETERS)


def micro_image_center(config: CameraConfig, lens_index: float) -> float:
    """Sensor position of the micro image center behind lens ``lens_index``.

    The center is the chief-ray footprint: the projection of the micro
    lens center from the exit pupil onto the sensor, which spreads the
    centers outward by the factor (1 + micro_lens_focal / exit_pupil_distance).
    """
    lens_y = lens_index * config.micro_lens_pitch
    return lens_y * (1.0 + config.micro_lens_focal / config.exit_pupil_distance)


def image_ray(config: CameraConfig, pixel_index: float, lens_index: float) -> Ray:
    """Image-side ray from pixel ``pixel_index`` through micro lens ``lens_index``.

    The ray starts on the sensor at the pixel position (measured inside
    the micro image of the given lens), passes through the micro lens
    center, and is referenced to the MLA frame, so its intercept is the
    micro lens center height.
    """
    lens_y = lens_index * config.micro_lens_pitch
    # split so mirrored selections (k -> M-1-k, j -> -j) negate exactly
    pupil_term = -lens_y / config.exit_pupil_distance
    pixel_term = (
        (pixel_index - config.center_index)
        * config.pixel_pitch
        / config.micro_lens_focal
    )
    return Ray(slope=pupil_term - pixel_term, intercept=lens_y, side="image")


def object_ray(config: CameraConfig, pixel_index: float, lens_index: float) -> Ray:
    """Object-side continuation of :func:`image_ray` through the main lens.

    The image-side ray is carried to the image-side principal plane,
    transferred at equal height to the object-side principal plane, and
    refracted there, losing height/focal of slope.
    """
    ray = image_ray(config, pixel_index, lens_index)
    height = ray.height(config.image_principal_z)
    slope = ray.slope - height / config.main_lens_focal
    return Ray(slope=slope, intercept=height, side="object")


def _require_positive(value: float | None, field: str) -> None:
    # bool is an int subclass; reject it explicitly
    if isinstance(value, bool) or value is None:
        raise NonPositiveLength(f"{field} must be a positive length in mm")
    if not math.isfinite(value) or value <= 0:
        raise NonPositiveLength(
            f"{field} must be a strictly positive finite length in mm, got {value}"
        )
