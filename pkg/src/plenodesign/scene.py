"""Geometry scenes for plotting and UI rendering.

A scene is a flat list of drawable elements in MLA-frame coordinates
(z along the axis, y transverse, millimeters): planes at a z position,
ray segments between two points, marker points, and text labels.
Refocus scenes are 2-D cross sections; triangulation scenes describe
the plane stack for a 3-D style view and are rendered client-side.

Serialization is canonical: stable key order, compact separators, plain
repr floats, so equal scenes serialize to identical bytes.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass
from typing import Sequence

from .errors import SchemaError, UnsupportedKind
from .geometry import CameraConfig
from .refocus import RefocusResult, refocus_series
from .triangulate import depth_plane_series

SCENE_VERSION = "1"
REFOCUS_KIND = "refocus-section"
TRIANGULATION_KIND = "triangulation-3d"

_ELEMENT_TYPES = ("plane", "ray-segment", "point", "label")


@dataclass(frozen=True)
class SceneElement:
    """One drawable: exactly the fields for its type are set.

    plane: z; ray-segment: start/end; point: at; label: nothing spatial.
    ``degenerate`` marks labels standing in for failed computations.
    """

    id: str
    type: str
    label: str | None = None
    z: float | None = None
    start: tuple[float, float] | None = None
    end: tuple[float, float] | None = None
    at: tuple[float, float] | None = None
    degenerate: bool = False

    def to_dict(self) -> dict:
        out: dict = {"id": self.id, "type": self.type}
        if self.label is not None:
            out["label"] = self.label
        if self.z is not None:
            out["z"] = self.z
        if self.start is not None:
            out["from"] = list(self.start)
        if self.end is not None:
            out["to"] = list(self.end)
        if self.at is not None:
            out["at"] = list(self.at)
        if self.degenerate:
            out["degenerate"] = True
        return out

    @classmethod
    def from_dict(cls, raw: dict) -> "SceneElement":
        if not isinstance(raw, dict):
            raise SchemaError("scene element must be an object")
        if not isinstance(raw.get("id"), str):
            raise SchemaError("scene element needs a string id")
        if raw.get("type") not in _ELEMENT_TYPES:
            raise SchemaError(f"unknown element type {raw.get('type')!r}")
        unknown = set(raw) - {"id", "type", "label", "z", "from", "to", "at", "degenerate"}
        if unknown:
            raise SchemaError(f"unknown element field(s): {', '.join(sorted(unknown))}")
        return cls(
            id=raw["id"],
            type=raw["type"],
            label=raw.get("label"),
            z=raw.get("z"),
            start=_pair(raw.get("from")),
            end=_pair(raw.get("to")),
            at=_pair(raw.get("at")),
            degenerate=bool(raw.get("degenerate", False)),
        )


def _pair(value) -> tuple[float, float] | None:
    if value is None:
        return None
    if (not isinstance(value, (list, tuple)) or len(value) != 2
            or not all(isinstance(c, (int, float)) for c in value)):
        raise SchemaError(f"coordinate pair expected, got {value!r}")
    return float(value[0]), float(value[1])


@dataclass(frozen=True)
class Scene:
    kind: str
    elements: tuple[SceneElement, ...]
    version: str = SCENE_VERSION
    units: str = "mm"

    def __post_init__(self):
        ids = [element.id for element in self.elements]
        if len(ids) != len(set(ids)):
            dupes = sorted({i for i in ids if ids.count(i) > 1})
            raise SchemaError(f"duplicate element id(s): {', '.join(dupes)}")
        for element in self.elements:
            for coords in (element.start, element.end, element.at):
                if coords is not None and not all(math.isfinite(c) for c in coords):
                    raise SchemaError(f"element {element.id}: coordinates must be finite")
            if element.z is not None and not math.isfinite(element.z):
                raise SchemaError(f"element {element.id}: z must be finite")

    def to_dict(self) -> dict:
        return {
            "version": self.version,
            "units": self.units,
            "kind": self.kind,
            "elements": [element.to_dict() for element in self.elements],
        }


def _fmt(value: float) -> str:
    """Compact id-friendly number: 1.0 -> '1', 0.5 -> '0.5'."""
    return f"{value:g}"


def build_refocus_scene(config: CameraConfig, shifts: Sequence[float]) -> Scene:
    """Cross-section scene: camera planes, one plane per finite refocus
    distance and depth-of-field limit, the defining ray pair per shift,
    and degenerate-entry labels for shifts without a real plane."""
    planes = [
        SceneElement(id="sensor", type="plane", z=-config.micro_lens_focal, label="sensor"),
        SceneElement(id="mla", type="plane", z=0.0, label="MLA"),
        SceneElement(id="H2U", type="plane", z=config.image_principal_z, label="H2U"),
        SceneElement(id="H1U", type="plane", z=config.object_principal_z, label="H1U"),
        SceneElement(id="FU", type="plane",
                     z=config.object_principal_z + config.main_lens_focal, label="FU"),
    ]
    rays: list[SceneElement] = []
    notes: list[SceneElement] = []
    for result in refocus_series(config, shifts):
        tag = _fmt(result.shift)
        if result.error is not None:
            notes.append(SceneElement(
                id=f"d_a:{tag}", type="label", degenerate=True,
                label=f"d_a({tag}): {result.error}",
            ))
            continue
        _append_plane_or_note(planes, notes, f"d_a:{tag}", f"d_a({tag})",
                              result.object_from_mla)
        if result.dof_near_from_mla is not None:
            _append_plane_or_note(planes, notes, f"d_a-:{tag}", f"d_a-({tag})",
                                  result.dof_near_from_mla)
            _append_plane_or_note(planes, notes, f"d_a+:{tag}", f"d_a+({tag})",
                                  result.dof_far_from_mla)
        if math.isfinite(result.object_from_mla):
            for position, ray in enumerate(_section_rays(config, result)):
                rays.append(SceneElement(
                    id=f"ray:{tag}:{position}", type="ray-segment",
                    start=ray[0], end=ray[1],
                ))
    planes.sort(key=lambda element: element.z)
    return Scene(kind=REFOCUS_KIND, elements=tuple(planes + rays + notes))


def _section_rays(config: CameraConfig, result: RefocusResult):
    """Drawable chords from the two selected micro lens centers to the
    on-axis point where their object-side continuations reconverge."""
    lens_y = result.shift * config.center_index * config.micro_lens_pitch
    target = (result.object_from_mla, 0.0)
    return ((0.0, lens_y), target), ((0.0, -lens_y), target)


def build_triangulation_scene(config: CameraConfig, gap: int,
                              disparities: Sequence[float]) -> Scene:
    """Plane-stack scene: entrance pupil plane, the two stereo viewpoints,
    one labeled plane per finite triangulated distance with its ray
    pair, and degenerate labels for the rest."""
    result = depth_plane_series(config, gap, disparities)
    gap_tag = _fmt(float(result.gap))
    pupil_z = result.pupil_from_mla
    planes = [SceneElement(id="pupil", type="plane", z=pupil_z, label="entrance pupil")]
    points = [
        SceneElement(id="vp:0", type="point", at=(pupil_z, 0.0), label="viewpoint 0"),
        SceneElement(id=f"vp:{gap_tag}", type="point", at=(pupil_z, result.baseline),
                     label=f"viewpoint {gap_tag}"),
    ]
    rays: list[SceneElement] = []
    notes: list[SceneElement] = []
    for plane in result.planes:
        tag = f"{gap_tag},{_fmt(plane.disparity)}"
        if plane.error is not None:
            notes.append(SceneElement(
                id=f"Z:{tag}", type="label", degenerate=True,
                label=f"Z({tag}): {plane.error}",
            ))
            continue
        _append_plane_or_note(planes, notes, f"Z:{tag}", f"Z({tag})", plane.z_from_mla)
        if math.isfinite(plane.z_from_mla):
            target = (plane.z_from_mla, 0.0)
            rays.append(SceneElement(id=f"ray:{tag}:0", type="ray-segment",
                                     start=(pupil_z, 0.0), end=target))
            rays.append(SceneElement(id=f"ray:{tag}:1", type="ray-segment",
                                     start=(pupil_z, result.baseline), end=target))
    planes.sort(key=lambda element: element.z)
    return Scene(kind=TRIANGULATION_KIND,
                 elements=tuple(planes + points + rays + notes))


def _append_plane_or_note(planes: list, notes: list, element_id: str,
                          label: str, z: float) -> None:
    # planes at infinity become labels; plane elements stay finite
    if math.isinf(z):
        notes.append(SceneElement(id=element_id, type="label",
                                  label=f"{label}: at infinity"))
    else:
        planes.append(SceneElement(id=element_id, type="plane", z=z, label=label))


def serialize_scene(scene: Scene) -> str:
    """Canonical JSON text; equal scenes serialize byte-identically."""
    return json.dumps(scene.to_dict(), sort_keys=True,
                      separators=(",", ":"), allow_nan=False)


def parse_scene(text: str) -> Scene:
    """Inverse of :func:`serialize_scene`; rejects unknown versions/kinds."""
    try:
        raw = json.loads(text)
    except json.JSONDecodeError as exc:
        raise SchemaError(f"scene is not valid JSON: {exc}") from exc
    if not isinstance(raw, dict):
        raise SchemaError("scene must be a JSON object")
    if raw.get("version") != SCENE_VERSION:
        raise SchemaError(f"unsupported scene version {raw.get('version')!r}")
    if raw.get("units") != "mm":
        raise SchemaError(f"unsupported units {raw.get('units')!r}")
    if raw.get("kind") not in (REFOCUS_KIND, TRIANGULATION_KIND):
        raise SchemaError(f"unknown scene kind {raw.get('kind')!r}")
    elements = raw.get("elements")
    if not isinstance(elements, list):
        raise SchemaError("scene elements must be a list")
    unknown = set(raw) - {"version", "units", "kind", "elements"}
    if unknown:
        raise SchemaError(f"unknown scene field(s): {', '.join(sorted(unknown))}")
    return Scene(kind=raw["kind"],
                 elements=tuple(SceneElement.from_dict(e) for e in elements))


_SVG_WIDTH = 900
_SVG_HEIGHT = 420
_SVG_MARGIN = 60


def render_svg(scene: Scene) -> bytes:
    """Deterministic SVG 1.1 rendering of a refocus cross section.

    The viewport spans the sensor to the farthest plane; every plane is
    a labeled vertical line carrying its exact z as a hover title.
    Raises UnsupportedKind for scene kinds without a 2-D section.
    """
    if scene.kind != REFOCUS_KIND:
        raise UnsupportedKind(f"cannot render scene kind {scene.kind!r} as a section")
    planes = [e for e in scene.elements if e.type == "plane"]
    rays = [e for e in scene.elements if e.type == "ray-segment"]
    notes = [e for e in scene.elements if e.type == "label"]
    z_values = [e.z for e in planes]
    for ray in rays:
        z_values.extend((ray.start[0], ray.end[0]))
    z_low, z_high = min(z_values), max(z_values)
    if z_high - z_low <= 0:
        z_high = z_low + 1.0
    y_extent = max([abs(ray.start[1]) for ray in rays]
                   + [abs(ray.end[1]) for ray in rays] + [1e-9])

    usable_w = _SVG_WIDTH - 2 * _SVG_MARGIN
    usable_h = _SVG_HEIGHT - 2 * _SVG_MARGIN

    def x_px(z: float) -> str:
        return f"{_SVG_MARGIN + (z - z_low) / (z_high - z_low) * usable_w:.2f}"

    def y_px(y: float) -> str:
        return f"{_SVG_HEIGHT / 2 - y / y_extent * (usable_h / 2):.2f}"

    parts = [
        '<?xml version="1.0" encoding="UTF-8"?>',
        f'<svg xmlns="http://www.w3.org/2000/svg" version="1.1" '
        f'width="{_SVG_WIDTH}" height="{_SVG_HEIGHT}" '
        f'viewBox="0 0 {_SVG_WIDTH} {_SVG_HEIGHT}">',
        f'<rect width="{_SVG_WIDTH}" height="{_SVG_HEIGHT}" fill="white"/>',
        f'<line x1="{x_px(z_low)}" y1="{y_px(0.0)}" x2="{x_px(z_high)}" '
        f'y2="{y_px(0.0)}" stroke="#bbbbbb" stroke-dasharray="2,4"/>',
    ]
    for index, plane in enumerate(planes):
        x = x_px(plane.z)
        dashed = ' stroke-dasharray="6,3"' if plane.id.startswith(("d_a-", "d_a+")) else ""
        label_y = _SVG_MARGIN - 6 - 12 * (index % 3)
        parts.append(
            f'<g><title>{_escape(plane.id)} z = {plane.z!r} mm</title>'
            f'<line x1="{x}" y1="{_SVG_MARGIN}" x2="{x}" '
            f'y2="{_SVG_HEIGHT - _SVG_MARGIN}" stroke="#444444"{dashed}/>'
            f'<text x="{x}" y="{label_y}" font-size="11" text-anchor="middle" '
            f'font-family="sans-serif">{_escape(plane.label or plane.id)}</text></g>'
        )
    for ray in rays:
        parts.append(
            f'<line x1="{x_px(ray.start[0])}" y1="{y_px(ray.start[1])}" '
            f'x2="{x_px(ray.end[0])}" y2="{y_px(ray.end[1])}" '
            f'stroke="#1f77b4" stroke-width="1"/>'
        )
    for index, note in enumerate(notes):
        color = "#b22222" if note.degenerate else "#333333"
        parts.append(
            f'<text x="{_SVG_MARGIN}" y="{_SVG_HEIGHT - 8 - 14 * index}" '
            f'font-size="11" fill="{color}" '
            f'font-family="sans-serif">{_escape(note.label or note.id)}</text>'
        )
    parts.append("</svg>")
    return "\n".join(parts).encode("utf-8")


def _escape(text: str) -> str:
    return (text.replace("&", "&amp;").replace("<", "&lt;").replace(">", "&gt;")
            .replace('"', "&quot;"))
