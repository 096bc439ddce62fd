"""Wire representation of results, shared by the CLI and the HTTP service.

Both front ends must emit field-for-field identical JSON for the same
request, so the dict building lives here and nowhere else.  Distance
fields carry their reference frame as a suffix: ``_from_mla`` for the
MLA frame, ``_from_h1u`` for distances beyond the object-side principal
plane.  Planes at infinity serialize as the string "Infinity" (bare
IEEE infinities are not valid JSON).
"""

from __future__ import annotations

import json
import math

from .refocus import RefocusResult
from .triangulate import TriangulationResult

INFINITY_TAG = "Infinity"


def encode_length(value: float | None) -> float | str | None:
    if value is not None and math.isinf(value):
        return INFINITY_TAG
    return value


def refocus_result_to_dict(result: RefocusResult) -> dict:
    out = {
        "a": result.shift,
        "d_a_prime": result.elongation,
        "b_a": result.effective_image_distance,
        "y": result.intersection_y,
        "d_a_from_h1u": encode_length(result.object_from_h1u),
        "d_a_from_mla": encode_length(result.object_from_mla),
        "dof_near_from_h1u": encode_length(result.dof_near_from_h1u),
        "dof_near_from_mla": encode_length(result.dof_near_from_mla),
        "dof_far_from_h1u": encode_length(result.dof_far_from_h1u),
        "dof_far_from_mla": encode_length(result.dof_far_from_mla),
        "error": result.error,
    }
    return {key: value for key, value in out.items() if value is not None}


def triangulation_result_to_dict(result: TriangulationResult) -> dict:
    planes = []
    for plane in result.planes:
        entry = {
            "dx": plane.disparity,
            "Z_from_h1u": encode_length(plane.z_from_h1u),
            "Z_from_mla": encode_length(plane.z_from_mla),
            "error": plane.error,
        }
        planes.append({key: value for key, value in entry.items() if value is not None})
    return {
        "G": result.gap,
        "B_G": result.baseline,
        "z_pupil_from_h1u": result.pupil_from_h1u,
        "z_pupil_from_mla": result.pupil_from_mla,
        "planes": planes,
    }


def dump_json(payload: dict) -> str:
    """Deterministic JSON text: sorted keys, two-space indent, no NaN/inf."""
    return json.dumps(payload, sort_keys=True, indent=2, allow_nan=False)
