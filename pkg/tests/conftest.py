"""Shared fixtures and frozen expectation values.

FROZEN holds numbers computed once with the independent oracle in
``oracles.py`` (two-point chord intersection plus direct reciprocal
thin-lens arithmetic) on the default configuration.  Tests compare the
implementation against these constants so regressions cannot hide
behind a drifting oracle.
"""

from __future__ import annotations

import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).resolve().parent))

from plenodesign.geometry import CameraConfig, default_config

FROZEN = {
    "image_distance": 16.260162601626018,
    "micro_image_center_j4": 0.0500125,
    "image_ray_k0_j4": (0.2235, 0.05),
    "object_ray_k5_j0": (0.00091056910569106, -0.9105691056910569),
    "viewpoint_1": (13.433322464949324, -0.8983371372676878),
    "baseline_1": 0.8983371372676878,
    "refocus_0": {
        "elongation": 0.0,
        "object_from_h1u": 999.9999999999922,
        "object_from_mla": 1016.2601626016182,
    },
    "refocus_1": {
        "elongation": 0.22371364653243853,
        "effective_image_distance": 16.483876248158456,
        "object_from_h1u": 545.0608930987813,
        "object_from_mla": 561.3210557004073,
        "dof_near_from_h1u": 512.2037723682087,
        "dof_near_from_mla": 528.4639349698347,
        "dof_far_from_h1u": 573.7709536554419,
        "dof_far_from_mla": 590.0311162570679,
    },
    "refocus_minus2_effective_image_distance": 15.815718157181573,
    "triangulate_1_0": 999.9999999999584,
    "triangulate_1_1": 545.0608930987694,
    "triangulate_1_minus1": 6852.611218566789,
    "object_distance_16_1645897": 573.7706603917458,
}


@pytest.fixture(scope="session")
def config() -> CameraConfig:
    return default_config()
