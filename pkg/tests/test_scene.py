"""Scene construction, canonical serialization, and SVG rendering.

Golden files live in tests/golden/.  Run with UPDATE_GOLDENS=1 to
regenerate them after an intentional output change.
"""

import os
from pathlib import Path

import pytest

from plenodesign.errors import SchemaError, UnsupportedKind
from plenodesign.geometry import DEFAULT_PARAMETERS, validate_config
from plenodesign.scene import (
    REFOCUS_KIND,
    TRIANGULATION_KIND,
    Scene,
    SceneElement,
    build_refocus_scene,
    build_triangulation_scene,
    parse_scene,
    render_svg,
    serialize_scene,
)

from conftest import FROZEN

GOLDEN_DIR = Path(__file__).parent / "golden"


def _check_golden(name: str, data: bytes) -> None:
    path = GOLDEN_DIR / name
    if os.environ.get("UPDATE_GOLDENS"):
        path.parent.mkdir(exist_ok=True)
        path.write_bytes(data)
    assert path.read_bytes() == data, f"{name} drifted from its golden copy"


def _ids(scene: Scene) -> set[str]:
    return {element.id for element in scene.elements}


class TestRefocusScene:
    def test_default_single_shift_structure(self, config):
        scene = build_refocus_scene(config, [1.0])
        assert _ids(scene) == {
            "sensor", "mla", "H2U", "H1U", "FU",
            "d_a:1", "d_a-:1", "d_a+:1",
            "ray:1:0", "ray:1:1",
        }
        assert scene.kind == REFOCUS_KIND
        assert scene.units == "mm"

    def test_planes_sorted_by_z(self, config):
        scene = build_refocus_scene(config, [1.0, 0.5])
        zs = [e.z for e in scene.elements if e.type == "plane"]
        assert zs == sorted(zs)
        assert zs[0] == -config.micro_lens_focal  # sensor first

    def test_plane_positions_match_results(self, config):
        scene = build_refocus_scene(config, [1.0])
        by_id = {e.id: e for e in scene.elements}
        assert by_id["d_a:1"].z == pytest.approx(
            FROZEN["refocus_1"]["object_from_mla"], rel=1e-9)
        assert by_id["d_a-:1"].z == pytest.approx(
            FROZEN["refocus_1"]["dof_near_from_mla"], rel=1e-9)
        assert by_id["d_a+:1"].z == pytest.approx(
            FROZEN["refocus_1"]["dof_far_from_mla"], rel=1e-9)
        assert by_id["H1U"].z == pytest.approx(config.object_principal_z, rel=1e-12)

    def test_ray_chords_converge_on_the_plane(self, config):
        scene = build_refocus_scene(config, [1.0])
        rays = [e for e in scene.elements if e.type == "ray-segment"]
        assert len(rays) == 2
        plane_z = FROZEN["refocus_1"]["object_from_mla"]
        for ray in rays:
            assert ray.start[0] == 0.0
            assert ray.end == pytest.approx((plane_z, 0.0), rel=1e-9)
        assert rays[0].start[1] == pytest.approx(-rays[1].start[1], rel=1e-12)

    def test_virtual_shift_becomes_degenerate_label(self, config):
        scene = build_refocus_scene(config, [-2.0, 0.5])
        by_id = {e.id: e for e in scene.elements}
        note = by_id["d_a:-2"]
        assert note.type == "label"
        assert note.degenerate is True
        assert "VirtualRefocusPlane" in note.label
        assert by_id["d_a:0.5"].type == "plane"  # rest of the series intact

    def test_infinity_becomes_plain_label(self):
        params = dict(DEFAULT_PARAMETERS)
        del params["focus_distance"]
        config = validate_config(image_distance=16.2, **params)
        # shift whose center chord lands exactly on the focal point
        delta = config.main_lens_focal - config.image_distance
        lens_y = (delta * config.center_index * config.pixel_pitch / config.micro_lens_focal
                  / (1.0 + delta / config.exit_pupil_distance))
        shift = lens_y / (config.center_index * config.micro_lens_pitch)
        scene = build_refocus_scene(config, [shift])
        notes = [e for e in scene.elements if e.type == "label"]
        assert len(notes) == 1
        assert notes[0].label.endswith("at infinity")
        assert notes[0].degenerate is False
        assert not any(e.type == "ray-segment" for e in scene.elements)


class TestTriangulationScene:
    def test_structure_for_negative_gap(self, config):
        scene = build_triangulation_scene(config, -6, [0.0, 1.0])
        assert scene.kind == TRIANGULATION_KIND
        assert _ids(scene) == {
            "pupil", "vp:0", "vp:-6",
            "Z:-6,0", "Z:-6,1",
            "ray:-6,0:0", "ray:-6,0:1", "ray:-6,1:0", "ray:-6,1:1",
        }

    def test_viewpoints_sit_on_the_pupil_plane(self, config):
        scene = build_triangulation_scene(config, -6, [0.0])
        by_id = {e.id: e for e in scene.elements}
        pupil_z = by_id["pupil"].z
        assert by_id["vp:0"].at == pytest.approx((pupil_z, 0.0))
        assert by_id["vp:-6"].at[0] == pytest.approx(pupil_z)
        assert by_id["vp:-6"].at[1] == pytest.approx(
            -6 * FROZEN["baseline_1"], rel=1e-9)

    def test_rays_join_viewpoints_to_the_plane(self, config):
        scene = build_triangulation_scene(config, 1, [1.0])
        by_id = {e.id: e for e in scene.elements}
        plane_z = by_id["Z:1,1"].z
        assert by_id["ray:1,1:0"].start == pytest.approx((by_id["pupil"].z, 0.0))
        assert by_id["ray:1,1:0"].end == pytest.approx((plane_z, 0.0))
        assert by_id["ray:1,1:1"].end == pytest.approx((plane_z, 0.0))

    def test_virtual_plane_in_band(self, config):
        scene = build_triangulation_scene(config, 1, [-2.0, 0.0])
        by_id = {e.id: e for e in scene.elements}
        assert by_id["Z:1,-2"].type == "label"
        assert by_id["Z:1,-2"].degenerate is True
        assert "VirtualPlane" in by_id["Z:1,-2"].label
        assert by_id["Z:1,0"].type == "plane"


class TestSceneContainer:
    def test_duplicate_ids_rejected(self):
        with pytest.raises(SchemaError):
            Scene(kind=REFOCUS_KIND, elements=(
                SceneElement(id="mla", type="plane", z=0.0),
                SceneElement(id="mla", type="plane", z=1.0),
            ))

    def test_non_finite_coordinates_rejected(self):
        with pytest.raises(SchemaError):
            Scene(kind=REFOCUS_KIND, elements=(
                SceneElement(id="p", type="plane", z=float("inf")),
            ))
        with pytest.raises(SchemaError):
            Scene(kind=TRIANGULATION_KIND, elements=(
                SceneElement(id="v", type="point", at=(float("nan"), 0.0)),
            ))


class TestSerialization:
    def test_round_trip_preserves_the_scene(self, config):
        scene = build_refocus_scene(config, [1.0, -2.0])
        text = serialize_scene(scene)
        assert parse_scene(text) == scene
        assert serialize_scene(parse_scene(text)) == text

    def test_triangulation_round_trip(self, config):
        scene = build_triangulation_scene(config, 2, [0.0, 1.0, -2.0])
        assert parse_scene(serialize_scene(scene)) == scene

    def test_serialization_is_canonical(self, config):
        scene = build_refocus_scene(config, [1.0])
        assert serialize_scene(scene) == serialize_scene(build_refocus_scene(config, [1.0]))

    @pytest.mark.parametrize("mutation,message", [
        ({"version": "2"}, "version"),
        ({"units": "cm"}, "units"),
        ({"kind": "top-view"}, "kind"),
        ({"extra": 1}, "unknown"),
        ({"elements": {}}, "list"),
    ])
    def test_malformed_documents_rejected(self, config, mutation, message):
        import json
        raw = build_refocus_scene(config, [1.0]).to_dict()
        raw.update(mutation)
        with pytest.raises(SchemaError, match=message):
            parse_scene(json.dumps(raw))

    def test_unknown_element_fields_rejected(self):
        import json
        raw = {"version": "1", "units": "mm", "kind": REFOCUS_KIND,
               "elements": [{"id": "p", "type": "plane", "z": 1.0, "color": "red"}]}
        with pytest.raises(SchemaError, match="color"):
            parse_scene(json.dumps(raw))
        raw["elements"] = [{"id": "p", "type": "sphere"}]
        with pytest.raises(SchemaError, match="sphere"):
            parse_scene(json.dumps(raw))


class TestRenderSvg:
    def test_deterministic_bytes(self, config):
        scene = build_refocus_scene(config, [1.0, 0.5])
        assert render_svg(scene) == render_svg(build_refocus_scene(config, [1.0, 0.5]))

    def test_document_shape(self, config):
        svg = render_svg(build_refocus_scene(config, [1.0]))
        assert svg.startswith(b'<?xml version="1.0"')
        assert b'version="1.1"' in svg
        for label in (b">sensor</text>", b">MLA</text>", b">H2U</text>",
                      b">H1U</text>", b">FU</text>"):
            assert label in svg
        # every plane carries its exact position as a hover title
        assert b"<title>d_a:1 z = " in svg
        assert svg.count(b"<title>") == 8

    def test_degenerate_entries_flagged_in_red(self, config):
        svg = render_svg(build_refocus_scene(config, [-2.0]))
        assert b'fill="#b22222"' in svg
        assert b"VirtualRefocusPlane" in svg

    def test_only_section_scenes_render(self, config):
        scene = build_triangulation_scene(config, 1, [0.0])
        with pytest.raises(UnsupportedKind):
            render_svg(scene)


class TestGoldens:
    def test_refocus_scene_json(self, config):
        scene = build_refocus_scene(config, [1.0, -2.0])
        _check_golden("refocus_scene.json", serialize_scene(scene).encode())

    def test_refocus_section_svg(self, config):
        svg = render_svg(build_refocus_scene(config, [1.0]))
        _check_golden("refocus_section.svg", svg)

    def test_triangulation_scene_json(self, config):
        scene = build_triangulation_scene(config, -6, [0.0, 1.0])
        _check_golden("triangulation_scene.json", serialize_scene(scene).encode())
