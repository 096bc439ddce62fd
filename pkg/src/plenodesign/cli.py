"""Command-line front end.

Exit codes: 0 on success, 1 on domain failures (the structured error
name is printed to stderr), 2 on argument or config-file parse errors.
Output is deterministic: identical invocations produce identical bytes.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import math
import sys
from pathlib import Path

from . import __version__
from .errors import DesignError, SchemaError
from .geometry import CameraConfig
from .refocus import refocus_series
from .scene import build_refocus_scene, build_triangulation_scene, render_svg, serialize_scene
from .serialize import dump_json, refocus_result_to_dict, triangulation_result_to_dict
from .triangulate import depth_plane_series


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="plenodesign",
        description="Plenoptic camera design calculator: refocusing planes, "
                    "depth of field, stereo baselines, and triangulated depth planes.",
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    parser.add_argument("--config", metavar="PATH",
                        help="JSON file with camera parameters; flags override it")

    camera = parser.add_argument_group("camera parameters (mm unless noted)")
    camera.add_argument("--pitch-pixel", type=float, metavar="MM", help="pixel pitch")
    camera.add_argument("--pitch-mla", type=float, metavar="MM", help="micro lens pitch")
    camera.add_argument("--focal-mla", type=float, metavar="MM",
                        help="micro lens focal length (also the MLA-sensor separation)")
    camera.add_argument("--micro-res", type=int, metavar="N",
                        help="pixels per micro image (integer >= 2)")
    camera.add_argument("--focal-main", type=float, metavar="MM", help="main lens focal length")
    camera.add_argument("--hiatus", type=float, metavar="MM",
                        help="principal plane separation of the main lens (default 0)")
    camera.add_argument("--exit-pupil", type=float, metavar="MM",
                        help="exit pupil distance from the MLA")
    focus = parser.add_mutually_exclusive_group()
    focus.add_argument("--focus-dist", type=float, metavar="MM",
                       help="focus distance from the object-side principal plane")
    focus.add_argument("--image-dist", type=float, metavar="MM",
                       help="image distance from the image-side principal plane to the MLA")

    compute = parser.add_argument_group("computations")
    compute.add_argument("--shift", type=float, action="append", metavar="A",
                         help="refocusing shift in pixels; repeatable")
    compute.add_argument("--gap", type=int, metavar="G",
                         help="stereo viewpoint gap in pixels (nonzero integer)")
    compute.add_argument("--disparity", type=float, action="append", metavar="DX",
                         help="triangulation disparity in pixels; repeatable, needs --gap")

    output = parser.add_argument_group("output")
    output.add_argument("--output", choices=("text", "json", "csv"), default="text",
                        help="stdout format (default: text)")
    output.add_argument("--plot", metavar="PATH", help="write an SVG cross section")
    output.add_argument("--scene", metavar="PATH", help="write the scene JSON")
    output.add_argument("--serve", metavar="HOST:PORT",
                        help="run the HTTP service instead of computing")
    return parser


def load_config_file(path: str) -> CameraConfig:
    """Parse and validate a camera parameter file on its own."""
    return CameraConfig.from_dict(_read_config_params(path))


def _read_config_params(path: str) -> dict:
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise SchemaError(f"cannot read config file {path}: {exc}") from exc
    try:
        raw = json.loads(text)
    except json.JSONDecodeError as exc:
        raise SchemaError(
            f"config file {path} is not valid JSON: line {exc.lineno} "
            f"column {exc.colno}: {exc.msg}"
        ) from exc
    if not isinstance(raw, dict):
        raise SchemaError(f"config file {path} must hold a JSON object")
    return raw


_FLAG_FIELDS = (
    ("pitch_pixel", "pixel_pitch"),
    ("pitch_mla", "micro_lens_pitch"),
    ("focal_mla", "micro_lens_focal"),
    ("micro_res", "micro_image_resolution"),
    ("focal_main", "main_lens_focal"),
    ("hiatus", "hiatus"),
    ("exit_pupil", "exit_pupil_distance"),
)


def _merge_config(args: argparse.Namespace) -> CameraConfig:
    raw: dict = {}
    if args.config:
        raw.update(_read_config_params(args.config))
    for flag, field in _FLAG_FIELDS:
        value = getattr(args, flag)
        if value is not None:
            raw[field] = value
    if args.focus_dist is not None or args.image_dist is not None:
        # a focus flag replaces the file's focus specification entirely
        raw.pop("focus_distance", None)
        raw.pop("image_distance", None)
        if args.focus_dist is not None:
            raw["focus_distance"] = args.focus_dist
        else:
            raw["image_distance"] = args.image_dist
    return CameraConfig.from_dict(raw)


def run(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)

    if args.serve is not None:
        from .service import serve

        try:
            serve(args.serve)
        except SchemaError as exc:
            sys.stderr.write(f"{exc.name}: {exc}\n")
            return 2
        return 0

    if args.disparity and args.gap is None:
        parser.print_usage(sys.stderr)
        sys.stderr.write("plenodesign: error: --disparity requires --gap\n")
        return 2
    if args.gap is not None and not args.disparity:
        parser.print_usage(sys.stderr)
        sys.stderr.write("plenodesign: error: --gap requires at least one --disparity\n")
        return 2
    if not args.shift and args.gap is None:
        parser.print_usage(sys.stderr)
        sys.stderr.write(
            "plenodesign: error: nothing to compute; give --shift and/or "
            "--gap with --disparity\n")
        return 2
    if args.plot and not args.shift:
        parser.print_usage(sys.stderr)
        sys.stderr.write("plenodesign: error: --plot needs at least one --shift\n")
        return 2

    try:
        config = _merge_config(args)
    except SchemaError as exc:
        sys.stderr.write(f"{exc.name}: {exc}\n")
        return 2
    except DesignError as exc:
        sys.stderr.write(f"{exc.name}: {exc}\n")
        return 1

    try:
        payload: dict = {"config": config.to_dict()}
        refocus_results = None
        triangulation = None
        if args.shift:
            refocus_results = refocus_series(config, args.shift)
            payload["refocus"] = [refocus_result_to_dict(r) for r in refocus_results]
        if args.gap is not None:
            triangulation = depth_plane_series(config, args.gap, args.disparity)
            payload["triangulation"] = triangulation_result_to_dict(triangulation)

        if args.scene:
            if args.shift:
                scene = build_refocus_scene(config, args.shift)
            else:
                scene = build_triangulation_scene(config, args.gap, args.disparity)
            Path(args.scene).write_text(serialize_scene(scene), encoding="utf-8")
        if args.plot:
            svg = render_svg(build_refocus_scene(config, args.shift))
            Path(args.plot).write_bytes(svg)
    except DesignError as exc:
        sys.stderr.write(f"{exc.name}: {exc}\n")
        return 1

    sys.stdout.write(_format_output(args.output, payload))
    return 0


def _format_output(kind: str, payload: dict) -> str:
    if kind == "json":
        return dump_json(payload) + "\n"
    if kind == "csv":
        return _format_csv(payload)
    return _format_text(payload)


def _fmt_mm(value: float | str | None) -> str:
    if value is None:
        return "-"
    if isinstance(value, str):
        return value
    if math.isinf(value):
        return "Infinity"
    return f"{value:.6f}"


def _format_text(payload: dict) -> str:
    lines = []
    config = payload["config"]
    focus = (f"focus_distance {config['focus_distance']:g} mm"
             if "focus_distance" in config
             else f"image_distance {config['image_distance']:g} mm")
    lines.append(
        f"camera: focal_main {config['main_lens_focal']:g} mm, {focus}, "
        f"pixel {config['pixel_pitch']:g} mm, micro lens {config['micro_lens_pitch']:g} mm "
        f"x {config['micro_image_resolution']} px"
    )
    for entry in payload.get("refocus", ()):
        tag = f"refocus a={entry['a']:g}:"
        if "error" in entry:
            lines.append(f"{tag} {entry['error']} "
                         f"(effective image distance {_fmt_mm(entry['b_a'])} mm)")
            continue
        line = (f"{tag} d_a {_fmt_mm(entry['d_a_from_h1u'])} mm from H1U, "
                f"{_fmt_mm(entry['d_a_from_mla'])} mm from MLA")
        if "dof_near_from_h1u" in entry:
            line += (f"; DOF [{_fmt_mm(entry['dof_near_from_h1u'])}, "
                     f"{_fmt_mm(entry['dof_far_from_h1u'])}] mm from H1U")
        lines.append(line)
    tri = payload.get("triangulation")
    if tri is not None:
        lines.append(
            f"stereo G={tri['G']}: baseline {_fmt_mm(tri['B_G'])} mm, "
            f"entrance pupil {_fmt_mm(tri['z_pupil_from_h1u'])} mm from H1U"
        )
        for plane in tri["planes"]:
            tag = f"  dx={plane['dx']:g}:"
            if "error" in plane:
                lines.append(f"{tag} {plane['error']}")
            else:
                lines.append(f"{tag} Z {_fmt_mm(plane['Z_from_h1u'])} mm from H1U, "
                             f"{_fmt_mm(plane['Z_from_mla'])} mm from MLA")
    return "\n".join(lines) + "\n"


_CSV_COLUMNS = (
    "kind", "a", "dx", "G", "d_a_prime", "b_a", "y",
    "d_a_from_h1u", "d_a_from_mla",
    "dof_near_from_h1u", "dof_near_from_mla", "dof_far_from_h1u", "dof_far_from_mla",
    "B_G", "z_pupil_from_h1u", "z_pupil_from_mla", "Z_from_h1u", "Z_from_mla", "error",
)


def _format_csv(payload: dict) -> str:
    buffer = io.StringIO()
    writer = csv.DictWriter(buffer, fieldnames=_CSV_COLUMNS, lineterminator="\n")
    writer.writeheader()
    for entry in payload.get("refocus", ()):
        writer.writerow({"kind": "refocus", **{k: _csv_cell(v) for k, v in entry.items()}})
    tri = payload.get("triangulation")
    if tri is not None:
        head = {k: _csv_cell(v) for k, v in tri.items() if k != "planes"}
        writer.writerow({"kind": "baseline", **head})
        for plane in tri["planes"]:
            writer.writerow({"kind": "plane", "G": tri["G"],
                             **{k: _csv_cell(v) for k, v in plane.items()}})
    return buffer.getvalue()


def _csv_cell(value):
    if isinstance(value, float):
        return repr(value)
    return value


def main() -> None:
    sys.exit(run(sys.argv[1:]))


if __name__ == "__main__":
    main()
