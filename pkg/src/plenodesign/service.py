"""Stateless JSON-over-HTTP evaluation service.

Every request carries the full camera configuration, so responses
depend only on the request body.  Handlers are plain functions from a
request dict to (status, body dict); the HTTP layer only routes,
parses, and serializes, which keeps identical requests byte-identical
regardless of ordering or concurrency.

Run with ``python -m plenodesign.service`` (bind address from the
SERVE_ADDR environment variable) or ``plenodesign --serve HOST:PORT``.
"""

from __future__ import annotations

import json
import os
import sys
from http.server import BaseHTTPRequestHandler, ThreadingHTTPServer

from . import __version__
from .errors import DesignError, EmptySeries, SchemaError
from .geometry import DEFAULT_PARAMETERS, CameraConfig
from .refocus import refocus_series
from .scene import build_refocus_scene, build_triangulation_scene
from .serialize import refocus_result_to_dict, triangulation_result_to_dict
from .triangulate import depth_plane_series

DEFAULT_ADDRESS = "127.0.0.1:8080"


def handle_defaults() -> tuple[int, dict]:
    return 200, {"ok": True, "result": dict(DEFAULT_PARAMETERS)}


def handle_refocus(request: dict) -> tuple[int, dict]:
    """Refocus series for {config, a_list, include_scene?}.

    200 with all elements computed; 422 when any element carries an
    in-band error (the full list still ships in ``result``).
    """
    config = _request_config(request)
    shifts = _number_list(request, "a_list")
    results = refocus_series(config, shifts)
    body: dict = {"ok": True, "result": [refocus_result_to_dict(r) for r in results]}
    if request.get("include_scene"):
        body["scene"] = build_refocus_scene(config, shifts).to_dict()
    return _with_element_errors(body, [entry.error for entry in results])


def handle_triangulate(request: dict) -> tuple[int, dict]:
    """Baseline and depth planes for {config, G, dx_list, include_scene?}."""
    config = _request_config(request)
    gap = request.get("G")
    if gap is None:
        raise SchemaError("request needs an integer field 'G'")
    disparities = _number_list(request, "dx_list")
    result = depth_plane_series(config, gap, disparities)
    body: dict = {"ok": True, "result": triangulation_result_to_dict(result)}
    if request.get("include_scene"):
        body["scene"] = build_triangulation_scene(config, gap, disparities).to_dict()
    return _with_element_errors(body, [plane.error for plane in result.planes])


def _request_config(request: dict) -> CameraConfig:
    if not isinstance(request, dict):
        raise SchemaError("request body must be a JSON object")
    config = request.get("config")
    if config is None:
        raise SchemaError("request needs a 'config' object")
    return CameraConfig.from_dict(config)


def _number_list(request: dict, key: str) -> list[float]:
    values = request.get(key)
    if values is None or not isinstance(values, list):
        raise SchemaError(f"request needs a list field {key!r}")
    if not values:
        raise EmptySeries(f"{key} must not be empty")
    for value in values:
        if isinstance(value, bool) or not isinstance(value, (int, float)):
            raise SchemaError(f"{key} entries must be numbers")
    return [float(v) for v in values]


def _with_element_errors(body: dict, errors) -> tuple[int, dict]:
    first = next((e for e in errors if e is not None), None)
    if first is None:
        return 200, body
    body["ok"] = False
    body["error"] = {"name": first, "message": "one or more elements are degenerate; "
                                               "see per-element error fields"}
    return 422, body


def _error_body(exc: DesignError) -> dict:
    return {"ok": False, "error": {"name": exc.name, "message": str(exc)}}


_POST_ROUTES = {
    "/api/v1/refocus": handle_refocus,
    "/api/v1/triangulate": handle_triangulate,
}


class ServiceHandler(BaseHTTPRequestHandler):
    server_version = f"plenodesign/{__version__}"
    protocol_version = "HTTP/1.1"

    def log_message(self, format, *args):  # noqa: A002 - stdlib signature
        pass

    @property
    def _cors_origin(self) -> str:
        return getattr(self.server, "cors_origin", "*")

    def _send(self, status: int, body: bytes, content_type: str = "application/json") -> None:
        self.send_response(status)
        self.send_header("Content-Type", content_type)
        self.send_header("Content-Length", str(len(body)))
        self.send_header("Access-Control-Allow-Origin", self._cors_origin)
        self.end_headers()
        self.wfile.write(body)

    def _send_json(self, status: int, payload: dict) -> None:
        text = json.dumps(payload, sort_keys=True, separators=(",", ":"), allow_nan=False)
        self._send(status, text.encode("utf-8"))

    def do_GET(self) -> None:
        if self.path == "/healthz":
            self._send(200, b"ok", content_type="text/plain; charset=utf-8")
        elif self.path == "/api/v1/defaults":
            status, body = handle_defaults()
            self._send_json(status, body)
        else:
            self._send_json(404, {"ok": False, "error": {
                "name": "NotFound", "message": f"no route for GET {self.path}"}})

    def do_POST(self) -> None:
        handler = _POST_ROUTES.get(self.path)
        if handler is None:
            self._send_json(404, {"ok": False, "error": {
                "name": "NotFound", "message": f"no route for POST {self.path}"}})
            return
        try:
            request = self._read_json_body()
            status, body = handler(request)
        except DesignError as exc:
            status, body = 400, _error_body(exc)
        self._send_json(status, body)

    def do_OPTIONS(self) -> None:
        self.send_response(204)
        self.send_header("Access-Control-Allow-Origin", self._cors_origin)
        self.send_header("Access-Control-Allow-Methods", "GET, POST, OPTIONS")
        self.send_header("Access-Control-Allow-Headers", "Content-Type")
        self.send_header("Content-Length", "0")
        self.end_headers()

    def _read_json_body(self) -> dict:
        try:
            length = int(self.headers.get("Content-Length", "0"))
        except ValueError as exc:
            raise SchemaError("invalid Content-Length header") from exc
        if length <= 0:
            raise SchemaError("request body is empty")
        raw = self.rfile.read(length)
        try:
            parsed = json.loads(raw)
        except json.JSONDecodeError as exc:
            raise SchemaError(f"request body is not valid JSON: {exc.msg}") from exc
        if not isinstance(parsed, dict):
            raise SchemaError("request body must be a JSON object")
        return parsed


def create_server(host: str = "127.0.0.1", port: int = 0,
                  cors_origin: str | None = None) -> ThreadingHTTPServer:
    """Bound but not yet serving; port 0 picks an ephemeral port."""
    server = ThreadingHTTPServer((host, port), ServiceHandler)
    server.cors_origin = cors_origin or os.environ.get("PLENODESIGN_CORS", "*")
    return server


def serve(address: str | None = None) -> None:
    """Serve forever on ``address`` (HOST:PORT), SERVE_ADDR, or the default."""
    address = address or os.environ.get("SERVE_ADDR") or DEFAULT_ADDRESS
    host, _, port_text = address.rpartition(":")
    if not host or not port_text.isdigit():
        raise SchemaError(f"serve address must be HOST:PORT, got {address!r}")
    server = create_server(host, int(port_text))
    sys.stderr.write(f"plenodesign service on http://{host}:{port_text}\n")
    try:
        server.serve_forever()
    except KeyboardInterrupt:
        pass
    finally:
        server.server_close()


if __name__ == "__main__":
    serve()
