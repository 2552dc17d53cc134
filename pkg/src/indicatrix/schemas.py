"""JSON wire formats shared by the service, the CLI, and files on disk.

Polygon schema: ``{"kind": "space"|"spherical", "vertices": [[x, y, z], ...]}``
where coordinates are JSON numbers (doubles) or strings; strings parse as
exact rationals ("0.6" and "3/5" both mean 3/5).  Spherical vertices given
as floats are renormalized on load when within NORM_TOL of unit length and
rejected otherwise; exact vertices must be exactly unit.

All indices in emitted JSON are one-based.
"""

from __future__ import annotations

import math

from . import predicates as pr
from .errors import InvalidInput
from .polygons import NORM_TOL, SpacePolygon, SphericalPolygon
from .reduction import ReductionTrace
from .simplicity import SphericalTriangulation

ARC_SAMPLES = 33


def load_polygon(data: dict) -> SpacePolygon | SphericalPolygon:
    if not isinstance(data, dict):
        raise InvalidInput("polygon payload must be a JSON object")
    kind = data.get("kind")
    raw = data.get("vertices")
    if kind not in ("space", "spherical"):
        raise InvalidInput(f"kind must be 'space' or 'spherical', got {kind!r}")
    if not isinstance(raw, (list, tuple)) or not raw:
        raise InvalidInput("vertices must be a non-empty array")
    pts = [pr.parse_point(v) for v in raw]
    if kind == "space":
        return SpacePolygon(pts)
    fixed = []
    for i, v in enumerate(pts):
        if pr.is_exact(v):
            if pr.norm_sq(v) != 1:
                raise InvalidInput(f"exact spherical vertex {i + 1} is not exactly unit")
            fixed.append(v)
        else:
            n = pr.norm(v)
            if abs(n - 1.0) > NORM_TOL:
                raise InvalidInput(
                    f"spherical vertex {i + 1} has norm {n:.9f}, outside tolerance {NORM_TOL}"
                )
            fixed.append((v[0] / n, v[1] / n, v[2] / n))
    return SphericalPolygon(fixed)


def dump_polygon(polygon: SpacePolygon | SphericalPolygon) -> dict:
    kind = "space" if isinstance(polygon, SpacePolygon) else "spherical"
    return {"kind": kind, "vertices": [pr.format_point(v) for v in polygon.vertices]}


def trace_to_json(trace: ReductionTrace) -> dict:
    return {
        "steps": [
            {"deleted": s.deleted_index + 1,
             "before": s.inflections_before,
             "after": s.inflections_after}
            for s in trace.steps
        ],
        "terminal_epsilon": trace.terminal_epsilon.symbols(),
        "initial_inflections": trace.initial_inflections,
        "terminal": dump_polygon(trace.terminal),
    }


def triangulation_to_json(tri: SphericalTriangulation) -> dict:
    return {
        "triangles": [[a + 1, b + 1, c + 1] for a, b, c in tri.triangles],
        "region": list(tri.region),
    }


def _slerp(a, b, samples: int) -> list[list[float]]:
    fa, fb = pr.to_float(a), pr.to_float(b)
    theta = pr.vec_angle(fa, fb)
    out = []
    for k in range(samples):
        t = k / (samples - 1)
        if theta < 1e-12:
            p = fa
        else:
            s = math.sin(theta)
            p = pr.add(pr.scale(fa, math.sin((1.0 - t) * theta) / s),
                       pr.scale(fb, math.sin(t * theta) / s))
            p = pr.normalize(p)
        out.append([p[0], p[1], p[2]])
    return out


def _lerp(a, b, samples: int) -> list[list[float]]:
    fa, fb = pr.to_float(a), pr.to_float(b)
    return [[fa[0] + (fb[0] - fa[0]) * k / (samples - 1),
             fa[1] + (fb[1] - fa[1]) * k / (samples - 1),
             fa[2] + (fb[2] - fa[2]) * k / (samples - 1)] for k in range(samples)]


def plot_polylines(polygon: SpacePolygon | SphericalPolygon,
                   samples: int = ARC_SAMPLES) -> list[list[list[float]]]:
    """Per-edge polylines: great-circle samples for spherical polygons,
    straight segments for space polygons."""
    if samples < 2:
        raise InvalidInput("need at least 2 samples per edge")
    n = len(polygon)
    interp = _slerp if isinstance(polygon, SphericalPolygon) else _lerp
    return [interp(polygon.at(i), polygon.at(i + 1), samples) for i in range(n)]
