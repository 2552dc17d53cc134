"""Region areas, the equal-area inflection bound, and central symmetry.

Areas come from the spherical Gauss-Bonnet relation for geodesic polygons:
the region to the left of the traversal has area 2*pi minus the sum of
signed exterior turning angles.  A polygon lying in a great circle follows
the planar convention: it counts as balanced and every one of its edges
counts as an inflection.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from . import predicates as pr
from .errors import (
    DegenerateAngle,
    NotCentrallySymmetric,
    NotSimple,
    TheoremViolation,
    TooFewPoints,
)
from .polygons import SphericalPolygon, epsilon_sequence, spherical_inflections
from .predicates import Vec3
from .simplicity import is_simple

EQUAL_AREA_TOL = 1e-8
PLANAR_TOL = 1e-9
VERTEX_MATCH_TOL = 1e-9


@dataclass(frozen=True)
class RegionAreas:
    """Steradian areas of the two regions cut out by a simple polygon.

    ``area1`` is the region to the left of the traversal direction.
    """

    area1: float
    area2: float


@dataclass(frozen=True)
class TennisBallReport:
    equal_area: bool
    inflections: int
    theorem_holds: bool
    planar: bool
    areas: RegionAreas


@dataclass(frozen=True)
class MobiusReport:
    inflections: int
    paired: tuple[tuple[int, int], ...]
    theorem_holds: bool
    planar: bool


def _plane_normal(q: SphericalPolygon) -> np.ndarray:
    m = np.asarray([pr.to_float(v) for v in q.vertices])
    _, _, vt = np.linalg.svd(m, full_matrices=False)
    return vt[-1]


def is_planar(q: SphericalPolygon, planar_tol: float = PLANAR_TOL) -> bool:
    """Whether all vertices lie on one spherical line (a great circle)."""
    if all(pr.is_exact(v) for v in q.vertices):
        normal = None
        for i in range(1, len(q)):
            c = pr.cross(q.at(0), q.at(i))
            if c != (0, 0, 0):
                normal = c
                break
        if normal is None:
            return True
        return all(pr.dot(normal, v) == 0 for v in q.vertices)
    m = np.asarray([pr.to_float(v) for v in q.vertices])
    return bool(np.max(np.abs(m @ _plane_normal(q))) <= planar_tol)


def is_simple_planar(q: SphericalPolygon) -> bool:
    """Simplicity for a great-circle polygon: the minor arcs must wind
    around the circle monotonically and exactly once."""
    m = np.asarray([pr.to_float(v) for v in q.vertices])
    normal = _plane_normal(q)
    e1 = m[0] / np.linalg.norm(m[0])
    e2 = np.cross(normal, e1)
    angles = np.arctan2(m @ e2, m @ e1)
    steps = np.diff(np.concatenate([angles, angles[:1]]))
    steps = (steps + math.pi) % (2.0 * math.pi) - math.pi  # each in (-pi, pi)
    if np.all(steps > 0) or np.all(steps < 0):
        return abs(abs(float(steps.sum())) - 2.0 * math.pi) < 1e-6
    return False


def _turning_angle(prev: Vec3, here: Vec3, nxt: Vec3) -> float:
    """Signed exterior angle at ``here`` between incoming and outgoing arcs."""
    h = np.asarray(pr.to_float(here))
    a = np.asarray(pr.to_float(prev))
    b = np.asarray(pr.to_float(nxt))
    t_in = -(a - (a @ h) * h)
    t_out = b - (b @ h) * h
    ni, no = np.linalg.norm(t_in), np.linalg.norm(t_out)
    if ni < 1e-12 or no < 1e-12:
        raise DegenerateAngle("consecutive vertices coincide or are antipodal")
    t_in /= ni
    t_out /= no
    return math.atan2(float(np.cross(t_in, t_out) @ h), float(t_in @ t_out))


def region_areas(q: SphericalPolygon, tol: float = pr.DEGENERACY_TOL,
                 planar_tol: float = PLANAR_TOL) -> RegionAreas:
    """Gauss-Bonnet areas of the two regions of a simple polygon."""
    if is_planar(q, planar_tol):
        if not is_simple_planar(q):
            raise NotSimple("polygon has self-intersections")
        return RegionAreas(2.0 * math.pi, 2.0 * math.pi)
    if not is_simple(q, tol, on_degenerate="metric"):
        raise NotSimple("polygon has self-intersections")
    turning = sum(_turning_angle(q.at(i - 1), q.at(i), q.at(i + 1))
                  for i in range(len(q)))
    area1 = 2.0 * math.pi - turning
    return RegionAreas(area1, 4.0 * math.pi - area1)


def tennis_ball_check(q: SphericalPolygon, tol: float = pr.DEGENERACY_TOL,
                      equal_area_tol: float = EQUAL_AREA_TOL,
                      planar_tol: float = PLANAR_TOL) -> TennisBallReport:
    """Equal-area simple polygons must carry at least 4 inflections."""
    if len(q) < 4:
        raise TooFewPoints(f"the equal-area bound is stated for n >= 4, got {len(q)}")
    if is_planar(q, planar_tol):
        if not is_simple_planar(q):
            raise NotSimple("polygon has self-intersections")
        n = len(q)
        return TennisBallReport(True, n, n >= 4, True,
                                RegionAreas(2.0 * math.pi, 2.0 * math.pi))
    areas = region_areas(q, tol, planar_tol)
    equal = abs(areas.area1 - areas.area2) <= equal_area_tol
    inflections = len(spherical_inflections(q, tol))
    holds = (not equal) or inflections >= 4
    return TennisBallReport(equal, inflections, holds, False, areas)


def is_centrally_symmetric(q: SphericalPolygon,
                           vertex_match_tol: float = VERTEX_MATCH_TOL) -> bool:
    """True iff n = 2m and u_{i+m} = -u_i for every i."""
    n = len(q)
    if n % 2 != 0:
        return False
    m = n // 2
    for i in range(m):
        diff = pr.add(q.at(i + m), q.at(i))
        if pr.is_exact(diff):
            if diff != (0, 0, 0):
                return False
        elif pr.norm(diff) > vertex_match_tol:
            return False
    return True


def mobius_check(q: SphericalPolygon, tol: float = pr.DEGENERACY_TOL,
                 planar_tol: float = PLANAR_TOL,
                 vertex_match_tol: float = VERTEX_MATCH_TOL) -> MobiusReport:
    """Simple centrally symmetric polygons carry at least 6 inflections.

    Also verifies the pairing structure: edge {i, i+1} is an inflection iff
    its antipodal edge {i+m, i+m+1} is, with opposite sign-change direction.
    A breach of the pairing would contradict the half-turn antisymmetry of
    the determinant sequence, so it surfaces as a TheoremViolation finding.
    """
    n = len(q)
    if n < 6:
        raise TooFewPoints(f"the symmetric bound is stated for n >= 6, got {n}")
    if not is_centrally_symmetric(q, vertex_match_tol):
        raise NotCentrallySymmetric("u_{i+m} != -u_i for some i")
    m = n // 2
    if is_planar(q, planar_tol):
        if not is_simple_planar(q):
            raise NotSimple("polygon has self-intersections")
        paired = tuple((i, i + m) for i in range(m))
        return MobiusReport(n, paired, n >= 6, True)
    if not is_simple(q, tol, on_degenerate="metric"):
        raise NotSimple("polygon has self-intersections")

    eps = epsilon_sequence(q, tol).signs
    inflection_edges = [i for i in range(n) if eps[(i - 1) % n] is not eps[i]]
    edge_set = set(inflection_edges)
    paired = []
    instance = {"kind": "spherical",
                "vertices": [pr.format_point(v) for v in q.vertices]}
    for i in inflection_edges:
        partner = (i + m) % n
        if partner not in edge_set:
            raise TheoremViolation(
                f"inflection at edge {i} has no antipodal partner at {partner}",
                payload={"claim": "symmetric-pairing", "instance": instance,
                         "edge": i, "partner": partner},
            )
        if eps[(i - 1) % n] is not eps[(partner - 1) % n].flipped():
            raise TheoremViolation(
                f"sign-change direction at edges {i} and {partner} does not flip",
                payload={"claim": "symmetric-pairing", "instance": instance,
                         "edge": i, "partner": partner},
            )
        if i < partner:
            paired.append((i, partner))
    return MobiusReport(len(inflection_edges), tuple(paired),
                        len(inflection_edges) >= 6, False)
