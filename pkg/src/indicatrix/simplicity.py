"""Self-intersection predicates, vertex deletion, and region triangulation.

Two non-adjacent minor arcs cross iff a four-determinant sign pattern
holds; the pattern includes two extra sign agreements beyond plain
plane-separation so that an arc crossing the *antipode* of another arc is
not reported as a crossing.

The triangulation realizes the greedy chord-insertion construction: walk
vertex pairs in ascending index order and keep every chord that crosses
neither the polygon nor previously accepted chords.  For balanced simple
polygons in general position this always closes into spherical triangles
that tile the sphere, two regions' worth; a failure to close is surfaced
as TriangulationFailed, never patched silently.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from . import predicates as pr
from .errors import (
    AntipodalBridge,
    DegenerateSign,
    InvalidInput,
    NotBalanced,
    NotSimple,
    TooFewPoints,
    TriangulationFailed,
)
from .polygons import SphericalPolygon
from .predicates import Sign, Vec3

AREA_TOL = 1e-8


def _on_arc_inclusive(p, a, b, slack=1e-9) -> bool:
    return pr.vec_angle(a, p) + pr.vec_angle(p, b) <= pr.vec_angle(a, b) + slack


def _coplanar_arcs_overlap(a, b, c, d) -> bool:
    """Overlap of two minor arcs on one great circle (shared plane)."""
    return (_on_arc_inclusive(c, a, b) or _on_arc_inclusive(d, a, b)
            or _on_arc_inclusive(a, c, d) or _on_arc_inclusive(b, c, d))


def _metric_arcs_cross(a, b, c, d) -> bool:
    """Metric crossing decision for sign-degenerate configurations."""
    fa, fb, fc, fd = (pr.to_float(v) for v in (a, b, c, d))
    n1 = pr.cross(fa, fb)
    n2 = pr.cross(fc, fd)
    line = pr.cross(n1, n2)
    if pr.norm(line) <= 1e-12 * pr.norm(n1) * pr.norm(n2):
        return _coplanar_arcs_overlap(fa, fb, fc, fd)
    line = pr.normalize(line)
    for cand in (line, pr.neg(line)):
        if _on_arc_inclusive(cand, fa, fb) and _on_arc_inclusive(cand, fc, fd):
            return True
    return False


def minor_arcs_cross(a: Vec3, b: Vec3, c: Vec3, d: Vec3,
                     tol: float = pr.DEGENERACY_TOL,
                     on_degenerate: str = "raise") -> bool:
    """Proper crossing of minor arcs (a,b) and (c,d) with disjoint endpoints.

    True iff s[a,b,c] = s[b,c,d] differs from s[a,b,d] = s[a,c,d].  The two
    equalities reject the configuration where one arc meets the antipodal
    image of the other, which plane-separation alone cannot distinguish.

    A zero sign normally raises DegenerateSign.  ``on_degenerate="metric"``
    instead resolves the configuration by plane-line intersection and angle
    bounds; centrally symmetric polygons need this, since an edge and its
    antipodal image share a great circle and defeat any sign pattern.
    """
    s_abc = pr.orientation(a, b, c, tol)
    s_abd = pr.orientation(a, b, d, tol)
    s_bcd = pr.orientation(b, c, d, tol)
    s_acd = pr.orientation(a, c, d, tol)
    if Sign.ZERO in (s_abc, s_abd, s_bcd, s_acd):
        if on_degenerate == "metric":
            return _metric_arcs_cross(a, b, c, d)
        raise DegenerateSign("degenerate sign while testing arc crossing")
    return s_abc is s_bcd and s_abd is s_acd and s_abc is not s_abd


def arcs_intersect(q: SphericalPolygon, i: int, j: int,
                   tol: float = pr.DEGENERACY_TOL,
                   on_degenerate: str = "raise") -> bool:
    """Whether non-adjacent edges i and j of ``q`` cross."""
    n = len(q)
    i %= n
    j %= n
    if i == j or (i + 1) % n == j or (j + 1) % n == i:
        raise InvalidInput(f"edges {i} and {j} are adjacent or equal")
    return minor_arcs_cross(q.at(i), q.at(i + 1), q.at(j), q.at(j + 1), tol,
                            on_degenerate)


def is_simple(q: SphericalPolygon, tol: float = pr.DEGENERACY_TOL,
              on_degenerate: str = "raise") -> bool:
    """True iff no two non-adjacent edges of ``q`` cross (O(n^2) pairs)."""
    n = len(q)
    for i in range(n):
        for j in range(i + 2, n):
            if i == 0 and j == n - 1:
                continue
            if minor_arcs_cross(q.at(i), q.at(i + 1), q.at(j), q.at(j + 1), tol,
                                on_degenerate):
                return False
    return True


def delete_vertex(q: SphericalPolygon, i: int) -> SphericalPolygon:
    """Polygon with vertex i removed and the bridging edge (i-1, i+1) added."""
    n = len(q)
    if n < 4:
        raise TooFewPoints("cannot delete a vertex from a polygon with fewer than 4")
    i %= n
    d = float(pr.dot(q.at(i - 1), q.at(i + 1)))
    if d <= -1.0 + 1e-12:
        raise AntipodalBridge(
            f"vertices {(i - 1) % n} and {(i + 1) % n} are antipodal; bridge undefined"
        )
    return SphericalPolygon(q.vertices[:i] + q.vertices[i + 1:])


def good_vertices(q: SphericalPolygon, tol: float = pr.DEGENERACY_TOL) -> list[int]:
    """Vertices whose deletion leaves the polygon simple (brute force)."""
    return [i for i in range(len(q)) if is_simple(delete_vertex(q, i), tol)]


def spherical_triangle_area(a: Vec3, b: Vec3, c: Vec3) -> float:
    """Area of the minor-arc triangle abc by spherical excess."""
    fa, fb, fc = pr.to_float(a), pr.to_float(b), pr.to_float(c)

    def corner(u, v, w):
        tv = pr.sub(v, pr.scale(u, pr.dot(u, v)))
        tw = pr.sub(w, pr.scale(u, pr.dot(u, w)))
        return pr.vec_angle(tv, tw)

    return corner(fa, fb, fc) + corner(fb, fc, fa) + corner(fc, fa, fb) - math.pi


@dataclass(frozen=True)
class SphericalTriangulation:
    """Sphere tiling by vertex-spanned triangles, tagged by polygon region."""

    triangles: tuple[tuple[int, int, int], ...]
    region: tuple[int, ...]
    areas: tuple[float, ...]
    chords: tuple[tuple[int, int], ...]

    def area_sum(self) -> float:
        return float(sum(self.areas))

    def region_area(self, tag: int) -> float:
        return float(sum(a for a, r in zip(self.areas, self.region) if r == tag))


def _rotation_order(points, neighbors):
    """Sorted neighbor lists by tangent angle, ccw as seen from outside."""
    order = {}
    for v, nbrs in neighbors.items():
        u = np.asarray(pr.to_float(points[v]))
        pick = np.zeros(3)
        pick[int(np.argmin(np.abs(u)))] = 1.0
        e1 = np.cross(u, pick)
        e1 /= np.linalg.norm(e1)
        e2 = np.cross(u, e1)

        def theta(w):
            t = np.asarray(pr.to_float(points[w]), dtype=float)
            t = t - (t @ u) * u
            return math.atan2(t @ e2, t @ e1)

        order[v] = sorted(nbrs, key=theta)
    return order


def _face_cycles(points, arcs):
    """Faces of the non-crossing arc arrangement, each traced with the
    interior on its left; returns (faces, face_of_halfedge)."""
    neighbors = {}
    for a, b in arcs:
        neighbors.setdefault(a, []).append(b)
        neighbors.setdefault(b, []).append(a)
    order = _rotation_order(points, neighbors)
    position = {v: {w: k for k, w in enumerate(nbrs)} for v, nbrs in order.items()}

    faces = []
    face_of = {}
    for a, b in list(arcs):
        for he in ((a, b), (b, a)):
            if he in face_of:
                continue
            cycle = []
            cur = he
            while cur not in face_of:
                face_of[cur] = len(faces)
                cycle.append(cur[0])
                u, v = cur
                nbrs = order[v]
                k = position[v][u]
                nxt = nbrs[(k - 1) % len(nbrs)]
                cur = (v, nxt)
            if cur != he:
                raise TriangulationFailed("face traversal did not close")
            faces.append(tuple(cycle))
    return faces, face_of


def triangulate_regions(q: SphericalPolygon, tol: float = pr.DEGENERACY_TOL,
                        area_tol: float = AREA_TOL) -> SphericalTriangulation:
    """Greedy chord insertion into both regions of a balanced simple polygon.

    Crossing tests inside the construction fall back to the metric decision
    on degenerate sign patterns, so exactly centrally symmetric polygons
    (which always contain collinear triples through antipodal pairs) still
    triangulate; the result is validated against the tiling invariants
    afterwards regardless of the route taken.
    """
    from .cones import is_balanced

    n = len(q)
    if n < 4:
        raise TooFewPoints("triangulation needs >= 4 vertices")
    if not is_simple(q, tol, on_degenerate="metric"):
        raise NotSimple("polygon has self-intersections")
    if not is_balanced(q, tol, check_preconditions=False):
        raise NotBalanced("polygon is contained in a closed hemisphere")

    arcs: list[tuple[int, int]] = [(i, (i + 1) % n) for i in range(n)]
    chords: list[tuple[int, int]] = []
    for i in range(n):
        for j in range(i + 2, n):
            if i == 0 and j == n - 1:
                continue
            ui, uj = q.at(i), q.at(j)
            if float(pr.dot(ui, uj)) <= -1.0 + 1e-12:
                continue  # antipodal pair: the chord has no minor arc
            blocked = False
            for a, b in arcs:
                if a in (i, j) or b in (i, j):
                    continue
                if minor_arcs_cross(ui, uj, q.at(a), q.at(b), tol,
                                    on_degenerate="metric"):
                    blocked = True
                    break
            if not blocked:
                arcs.append((i, j))
                chords.append((i, j))

    faces, face_of = _face_cycles(q.vertices, arcs)
    for f in faces:
        if len(f) != 3 or len(set(f)) != 3:
            raise TriangulationFailed(
                f"non-triangular face {f}; greedy chord insertion did not close"
            )
    if len(faces) != 2 * n - 4:
        raise TriangulationFailed(
            f"expected {2 * n - 4} triangles, got {len(faces)}"
        )

    areas = tuple(spherical_triangle_area(q.at(a), q.at(b), q.at(c))
                  for a, b, c in faces)
    total = float(sum(areas))
    if abs(total - 4.0 * math.pi) > max(area_tol, 1e-12 * n):
        raise TriangulationFailed(
            f"triangle areas sum to {total:.12f}, expected 4*pi"
        )

    # 2-color faces: chords join same-region triangles, polygon edges opposite.
    polygon_edges = {frozenset(((i, (i + 1) % n))) for i in range(n)}
    color = [0] * len(faces)
    seed = face_of[(0, 1)]
    color[seed] = 1
    stack = [seed]
    while stack:
        f = stack.pop()
        a, b, c = faces[f]
        for u, v in ((a, b), (b, c), (c, a)):
            g = face_of[(v, u)]
            same = frozenset((u, v)) not in polygon_edges
            want = color[f] if same else 3 - color[f]
            if color[g] == 0:
                color[g] = want
                stack.append(g)
            elif color[g] != want:
                raise TriangulationFailed("inconsistent region coloring")
    if any(c == 0 for c in color):
        raise TriangulationFailed("region coloring did not reach every triangle")

    return SphericalTriangulation(tuple(faces), tuple(color), areas, tuple(chords))


def region_dual_edges(tri: SphericalTriangulation) -> dict[int, list[tuple[int, int]]]:
    """Dual-graph edges per region: triangles sharing a chord."""
    arc_faces: dict[frozenset, list[int]] = {}
    for fi, (a, b, c) in enumerate(tri.triangles):
        for u, v in ((a, b), (b, c), (c, a)):
            arc_faces.setdefault(frozenset((u, v)), []).append(fi)
    out: dict[int, list[tuple[int, int]]] = {1: [], 2: []}
    chordset = {frozenset(ch) for ch in tri.chords}
    for arc, fs in arc_faces.items():
        if arc in chordset:
            if len(fs) != 2 or tri.region[fs[0]] != tri.region[fs[1]]:
                raise TriangulationFailed("chord not shared by two same-region triangles")
            out[tri.region[fs[0]]].append((fs[0], fs[1]))
    return out
