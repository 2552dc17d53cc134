"""Polygon types, the tangent indicatrix, and inflection/flattening counting.

A space polygon is a closed polygonal line in R^3 held as a cyclic vertex
list.  Its tangent indicatrix is the spherical polygon of normalized edge
directions; inflections of the indicatrix correspond index-for-index to
flattenings of the space polygon, which both modules compute independently
so tests can cross-check them.

Indices are zero-based everywhere in this package; the CLI and the service
convert to one-based indices at the boundary.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Iterator, Sequence

import numpy as np

from . import predicates as pr
from .errors import (
    AntipodalConsecutive,
    ConsecutiveCollinear,
    DegenerateEdge,
    DegenerateInput,
    DegenerateSequence,
    DegenerateTriple,
    GeneralPositionViolated,
    NotGeneric,
    NotSimple,
    PerturbationFailed,
    TooFewPoints,
)
from .predicates import Sign, Vec3

# Norm slack accepted on load/construction for spherical vertices.
NORM_TOL = 1e-6
# Parallel/antiparallel guard for consecutive spherical vertices.
_PARALLEL_EPS = 1e-12
# Edge shorter than this cannot be normalized meaningfully.
EDGE_TOL = 1e-12

PERTURB_MAGNITUDE = 1e-6
PERTURB_MAX_RETRIES = 64


class SpacePolygon:
    """Closed polygon [v1, ..., vn] in R^3, n >= 4, indices mod n."""

    __slots__ = ("vertices", "__dict__")

    def __init__(self, vertices: Iterable[Sequence]):
        verts = tuple(tuple(v) for v in vertices)
        if len(verts) < 4:
            raise TooFewPoints(f"space polygon needs >= 4 vertices, got {len(verts)}")
        for v in verts:
            if len(v) != 3 or not pr.is_finite(v):
                raise DegenerateInput(f"bad vertex {v!r}")
        n = len(verts)
        for i in range(n):
            if verts[i] == verts[(i + 1) % n]:
                raise DegenerateEdge(f"vertices {i} and {(i + 1) % n} coincide")
        self.vertices = verts

    def __len__(self) -> int:
        return len(self.vertices)

    def __iter__(self) -> Iterator[Vec3]:
        return iter(self.vertices)

    def at(self, i: int) -> Vec3:
        return self.vertices[i % len(self.vertices)]

    def edge(self, i: int) -> Vec3:
        """Edge vector e_i from v_i to v_{i+1}."""
        return pr.sub(self.at(i + 1), self.at(i))

    def translated(self, offset: Sequence) -> "SpacePolygon":
        c = tuple(offset)
        return SpacePolygon(pr.add(v, c) for v in self.vertices)

    def __repr__(self) -> str:
        return f"SpacePolygon(n={len(self)})"


class SphericalPolygon:
    """Closed spherical polygon [u1, ..., un] with minor-arc edges.

    Vertices must be unit within NORM_TOL and consecutive vertices must be
    neither equal nor antipodal, so every edge is a well-defined minor arc.
    """

    __slots__ = ("vertices", "__dict__")

    def __init__(self, vertices: Iterable[Sequence]):
        verts = tuple(tuple(v) for v in vertices)
        if len(verts) < 3:
            raise TooFewPoints(f"spherical polygon needs >= 3 vertices, got {len(verts)}")
        for v in verts:
            if len(v) != 3 or not pr.is_finite(v):
                raise DegenerateInput(f"bad vertex {v!r}")
            if abs(float(pr.norm_sq(v)) - 1.0) > 3 * NORM_TOL:
                raise DegenerateInput(f"vertex {v!r} is not unit within tolerance")
        n = len(verts)
        for i in range(n):
            d = float(pr.dot(verts[i], verts[(i + 1) % n]))
            if d >= 1.0 - _PARALLEL_EPS:
                raise DegenerateInput(f"consecutive vertices {i}, {(i + 1) % n} coincide")
            if d <= -1.0 + _PARALLEL_EPS:
                raise AntipodalConsecutive(
                    f"consecutive vertices {i}, {(i + 1) % n} are antipodal"
                )
        self.vertices = verts

    def __len__(self) -> int:
        return len(self.vertices)

    def __iter__(self) -> Iterator[Vec3]:
        return iter(self.vertices)

    def at(self, i: int) -> Vec3:
        return self.vertices[i % len(self.vertices)]

    @cached_property
    def is_general_position(self) -> bool:
        """No three vertices on a common spherical line (= great circle)."""
        for i, j, k in itertools.combinations(range(len(self.vertices)), 3):
            if pr.orientation(self.vertices[i], self.vertices[j], self.vertices[k]) is Sign.ZERO:
                return False
        return True

    def require_general_position(self) -> None:
        if not self.is_general_position:
            raise GeneralPositionViolated("three vertices lie on a common spherical line")

    def __repr__(self) -> str:
        return f"SphericalPolygon(n={len(self)})"


@dataclass(frozen=True)
class EpsilonSequence:
    """Cyclic sequence of orientation signs [u_i, u_{i+1}, u_{i+2}]."""

    signs: tuple[Sign, ...]
    source: str = ""

    def __len__(self) -> int:
        return len(self.signs)

    def symbols(self) -> list[str]:
        return [s.symbol for s in self.signs]


def tangent_indicatrix(polygon: SpacePolygon) -> SphericalPolygon:
    """Spherical polygon of normalized edge directions of ``polygon``."""
    directions = []
    for i in range(len(polygon)):
        e = polygon.edge(i)
        if pr.is_exact(e):
            if pr.norm_sq(e) == 0:
                raise DegenerateEdge(f"edge {i} has zero length")
        elif pr.norm(e) < EDGE_TOL:
            raise DegenerateEdge(f"edge {i} is numerically zero")
        directions.append(pr.normalize(e))
    return SphericalPolygon(directions)


def is_generic(polygon: SpacePolygon, tol: float = pr.DEGENERACY_TOL) -> bool:
    """True iff no 4 vertices of the polygon are coplanar (exhaustive)."""
    verts = polygon.vertices
    exact = all(pr.is_exact(v) for v in verts)
    for a, b, c, d in itertools.combinations(range(len(verts)), 4):
        va = verts[a]
        e1, e2, e3 = (pr.sub(verts[x], va) for x in (b, c, d))
        if not exact:
            e1, e2, e3 = pr.normalize(e1), pr.normalize(e2), pr.normalize(e3)
        if pr.orientation(e1, e2, e3, tol) is Sign.ZERO:
            return False
    return True


def epsilon_sequence(q: SphericalPolygon, tol: float = pr.DEGENERACY_TOL) -> EpsilonSequence:
    """Orientation sign of every consecutive vertex triple of ``q``."""
    signs = []
    for i in range(len(q)):
        s = pr.orientation(q.at(i), q.at(i + 1), q.at(i + 2), tol)
        if s is Sign.ZERO:
            raise DegenerateTriple(f"consecutive triple ({i}, {i + 1}, {i + 2}) is collinear")
        signs.append(s)
    return EpsilonSequence(tuple(signs), source=repr(q))


def count_sign_changes(eps: EpsilonSequence) -> int:
    """Number of adjacent sign flips around the cyclic sequence (always even)."""
    signs = eps.signs
    if any(s is Sign.ZERO for s in signs):
        raise DegenerateSequence("sign sequence contains a zero entry")
    n = len(signs)
    return sum(1 for i in range(n) if signs[i] is not signs[(i + 1) % n])


def spherical_inflections(q: SphericalPolygon,
                          tol: float = pr.DEGENERACY_TOL) -> list[tuple[int, int]]:
    """Edges {i, i+1} whose neighbor vertices sit on opposite sides.

    The edge (u_i, u_{i+1}) is an inflection exactly when the consecutive
    triple signs epsilon_{i-1} and epsilon_i differ.
    """
    eps = epsilon_sequence(q, tol).signs
    n = len(q)
    return [(i, (i + 1) % n) for i in range(n) if eps[(i - 1) % n] is not eps[i]]


def _side_of_plane(base: Vec3, p1: Vec3, p2: Vec3, x: Vec3, tol: float) -> Sign:
    e1, e2, d = pr.sub(p1, base), pr.sub(p2, base), pr.sub(x, base)
    if not (pr.is_exact(e1) and pr.is_exact(e2) and pr.is_exact(d)):
        e1, e2, d = pr.normalize(e1), pr.normalize(e2), pr.normalize(d)
    return pr.orientation(e1, e2, d, tol)


def flattenings(polygon: SpacePolygon,
                tol: float = pr.DEGENERACY_TOL) -> list[tuple[int, int, int]]:
    """Vertex triples {i, i+1, i+2} whose neighbors lie strictly on one side.

    For a generic polygon the returned list corresponds index-for-index to
    the spherical inflections of the tangent indicatrix.
    """
    n = len(polygon)
    found = []
    for i in range(n):
        s_prev = _side_of_plane(polygon.at(i), polygon.at(i + 1), polygon.at(i + 2),
                                polygon.at(i - 1), tol)
        s_next = _side_of_plane(polygon.at(i), polygon.at(i + 1), polygon.at(i + 2),
                                polygon.at(i + 3), tol)
        if s_prev is Sign.ZERO or s_next is Sign.ZERO:
            raise NotGeneric(f"neighbor of triple ({i}, {i + 1}, {i + 2}) lies on its plane")
        if s_prev is s_next:
            found.append((i, (i + 1) % n, (i + 2) % n))
    return found


def _tangent_basis(u: Vec3) -> tuple[np.ndarray, np.ndarray]:
    uf = np.asarray(pr.to_float(u))
    pick = np.zeros(3)
    pick[int(np.argmin(np.abs(uf)))] = 1.0
    e1 = np.cross(uf, pick)
    e1 /= np.linalg.norm(e1)
    e2 = np.cross(uf, e1)
    return e1, e2


def perturb_to_general_position(q: SphericalPolygon, seed: int,
                                magnitude: float = PERTURB_MAGNITUDE,
                                max_retries: int = PERTURB_MAX_RETRIES) -> SphericalPolygon:
    """Nudge vertices (at most ``magnitude`` radians each) into general position.

    Preserves the epsilon sequence, simplicity, and balancedness, and is
    deterministic for a given seed.  The input must be simple and must not
    have three *consecutive* collinear vertices; non-consecutive collinear
    triples are what the perturbation removes.
    """
    from .cones import is_balanced
    from .simplicity import is_simple

    eps_before = []
    n = len(q)
    for i in range(n):
        s = pr.orientation(q.at(i), q.at(i + 1), q.at(i + 2))
        if s is Sign.ZERO:
            raise ConsecutiveCollinear(
                f"consecutive triple ({i}, {i + 1}, {i + 2}) is collinear; cannot preserve it"
            )
        eps_before.append(s)
    # the input may carry non-consecutive collinear triples (that is what the
    # perturbation removes), so simplicity needs the metric fallback here
    if not is_simple(q, on_degenerate="metric"):
        raise NotSimple("perturbation requires a simple polygon")
    balanced_before = is_balanced(q, check_preconditions=False)

    if magnitude == 0.0:
        if q.is_general_position:
            return q
        raise PerturbationFailed("magnitude 0 cannot repair collinear vertices")

    rng = np.random.default_rng(seed)
    for _ in range(max_retries):
        moved = []
        for u in q.vertices:
            e1, e2 = _tangent_basis(u)
            theta = magnitude * rng.random()
            phi = 2.0 * math.pi * rng.random()
            d = math.cos(phi) * e1 + math.sin(phi) * e2
            uf = np.asarray(pr.to_float(u))
            w = math.cos(theta) * uf + math.sin(theta) * d
            w /= np.linalg.norm(w)
            moved.append(tuple(w))
        try:
            candidate = SphericalPolygon(moved)
        except DegenerateInput:
            continue
        if not candidate.is_general_position:
            continue
        eps_after = [pr.orientation(candidate.at(i), candidate.at(i + 1), candidate.at(i + 2))
                     for i in range(n)]
        if eps_after != eps_before:
            continue
        if not is_simple(candidate):
            continue
        if is_balanced(candidate, check_preconditions=False) != balanced_before:
            continue
        return candidate
    raise PerturbationFailed(f"no valid perturbation found in {max_retries} attempts")
