"""Hemisphere containment, balanced position, and cone certificates.

A finite set of unit vectors is *balanced* when no closed hemisphere
contains it; equivalently its conical hull is all of R^3.  Containment is
decided by exhaustive candidate enumeration (every +-u_i and every
normalized pairwise cross product), which is exact for point sets in
general position and stays inside the shared sign kernel instead of
reaching for an LP solver.

The conical Caratheodory reduction and the 4-vector characterization give
two further, independent routes to the same decisions; the test suite
cross-validates all of them against each other.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

import numpy as np

from . import predicates as pr
from .errors import (
    CollinearTriple,
    DegenerateInput,
    NoInitialCombination,
    NotBalanced,
    NumericalBreakdown,
    SingularGenerators,
    TooFewPoints,
)
from .predicates import Number, Sign, Vec3

# Open-cone membership: coefficients must clear this band in floating mode.
COEFFICIENT_TOL = 1e-9
RECONSTRUCTION_TOL = 1e-8
_CROSS_EPS = 1e-12


@dataclass(frozen=True)
class HemisphereWitness:
    """Normal of a closed hemisphere containing the queried point set."""

    normal: Vec3
    closed: bool = True


@dataclass(frozen=True)
class ConeCertificate:
    """Nonnegative combination of at most 3 points reproducing ``target``.

    ``indices`` refer to the point list the certificate was computed
    against.  In general position all coefficients are strictly positive
    when three indices are present.
    """

    indices: tuple[int, ...]
    coefficients: tuple[Number, ...]
    target: Vec3

    def reconstruct(self, points: Sequence[Vec3]) -> Vec3:
        acc = (0, 0, 0)
        for i, lam in zip(self.indices, self.coefficients):
            acc = pr.add(acc, pr.scale(points[i], lam))
        return acc

    def residual(self, points: Sequence[Vec3]) -> float:
        return pr.norm(pr.sub(self.reconstruct(points), self.target))


def _witness_candidates_exact(points):
    """Yield (candidate, is_degenerate_pair) in the canonical order."""
    for u in points:
        yield u, False
    for u in points:
        yield pr.neg(u), False
    for a, b in itertools.combinations(points, 2):
        c = pr.cross(a, b)
        degenerate = c == (0, 0, 0) if pr.is_exact(c) else pr.norm(c) <= _CROSS_EPS
        yield c, degenerate
        yield pr.neg(c), degenerate


def _closed_hemisphere_witness_float(points, tol):
    u = np.asarray([pr.to_float(p) for p in points], dtype=float)
    n = len(points)
    blocks = [u, -u]
    # structural zeros: a pair candidate is exactly perpendicular to its two
    # defining points and to anything (anti)parallel to them, so those
    # near-zero dots are construction artifacts, not marginal decisions
    parallel = np.abs(u @ u.T) >= 1.0 - _CROSS_EPS
    structural = [parallel, parallel]
    have_cross = True
    if n >= 2:
        ii, jj = np.triu_indices(n, 1)
        c = np.cross(u[ii], u[jj])
        norms = np.linalg.norm(c, axis=1)
        good = norms > _CROSS_EPS
        have_cross = bool(good.any())
        if have_cross:
            c = c[good] / norms[good][:, None]
            pair_mask = parallel[ii[good]] | parallel[jj[good]]
            blocks.extend([c, -c])
            structural.extend([pair_mask, pair_mask])
    candidates = np.vstack(blocks)
    struct = np.vstack(structural)
    dots = candidates @ u.T
    outside = (dots < -tol).any(axis=1)
    marginal = ((np.abs(dots) < tol) & ~struct).any(axis=1)
    accept = ~outside & ~marginal
    if bool(accept.any()):
        return HemisphereWitness(tuple(candidates[int(np.argmax(accept))]))
    if bool((~outside).any()):
        raise DegenerateInput(
            "hemisphere decision lies within the tolerance band; "
            "perturb the input or use exact coordinates"
        )
    if n >= 2 and not have_cross:
        raise DegenerateInput(
            "all point pairs are parallel: hemisphere candidates vanished"
        )
    return None


def closed_hemisphere_witness(points_or_polygon,
                              tol: float = pr.DEGENERACY_TOL) -> HemisphereWitness | None:
    """A hemisphere normal h with <h, u_i> >= 0 for all points, or None.

    The candidate set (every +-u_i plus every normalized pairwise cross
    product) covers all extreme witnesses even when the set contains equal
    or antipodal pairs: a witness for a pair {u, -u} lies on the circle
    perpendicular to u, whose extreme directions are crosses of u with the
    remaining points.  Only a set with no independent pair at all cannot be
    certified and raises DegenerateInput.

    Exact inputs are decided with zero tolerance and the witness normal is
    returned unnormalized (sign decisions are scale-invariant).
    """
    points = pr.as_points(points_or_polygon)
    if not points:
        raise TooFewPoints("need at least one point")
    if all(pr.is_exact(p) for p in points):
        for cand, degenerate in _witness_candidates_exact(points):
            if degenerate:
                continue
            if all(pr.dot(cand, p) >= 0 for p in points):
                return HemisphereWitness(cand)
        if len(points) >= 2 and not any(
                pr.cross(a, b) != (0, 0, 0)
                for a, b in itertools.combinations(points, 2)):
            raise DegenerateInput(
                "all point pairs are parallel: hemisphere candidates vanished"
            )
        return None
    return _closed_hemisphere_witness_float(points, tol)


def _require_general_position_points(points) -> None:
    for i, j, k in itertools.combinations(range(len(points)), 3):
        if pr.orientation(points[i], points[j], points[k]) is Sign.ZERO:
            raise CollinearTriple(f"points {i}, {j}, {k} lie on a spherical line")


def is_balanced(points_or_polygon, tol: float = pr.DEGENERACY_TOL,
                check_preconditions: bool = True) -> bool:
    """True iff no closed hemisphere contains the point set (n >= 4)."""
    points = pr.as_points(points_or_polygon)
    if len(points) < 4:
        raise TooFewPoints(f"balanced position needs >= 4 points, got {len(points)}")
    if check_preconditions:
        gp = getattr(points_or_polygon, "is_general_position", None)
        if gp is None:
            _require_general_position_points(points)
        elif not gp:
            raise CollinearTriple("three vertices lie on a spherical line")
    return closed_hemisphere_witness(points, tol) is None


def cone_membership(target: Vec3, generators: Sequence[Vec3],
                    coefficient_tol: float = COEFFICIENT_TOL,
                    tol: float = pr.DEGENERACY_TOL) -> ConeCertificate | None:
    """Open-cone membership of ``target`` in exactly 3 generators.

    Solves the 3x3 system by Cramer's rule through the shared determinant
    kernel, so exact inputs give exact coefficients.  Returns None unless
    every coefficient clears the open-cone band.
    """
    if len(generators) != 3:
        raise SingularGenerators("cone_membership expects exactly 3 generators")
    g1, g2, g3 = generators
    exact = all(pr.is_exact(v) for v in (g1, g2, g3, target))
    d = pr.det3(g1, g2, g3)
    if (d == 0) if exact else (abs(d) <= tol):
        raise SingularGenerators("generators are linearly dependent")
    lams = (
        pr.det3(target, g2, g3) / d,
        pr.det3(g1, target, g3) / d,
        pr.det3(g1, g2, target) / d,
    )
    threshold = 0 if exact else coefficient_tol
    if all(lam > threshold for lam in lams):
        return ConeCertificate((0, 1, 2), lams, target)
    return None


def four_point_characterization(u1: Vec3, u2: Vec3, u3: Vec3, u4: Vec3,
                                tol: float = pr.DEGENERACY_TOL) -> bool:
    """Sign criterion for four unit vectors not sharing a closed hemisphere.

    Evaluates s[1,2,3] = s[1,3,4] = -s[1,2,4] = -s[2,3,4]; equivalent to
    -u1 lying in the open cone of the other three, and to the four points
    being balanced.
    """
    s123 = pr.orientation(u1, u2, u3, tol)
    s134 = pr.orientation(u1, u3, u4, tol)
    s124 = pr.orientation(u1, u2, u4, tol)
    s234 = pr.orientation(u2, u3, u4, tol)
    if Sign.ZERO in (s123, s134, s124, s234):
        raise CollinearTriple("three of the four points lie on a spherical line")
    return s123 is s134 and s124 is s234 and s123 is s124.flipped()


def find_balanced_quadruple(points: Sequence[Vec3],
                            tol: float = pr.DEGENERACY_TOL) -> tuple[int, int, int, int] | None:
    """Smallest (lexicographic) 4 indices passing the sign characterization."""
    for quad in itertools.combinations(range(len(points)), 4):
        try:
            if four_point_characterization(*(points[i] for i in quad), tol=tol):
                return quad
        except CollinearTriple:
            continue
    return None


def _solve_in_triple(target, points, triple, exact, tol):
    """Cramer coefficients of target over a 3-index support, or None."""
    g = [points[i] for i in triple]
    d = pr.det3(*g)
    if (d == 0) if exact else (abs(d) <= tol):
        return None
    return (
        pr.det3(target, g[1], g[2]) / d,
        pr.det3(g[0], target, g[2]) / d,
        pr.det3(g[0], g[1], target) / d,
    )


def _certificate_from_support(target, points, support, lams, exact,
                              coefficient_tol, reconstruction_tol):
    kept_idx, kept_lam = [], []
    for i, lam in zip(support, lams):
        if (lam > 0) if exact else (lam > coefficient_tol):
            kept_idx.append(i)
            kept_lam.append(lam)
    cert = ConeCertificate(tuple(kept_idx), tuple(kept_lam), target)
    if cert.residual(points) > reconstruction_tol:
        raise NumericalBreakdown(
            f"certificate residual {cert.residual(points):.3e} exceeds tolerance"
        )
    return cert


def caratheodory_cone(target: Vec3, points_or_polygon,
                      initial: Sequence[Number] | None = None,
                      coefficient_tol: float = COEFFICIENT_TOL,
                      reconstruction_tol: float = RECONSTRUCTION_TOL,
                      tol: float = pr.DEGENERACY_TOL) -> ConeCertificate:
    """Express ``target`` as a nonnegative combination of at most 3 points.

    With ``initial`` (nonnegative coefficients over all points summing to
    the target) the support is shrunk by the standard exchange loop: find a
    linear dependence on the support, subtract the largest harmless
    multiple, repeat.  Without ``initial`` the combination is built
    constructively: locate a balanced quadruple of the point set and solve
    for the target inside whichever of its four cones contains it.
    """
    points = pr.as_points(points_or_polygon)
    exact = all(pr.is_exact(p) for p in points) and pr.is_exact(target)

    if initial is None:
        # A target aligned with a single generator short-circuits.
        for i, p in enumerate(points):
            c = pr.cross(target, p)
            aligned = (c == (0, 0, 0)) if exact else pr.norm(c) <= _CROSS_EPS
            if aligned and pr.dot(target, p) > 0:
                lam = pr.dot(target, p) / pr.dot(p, p)
                return ConeCertificate((i,), (lam,), target)
        quad = find_balanced_quadruple(points, tol)
        if quad is None:
            raise NoInitialCombination(
                "no balanced quadruple found; the point set does not span a full cone"
            )
        best = None
        for drop in range(4):
            triple = tuple(quad[k] for k in range(4) if k != drop)
            lams = _solve_in_triple(target, points, triple, exact, tol)
            if lams is None:
                continue
            floor = 0 if exact else -coefficient_tol
            if all(lam >= floor for lam in lams):
                clamped = tuple(lam if lam > 0 else 0 for lam in lams)
                best = (triple, clamped)
                break
        if best is None:
            raise NoInitialCombination("target escaped all four cones of the quadruple")
        return _certificate_from_support(target, points, best[0], best[1], exact,
                                         coefficient_tol, reconstruction_tol)

    if len(initial) != len(points):
        raise NoInitialCombination("initial coefficients must cover every point")
    lam = {i: (Fraction(c) if exact else float(c)) for i, c in enumerate(initial)}
    for i, c in lam.items():
        if c < 0:
            raise NoInitialCombination(f"initial coefficient {i} is negative")
    support = [i for i, c in lam.items() if c > 0]
    probe = ConeCertificate(tuple(support), tuple(lam[i] for i in support), target)
    if probe.residual(points) > max(reconstruction_tol, 1e-9):
        raise NoInitialCombination("initial coefficients do not reconstruct the target")

    while len(support) > 3:
        quad = support[:4]
        alpha = None
        for drop in range(4):
            triple = tuple(quad[k] for k in range(4) if k != drop)
            sol = _solve_in_triple(points[quad[drop]], points, triple, exact, tol)
            if sol is not None:
                alpha = dict(zip(triple, sol))
                alpha[quad[drop]] = -1 if exact else -1.0
                break
        if alpha is None:
            raise NumericalBreakdown(
                "degenerate support in reduction loop; retry in exact mode"
            )
        if not any(a > 0 for a in alpha.values()):
            alpha = {i: -a for i, a in alpha.items()}
        pivot = min(
            (i for i in alpha if alpha[i] > 0),
            key=lambda i: (lam[i] / alpha[i], i),
        )
        step = lam[pivot] / alpha[pivot]
        for i, a in alpha.items():
            lam[i] -= step * a
        lam[pivot] = 0 if exact else 0.0
        eps = 0 if exact else 1e-15
        support = [i for i in support if lam[i] > eps]
    return _certificate_from_support(target, points, support,
                                     [lam[i] for i in support], exact,
                                     coefficient_tol, reconstruction_tol)


def nonessential_vertices(points_or_polygon, tol: float = pr.DEGENERACY_TOL) -> list[int]:
    """Indices whose deletion keeps the point set balanced (n >= 5).

    Decided by brute-force deletion; for balanced general-position sets the
    result always has at least n-3 members.
    """
    points = pr.as_points(points_or_polygon)
    n = len(points)
    if n < 5:
        raise TooFewPoints(f"nonessential enumeration needs >= 5 points, got {n}")
    gp = getattr(points_or_polygon, "is_general_position", None)
    if gp is None:
        _require_general_position_points(points)
    elif not gp:
        raise CollinearTriple("three vertices lie on a spherical line")
    if not is_balanced(points, tol, check_preconditions=False):
        raise NotBalanced("the point set is already contained in a closed hemisphere")
    out = []
    for i in range(n):
        rest = points[:i] + points[i + 1:]
        if is_balanced(rest, tol, check_preconditions=False):
            out.append(i)
    return out
