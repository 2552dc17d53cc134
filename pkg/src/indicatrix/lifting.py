"""Constructive inverse of the tangent indicatrix.

A balanced spherical polygon admits strictly positive weights lambda_i with
sum(lambda_i * u_i) = 0; integrating the rescaled directions from a base
point closes into a space polygon whose indicatrix is the input again.

The weights are built inductively: peel nonessential vertices down to a
balanced quadruple, solve the quadruple with an open-cone membership, then
reinsert each peeled vertex with coefficient 1 plus a conical-Caratheodory
correction spread over at most three remaining vertices.  Exact (rational)
inputs produce an exactly zero closure sum.
"""

from __future__ import annotations

from dataclasses import dataclass

from . import predicates as pr
from .cones import caratheodory_cone, cone_membership, is_balanced
from .errors import (
    ClosureResidualExceeded,
    GeneralPositionViolated,
    NotBalanced,
    NumericalBreakdown,
    TooFewPoints,
)
from .polygons import SpacePolygon, SphericalPolygon, tangent_indicatrix
from .predicates import Number, Vec3

# Closure residual accepted relative to the weight sum, floating mode.
CLOSURE_TOL = 1e-9
ROUNDTRIP_TOL = 1e-8


@dataclass(frozen=True)
class LiftWeights:
    """Positive rescaling factors, normalized so the largest equals 1."""

    lambdas: tuple[Number, ...]

    def weight_sum(self) -> Number:
        return sum(self.lambdas)

    def closure_residual(self, q: SphericalPolygon) -> float:
        acc = (0, 0, 0)
        for lam, u in zip(self.lambdas, q.vertices):
            acc = pr.add(acc, pr.scale(u, lam))
        return pr.norm(acc)


def _peel_order(points, tol):
    """Peel smallest-index vertices whose removal keeps the set balanced,
    until four remain; returns (peeled global indices, final quadruple)."""
    active = list(range(len(points)))
    peeled = []
    while len(active) > 4:
        found = None
        for pos, gi in enumerate(active):
            rest = [points[j] for k, j in enumerate(active) if k != pos]
            if is_balanced(rest, tol, check_preconditions=False):
                found = pos
                break
        if found is None:
            raise NumericalBreakdown(
                "no removable vertex found although the set is balanced; "
                "retry in exact mode"
            )
        peeled.append(active.pop(found))
    return peeled, active


def lift_weights(q: SphericalPolygon, tol: float = pr.DEGENERACY_TOL,
                 closure_tol: float = CLOSURE_TOL) -> LiftWeights:
    """Positive weights turning the vertex directions into a closed edge set."""
    n = len(q)
    if n < 4:
        raise TooFewPoints(f"lifting needs >= 4 vertices, got {n}")
    if not q.is_general_position:
        raise GeneralPositionViolated("three vertices lie on a common spherical line")
    points = q.vertices
    if not is_balanced(points, tol, check_preconditions=False):
        raise NotBalanced("polygon is contained in a closed hemisphere")

    peeled, quad = _peel_order(points, tol)

    lam: dict[int, Number] = {}
    anchor = quad[0]
    others = quad[1:]
    cert = cone_membership(pr.neg(points[anchor]), [points[j] for j in others], tol=tol)
    if cert is None:
        raise NumericalBreakdown(
            "balanced quadruple escaped the open cone; retry in exact mode"
        )
    lam[anchor] = 1
    for j, coeff in zip(others, cert.coefficients):
        lam[j] = coeff

    for gi in reversed(peeled):
        active = sorted(lam)
        active_points = [points[j] for j in active]
        correction = caratheodory_cone(pr.neg(points[gi]), active_points, tol=tol)
        for local, coeff in zip(correction.indices, correction.coefficients):
            lam[active[local]] += coeff
        lam[gi] = 1

    # The solution polytope has positive dimension; a near-zero weight would
    # make one edge so short that the float round trip cannot hold, so move
    # toward the interior: adding the zero-sum circuit u_i + sum(mu_j u_j)
    # lifts lambda_i by 1 without disturbing the closure.
    floor = 1e-3
    for i in sorted(range(n), key=lambda k: lam[k]):
        if lam[i] >= floor * max(lam.values()):
            break
        circuit = caratheodory_cone(pr.neg(points[i]), points, tol=tol)
        lam[i] += 1
        for j, coeff in zip(circuit.indices, circuit.coefficients):
            lam[j] += coeff

    top = max(lam.values())
    lambdas = tuple(lam[i] / top for i in range(n))
    weights = LiftWeights(lambdas)

    if any(not (l > 0) for l in lambdas):
        raise NumericalBreakdown("a lift weight came out non-positive")
    residual = weights.closure_residual(q)
    if residual > closure_tol * float(weights.weight_sum()):
        raise ClosureResidualExceeded(
            f"closure residual {residual:.3e} exceeds {closure_tol:.1e} * sum(lambda)"
        )
    return weights


def lift(q: SphericalPolygon, base: Vec3 = (0, 0, 0),
         tol: float = pr.DEGENERACY_TOL,
         closure_tol: float = CLOSURE_TOL,
         roundtrip_tol: float = ROUNDTRIP_TOL,
         weights: LiftWeights | None = None) -> SpacePolygon:
    """Integrate the weighted directions of ``q`` into a closed space polygon.

    The closure gap (zero in exact arithmetic, below tolerance in floating
    mode) is left at the final vertex rather than smeared across edges,
    which would tilt the edge directions.
    """
    if weights is None:
        weights = lift_weights(q, tol, closure_tol)
    vertices = [tuple(base)]
    for i in range(len(q) - 1):
        vertices.append(pr.add(vertices[-1], pr.scale(q.at(i), weights.lambdas[i])))
    polygon = SpacePolygon(vertices)

    back = tangent_indicatrix(polygon)
    worst = max(pr.vec_angle(u, w) for u, w in zip(q.vertices, back.vertices))
    if worst > roundtrip_tol:
        raise ClosureResidualExceeded(
            f"indicatrix round trip off by {worst:.3e} rad (> {roundtrip_tol:.1e})"
        )
    return polygon
