"""Deletion-based reduction of simple balanced polygons to a quadruple.

Repeatedly removes a vertex that is simultaneously *good* (deletion keeps
the polygon simple) and *nonessential* (deletion keeps it balanced); such a
vertex always exists for n >= 5.  Along the way the inflection count never
increases and every per-step drop is 0, 2 or 4; the surviving quadruple
always carries exactly 4 sign changes.  Each run returns a machine-checkable
trace, and any observed breach of these guarantees raises a
TraceInvariantViolation carrying the offending instance in exact
coordinates -- that would be a counterexample, so it is preserved, never
retried.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from . import predicates as pr
from .cones import four_point_characterization, is_balanced
from .errors import (
    InvalidInput,
    NoEligibleVertex,
    NotBalanced,
    NotSimple,
    TooFewPoints,
    TraceInvariantViolation,
)
from .polygons import (
    EpsilonSequence,
    SphericalPolygon,
    count_sign_changes,
    epsilon_sequence,
    spherical_inflections,
)
from .simplicity import delete_vertex, is_simple


@dataclass(frozen=True)
class ReductionStep:
    deleted_index: int
    inflections_before: int
    inflections_after: int

    @property
    def delta(self) -> int:
        return self.inflections_before - self.inflections_after


@dataclass(frozen=True)
class ReductionTrace:
    steps: tuple[ReductionStep, ...]
    terminal: SphericalPolygon
    terminal_epsilon: EpsilonSequence
    initial_inflections: int = field(default=0)

    def counts(self) -> list[int]:
        seq = [self.initial_inflections]
        seq.extend(s.inflections_after for s in self.steps)
        return seq


def _serialize(q: SphericalPolygon) -> dict:
    return {"kind": "spherical", "vertices": [pr.format_point(v) for v in q.vertices]}


def _validate_input(q: SphericalPolygon, tol: float, minimum: int) -> None:
    if len(q) < minimum:
        raise TooFewPoints(f"need >= {minimum} vertices, got {len(q)}")
    q.require_general_position()
    if not is_simple(q, tol):
        raise NotSimple("polygon has self-intersections")
    if not is_balanced(q, tol, check_preconditions=False):
        raise NotBalanced("polygon is contained in a closed hemisphere")


def pick_reduction_vertex(q: SphericalPolygon, tol: float = pr.DEGENERACY_TOL,
                          validate: bool = True) -> int:
    """Smallest index that is both good and nonessential (n >= 5).

    Nonexistence would contradict the guarantee that the good set (>= 4
    members) and the nonessential set (>= n-3 members) intersect, so it is
    raised as a NoEligibleVertex finding with the full instance attached.
    """
    if validate:
        _validate_input(q, tol, minimum=5)
    elif len(q) < 5:
        raise TooFewPoints(f"need >= 5 vertices, got {len(q)}")
    points = q.vertices
    for i in range(len(q)):
        if not is_simple(delete_vertex(q, i), tol):
            continue
        if is_balanced(points[:i] + points[i + 1:], tol, check_preconditions=False):
            return i
    raise NoEligibleVertex(
        "no vertex is simultaneously good and nonessential",
        payload={"claim": "good-nonessential-exists", "instance": _serialize(q)},
    )


def deletion_delta(q: SphericalPolygon, i: int, tol: float = pr.DEGENERACY_TOL) -> int:
    """Inflection-count drop caused by deleting eligible vertex i.

    The drop is asserted to land in {0, 2, 4}; anything else is raised as a
    trace-invariant finding.
    """
    n = len(q)
    i %= n
    reduced = delete_vertex(q, i)
    if not is_simple(reduced, tol):
        raise InvalidInput(f"vertex {i} is not good; delta is only defined for eligible vertices")
    points = q.vertices
    if not is_balanced(points[:i] + points[i + 1:], tol, check_preconditions=False):
        raise InvalidInput(f"vertex {i} is essential; delta is only defined for eligible vertices")
    before = len(spherical_inflections(q, tol))
    after = len(spherical_inflections(reduced, tol))
    delta = before - after
    if delta not in (0, 2, 4):
        raise TraceInvariantViolation(
            f"deletion of vertex {i} changed inflections by {delta}, expected 0/2/4",
            payload={
                "claim": "inflections-not-increase",
                "instance": _serialize(q),
                "deleted": i,
                "observed": delta,
                "required": [0, 2, 4],
            },
        )
    return delta


def reduce_to_base(q: SphericalPolygon, tol: float = pr.DEGENERACY_TOL) -> ReductionTrace:
    """Delete good nonessential vertices until four remain; verify each step.

    The returned trace records the deleted index (position in the polygon
    at that step), the inflection counts around each deletion, and the
    terminal epsilon sequence, which always shows exactly 4 sign changes.
    """
    _validate_input(q, tol, minimum=4)
    current = q
    count = len(spherical_inflections(current, tol))
    initial = count
    steps: list[ReductionStep] = []

    while len(current) > 4:
        i = pick_reduction_vertex(current, tol, validate=False)
        reduced = delete_vertex(current, i)
        if not is_simple(reduced, tol) or not is_balanced(
                reduced.vertices, tol, check_preconditions=False):
            raise TraceInvariantViolation(
                f"deleting eligible vertex {i} broke simplicity or balance",
                payload={"claim": "good-nonessential-exists",
                         "instance": _serialize(current), "deleted": i},
            )
        after = len(spherical_inflections(reduced, tol))
        if count - after not in (0, 2, 4):
            raise TraceInvariantViolation(
                f"inflection count fell by {count - after} at vertex {i}",
                payload={
                    "claim": "inflections-not-increase",
                    "instance": _serialize(current),
                    "deleted": i,
                    "observed": count - after,
                    "required": [0, 2, 4],
                },
            )
        steps.append(ReductionStep(i, count, after))
        current, count = reduced, after

    if not four_point_characterization(*current.vertices, tol=tol):
        raise TraceInvariantViolation(
            "terminal quadruple is not balanced",
            payload={"claim": "terminal-quadruple", "instance": _serialize(current)},
        )
    eps = epsilon_sequence(current, tol)
    if count_sign_changes(eps) != 4:
        raise TraceInvariantViolation(
            "terminal quadruple does not show 4 sign changes",
            payload={"claim": "terminal-quadruple", "instance": _serialize(current)},
        )
    return ReductionTrace(tuple(steps), current, eps, initial_inflections=initial)
