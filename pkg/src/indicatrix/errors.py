"""Exception hierarchy shared by every geometry module.

Three families matter to callers:

* ``InvalidInput`` -- the request itself is malformed (bad schema, too few
  points, non-unit vertex).  CLI exit code 1, HTTP 400.
* ``DegenerateGeometry`` -- the input is structurally fine but sits on a
  degeneracy the algorithms refuse to guess about (collinear triples,
  antipodal pairs, zero determinants), or fails a geometric precondition
  (not balanced, not simple).  CLI exit code 2, HTTP 409.
* ``TheoremViolation`` -- an invariant that provable mathematics guarantees
  was observed to fail.  These are findings, never retried away.  CLI exit
  code 3 (certify).
"""


class GeometryError(Exception):
    """Base class for every error raised by this package."""


class InvalidInput(GeometryError):
    pass


class TooFewPoints(InvalidInput):
    pass


class DegenerateGeometry(GeometryError):
    pass


class DegenerateInput(DegenerateGeometry):
    pass


class DegenerateEdge(DegenerateGeometry):
    pass


class AntipodalConsecutive(DegenerateGeometry):
    pass


class AntipodalBridge(DegenerateGeometry):
    pass


class DegenerateTriple(DegenerateGeometry):
    pass


class DegenerateSequence(DegenerateGeometry):
    pass


class DegenerateSign(DegenerateGeometry):
    pass


class DegenerateAngle(DegenerateGeometry):
    pass


class CollinearTriple(DegenerateGeometry):
    pass


class ConsecutiveCollinear(DegenerateGeometry):
    pass


class NotGeneric(DegenerateGeometry):
    pass


class GeneralPositionViolated(DegenerateGeometry):
    pass


class SingularGenerators(DegenerateGeometry):
    pass


class ParallelPlanes(DegenerateGeometry):
    pass


class NotBalanced(DegenerateGeometry):
    pass


class NotSimple(DegenerateGeometry):
    pass


class NotCentrallySymmetric(DegenerateGeometry):
    pass


class PerturbationFailed(DegenerateGeometry):
    pass


class NumericalBreakdown(DegenerateGeometry):
    pass


class NoInitialCombination(DegenerateGeometry):
    pass


class ClosureResidualExceeded(DegenerateGeometry):
    pass


class TriangulationFailed(DegenerateGeometry):
    pass


class GenerationExhausted(GeometryError):
    pass


class TheoremViolation(GeometryError):
    """An empirically observed counterexample to a proved statement.

    Carries enough data to replay: ``payload`` is a JSON-serializable dict
    with the offending instance in exact coordinates.
    """

    def __init__(self, message: str, payload: dict | None = None):
        super().__init__(message)
        self.payload = payload or {}


class NoEligibleVertex(TheoremViolation):
    pass


class TraceInvariantViolation(TheoremViolation):
    pass
