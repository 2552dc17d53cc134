"""Sign kernel: 3x3 determinants, orientation classification, side tests.

Every sign question in the package routes through :func:`orientation`.  The
kernel is polymorphic over the coordinate type: ``float`` coordinates are
classified against ``DEGENERACY_TOL`` while exact coordinates (``int`` or
``fractions.Fraction``) are classified with zero tolerance, so ``Sign.ZERO``
then means exact linear dependence.  Zero is never coerced to a side;
callers must treat it as a degeneracy.
"""

from __future__ import annotations

import enum
import math
from fractions import Fraction
from typing import Sequence, Union

from .errors import DegenerateInput, InvalidInput

Number = Union[int, float, Fraction]
Vec3 = tuple[Number, Number, Number]

# Degeneracy band on the raw determinant of unit vectors.
DEGENERACY_TOL = 1e-10

_EXACT_TYPES = (int, Fraction)


class Sign(enum.IntEnum):
    NEGATIVE = -1
    ZERO = 0
    POSITIVE = 1

    def flipped(self) -> "Sign":
        return Sign(-int(self))

    @property
    def symbol(self) -> str:
        return {-1: "-", 0: "0", 1: "+"}[int(self)]


def is_exact(v: Vec3) -> bool:
    """True when all components are int/Fraction, enabling exact signs."""
    return all(isinstance(c, _EXACT_TYPES) for c in v)


def is_finite(v: Vec3) -> bool:
    return all(isinstance(c, _EXACT_TYPES) or math.isfinite(c) for c in v)


def det3(a: Vec3, b: Vec3, c: Vec3) -> Number:
    """Determinant of the 3x3 matrix with rows a, b, c."""
    return (
        a[0] * (b[1] * c[2] - b[2] * c[1])
        - a[1] * (b[0] * c[2] - b[2] * c[0])
        + a[2] * (b[0] * c[1] - b[1] * c[0])
    )


def orientation(a: Vec3, b: Vec3, c: Vec3, tol: float = DEGENERACY_TOL) -> Sign:
    """Sign of det3(a, b, c), with a degeneracy band in floating mode.

    Cyclic in its arguments, antisymmetric under transpositions, and
    invariant under positive scaling of any argument (up to the band).
    """
    d = det3(a, b, c)
    if is_exact(a) and is_exact(b) and is_exact(c):
        if d > 0:
            return Sign.POSITIVE
        if d < 0:
            return Sign.NEGATIVE
        return Sign.ZERO
    if d > tol:
        return Sign.POSITIVE
    if d < -tol:
        return Sign.NEGATIVE
    return Sign.ZERO


def same_side(p: Vec3, q: Vec3, plane_a: Vec3, plane_b: Vec3,
              tol: float = DEGENERACY_TOL) -> bool:
    """Whether p and q lie on the same side of span{plane_a, plane_b}.

    Raises DegenerateInput when either point sits on the plane (within the
    band) -- the caller must not interpret that as a side.
    """
    sp = orientation(plane_a, plane_b, p, tol)
    sq = orientation(plane_a, plane_b, q, tol)
    if sp is Sign.ZERO or sq is Sign.ZERO:
        raise DegenerateInput("point lies on the dividing plane")
    return sp is sq


# --- small vector algebra (kept here so the whole kernel is one module) ---

def add(a: Vec3, b: Vec3) -> Vec3:
    return (a[0] + b[0], a[1] + b[1], a[2] + b[2])


def sub(a: Vec3, b: Vec3) -> Vec3:
    return (a[0] - b[0], a[1] - b[1], a[2] - b[2])


def neg(a: Vec3) -> Vec3:
    return (-a[0], -a[1], -a[2])


def scale(a: Vec3, s: Number) -> Vec3:
    return (a[0] * s, a[1] * s, a[2] * s)


def dot(a: Vec3, b: Vec3) -> Number:
    return a[0] * b[0] + a[1] * b[1] + a[2] * b[2]


def cross(a: Vec3, b: Vec3) -> Vec3:
    return (
        a[1] * b[2] - a[2] * b[1],
        a[2] * b[0] - a[0] * b[2],
        a[0] * b[1] - a[1] * b[0],
    )


def norm_sq(a: Vec3) -> Number:
    return dot(a, a)


def norm(a: Vec3) -> float:
    return math.sqrt(float(norm_sq(a)))


def _fraction_sqrt(x: Fraction) -> Fraction | None:
    """Exact square root of a nonnegative rational, or None."""
    if x < 0:
        return None
    num, den = x.numerator, x.denominator
    rn, rd = math.isqrt(num), math.isqrt(den)
    if rn * rn == num and rd * rd == den:
        return Fraction(rn, rd)
    return None


def normalize(a: Vec3) -> Vec3:
    """Unit vector along a.  Exact inputs stay exact when the norm is rational.

    Exact vectors whose squared norm is not a perfect rational square fall
    back to floating point.  Raises DegenerateInput on (near-)zero vectors.
    """
    n2 = norm_sq(a)
    if is_exact(a):
        r = _fraction_sqrt(Fraction(n2))
        if r == 0:
            raise DegenerateInput("cannot normalize zero vector")
        if r is not None:
            return (a[0] / r, a[1] / r, a[2] / r)
        a = to_float(a)
        n2 = norm_sq(a)
    n = math.sqrt(n2)
    if n == 0.0 or not math.isfinite(n):
        raise DegenerateInput("cannot normalize zero or non-finite vector")
    return (a[0] / n, a[1] / n, a[2] / n)


def to_float(a: Vec3) -> tuple[float, float, float]:
    return (float(a[0]), float(a[1]), float(a[2]))


def vec_angle(a: Vec3, b: Vec3) -> float:
    """Angle between a and b in radians, robust near 0 and pi."""
    fa, fb = to_float(a), to_float(b)
    return math.atan2(norm(cross(fa, fb)), float(dot(fa, fb)))


def as_points(obj) -> tuple[Vec3, ...]:
    """Accept a polygon-like object (has .vertices) or a bare point sequence."""
    verts = getattr(obj, "vertices", obj)
    return tuple(tuple(v) for v in verts)


def format_point(v: Vec3) -> list:
    """Lossless JSON form: floats via repr round-trip, Fractions as 'p/q'."""
    out = []
    for c in v:
        if isinstance(c, Fraction):
            out.append(f"{c.numerator}/{c.denominator}")
        elif isinstance(c, int):
            out.append(c)
        else:
            out.append(float(c))
    return out


def parse_coordinate(raw) -> Number:
    """Parse a JSON coordinate: numbers stay float, strings become Fractions.

    Strings accept both decimal ('0.6') and ratio ('3/5') forms, either of
    which yields an exact rational.
    """
    if isinstance(raw, bool):
        raise InvalidInput("boolean is not a coordinate")
    if isinstance(raw, (int, float)):
        return float(raw)
    if isinstance(raw, str):
        try:
            return Fraction(raw)
        except (ValueError, ZeroDivisionError) as exc:
            raise InvalidInput(f"unparseable coordinate {raw!r}") from exc
    raise InvalidInput(f"unsupported coordinate type {type(raw).__name__}")


def parse_point(raw: Sequence) -> Vec3:
    if len(raw) != 3:
        raise InvalidInput("a point needs exactly 3 coordinates")
    v = tuple(parse_coordinate(c) for c in raw)
    if not is_finite(v):
        raise InvalidInput("non-finite coordinate")
    return v
