import math

import numpy as np
import pytest

from indicatrix.polygons import SpacePolygon, SphericalPolygon

S3 = math.sqrt(3.0)
R2 = math.sqrt(2.0) / 2.0

TETRA_DIRECTIONS = [
    (1 / S3, 1 / S3, 1 / S3),
    (1 / S3, -1 / S3, -1 / S3),
    (-1 / S3, 1 / S3, -1 / S3),
    (-1 / S3, -1 / S3, 1 / S3),
]

EXAMPLE1_POINTS = [
    (R2, 0.0, R2),
    (0.0, R2, R2),
    (-R2, 0.0, R2),
    (0.0, -R2, R2),
]


@pytest.fixture
def tetra():
    """Alternating quadruple: balanced, simple, epsilon (+,-,+,-)."""
    return SphericalPolygon(TETRA_DIRECTIONS)


@pytest.fixture
def example1():
    """Four points on the z = sqrt(2)/2 circle: simple but not balanced."""
    return SphericalPolygon(EXAMPLE1_POINTS)


@pytest.fixture
def great_circle_square():
    return SphericalPolygon([(1.0, 0, 0), (0, 1.0, 0), (-1.0, 0, 0), (0, -1.0, 0)])


@pytest.fixture
def tetra_cycle():
    """Space polygon whose edges follow the four tetrahedral directions."""
    verts = [(0.0, 0.0, 0.0)]
    for d in TETRA_DIRECTIONS[:-1]:
        last = verts[-1]
        verts.append((last[0] + d[0], last[1] + d[1], last[2] + d[2]))
    return SpacePolygon(verts)


@pytest.fixture
def unit_square_polygon():
    return SpacePolygon([(0.0, 0, 0), (1.0, 0, 0), (1.0, 1.0, 0), (0.0, 1.0, 0)])


def random_rotation(rng: np.random.Generator) -> np.ndarray:
    """Uniform rotation matrix from a normalized quaternion."""
    q = rng.normal(size=4)
    q /= np.linalg.norm(q)
    w, x, y, z = q
    return np.array([
        [1 - 2 * (y * y + z * z), 2 * (x * y - z * w), 2 * (x * z + y * w)],
        [2 * (x * y + z * w), 1 - 2 * (x * x + z * z), 2 * (y * z - x * w)],
        [2 * (x * z - y * w), 2 * (y * z + x * w), 1 - 2 * (x * x + y * y)],
    ])
