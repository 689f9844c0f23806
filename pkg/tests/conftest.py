import math

import numpy as np
import pytest

from regge_symmetry.errors import InvalidTetrahedron
from regge_symmetry.tetrahedron import EDGE_VERTICES, EdgeLengths, dihedral_angles, distance, validate
from regge_symmetry.trig_kernel import Geometry

SEED = 20240607
# Keep random samples away from flat tetrahedra
MIN_ANGLE = 0.05


def _random_vertices(g, rng):
    if g == Geometry.EUCLIDEAN:
        return rng.uniform(-1.0, 1.0, size=(4, 3))
    if g == Geometry.SPHERICAL:
        points = np.array([0.0, 0.0, 0.0, 1.0]) + 0.6 * rng.standard_normal((4, 4))
        return points / np.linalg.norm(points, axis=1, keepdims=True)
    spatial = 0.7 * rng.standard_normal((4, 3))
    time = np.sqrt(1.0 + np.sum(spatial ** 2, axis=1))
    return np.column_stack([spatial, time])


def random_edges(g, rng):
    """Edge lengths of a random, comfortably non-flat tetrahedron in g."""
    while True:
        vertices = _random_vertices(g, rng)
        lengths = {label: distance(g, vertices[i], vertices[j]) for label, (i, j) in EDGE_VERTICES.items()}
        e = EdgeLengths(**lengths)
        try:
            t = validate(g, e)
        except InvalidTetrahedron:
            continue
        angles = dihedral_angles(t).as_tuple()
        if min(angles) > MIN_ANGLE and max(angles) < math.pi - MIN_ANGLE:
            return e


# Edge-length boxes for rejection sampling of tetrahedra
EDGE_BOXES = {
    Geometry.EUCLIDEAN: (0.5, 1.5),
    Geometry.SPHERICAL: (math.pi / 2 - 0.3, math.pi / 2 + 0.3),
    Geometry.HYPERBOLIC: (0.3, 1.5),
}


def random_box_edges(g, rng):
    """Six edge lengths drawn uniformly from the geometry's box until they give a tetrahedron."""
    low, high = EDGE_BOXES[g]
    while True:
        e = EdgeLengths.from_sequence(rng.uniform(low, high, size=6))
        try:
            validate(g, e)
        except InvalidTetrahedron:
            continue
        return e


@pytest.fixture
def box_sampler(rng):
    """Call with a Geometry to draw edges uniformly from its box, rejecting non-tetrahedra."""
    return lambda g: random_box_edges(g, rng)


@pytest.fixture
def rng():
    return np.random.default_rng(SEED)


@pytest.fixture
def edge_sampler(rng):
    """Call with a Geometry to draw the edges of a random valid tetrahedron."""
    return lambda g: random_edges(g, rng)
