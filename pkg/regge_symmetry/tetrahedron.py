"""Tetrahedra with labeled edges in E^3, S^3 and H^3.

Vertex and edge labels follow one fixed convention throughout the package:

    vertices  F1, F2, K, L
    x = |F1F2|   y = |KL|
    a = |F1K|    b = |F2K|    c = |F2L|    d = |F1L|

Opposite pairs are (x, y), (a, c), (b, d).  The four faces are
(x, a, b), (x, c, d), (y, a, d) and (y, b, c).

Models: R^3 for the Euclidean case, the unit sphere in R^4, and the upper
sheet of <p, p> = -1 in R^{3,1} (time coordinate last).
"""
from __future__ import annotations

import dataclasses
import logging
import math
from dataclasses import dataclass

import numpy as np

from . import config
from .errors import (
    DegenerateTetrahedron,
    DegenerateTriangle,
    DomainError,
    InvalidPair,
    NonexistentTetrahedron,
)
from .trig_kernel import Geometry, TriangleSides, check_sides, half_angle_tangent, semi_quantities, sn

logger = logging.getLogger(__name__)

EDGE_LABELS = ('x', 'y', 'a', 'b', 'c', 'd')
VERTEX_LABELS = ('F1', 'F2', 'K', 'L')

# Edge label -> pair of vertex indices
EDGE_VERTICES = {
    'x': (0, 1),
    'y': (2, 3),
    'a': (0, 2),
    'b': (1, 2),
    'c': (1, 3),
    'd': (0, 3),
}
VERTEX_PAIR_EDGE = {frozenset(pair): label for label, pair in EDGE_VERTICES.items()}

FACES = (('x', 'a', 'b'), ('x', 'c', 'd'), ('y', 'a', 'd'), ('y', 'b', 'c'))

ANGLE_NAMES = {'x': 'phi', 'y': 'psi', 'a': 'alpha', 'b': 'beta', 'c': 'gamma', 'd': 'delta'}


@dataclass(frozen=True)
class EdgeLengths:
    x: float
    y: float
    a: float
    b: float
    c: float
    d: float

    @classmethod
    def from_sequence(cls, values):
        values = [float(v) for v in values]
        if len(values) != 6:
            raise DomainError(f"expected six edge lengths (x,y,a,b,c,d), got {len(values)}")
        if not all(math.isfinite(v) for v in values):
            raise DomainError(f"edge lengths must be finite, got {tuple(values)}")
        return cls(*values)

    def __getitem__(self, label):
        return getattr(self, label)

    def as_tuple(self):
        return tuple(getattr(self, label) for label in EDGE_LABELS)

    def replace(self, **changes):
        return dataclasses.replace(self, **changes)

    def distance_matrix(self):
        """4x4 matrix of vertex distances in F1, F2, K, L order."""
        m = np.zeros((4, 4))
        for label, (i, j) in EDGE_VERTICES.items():
            m[i, j] = m[j, i] = getattr(self, label)
        return m


@dataclass(frozen=True)
class DihedralAngles:
    phi: float
    psi: float
    alpha: float
    beta: float
    gamma: float
    delta: float

    def at(self, edge):
        """Dihedral angle at the edge with the given label."""
        return getattr(self, ANGLE_NAMES[edge])

    def as_tuple(self):
        return (self.phi, self.psi, self.alpha, self.beta, self.gamma, self.delta)

    def as_dict(self):
        return dataclasses.asdict(self)


@dataclass(frozen=True)
class Embedding:
    """Vertex coordinates, one row per vertex in F1, F2, K, L order."""
    geometry: Geometry
    vertices: np.ndarray

    def vertex(self, label):
        return self.vertices[VERTEX_LABELS.index(label)]


@dataclass(frozen=True)
class Tetrahedron:
    geometry: Geometry
    edges: EdgeLengths
    embedding: Embedding


@dataclass(frozen=True)
class GramData:
    """Vertex Gram matrix (curved case) or Cayley-Menger matrix (Euclidean case)."""
    matrix: np.ndarray
    determinant: float
    cofactors: np.ndarray


# ---------------------------------------------------------------------------
# Model-space helpers
# ---------------------------------------------------------------------------

def _sn_array(g, values):
    if g == Geometry.SPHERICAL:
        return np.sin(values)
    if g == Geometry.HYPERBOLIC:
        return np.sinh(values)
    return np.asarray(values, dtype=float)


def _cs_array(g, values):
    if g == Geometry.SPHERICAL:
        return np.cos(values)
    if g == Geometry.HYPERBOLIC:
        return np.cosh(values)
    return np.ones_like(np.asarray(values, dtype=float))


def distance(g, p, q):
    """Geodesic distance between two model points of any dimension."""
    diff = np.asarray(p, dtype=float) - np.asarray(q, dtype=float)
    if g == Geometry.EUCLIDEAN:
        return float(np.linalg.norm(diff))
    if g == Geometry.SPHERICAL:
        return 2 * math.asin(min(1.0, float(np.linalg.norm(diff)) / 2))
    chord_sq = float(diff[:-1] @ diff[:-1] - diff[-1] ** 2)
    return 2 * math.asinh(math.sqrt(max(chord_sq, 0.0)) / 2)


def minkowski(p, q):
    """Bilinear form of signature (n, 1), time coordinate last."""
    p = np.asarray(p, dtype=float)
    q = np.asarray(q, dtype=float)
    return float(p[:-1] @ q[:-1] - p[-1] * q[-1])


def reduced_gram(g, e):
    """Gram matrix of F2, K, L as seen from F1, plus the cs of their distances to F1.

    Entry (i, j) is sn(p)sn(q) - 2 sn((r+p-q)/2) sn((r-p+q)/2) with p, q the
    distances to F1 and r the distance between i and j.  In the curved cases this
    is the Schur complement of the F1 entry of the vertex Gram matrix; it is
    positive definite exactly when the tetrahedron exists.
    """
    dist = e.distance_matrix()
    p = dist[0, 1:]
    r = dist[1:, 1:]
    pi_, qj = np.meshgrid(p, p, indexing='ij')
    s_p = _sn_array(g, pi_)
    s_q = _sn_array(g, qj)
    h = s_p * s_q - 2 * _sn_array(g, (r + pi_ - qj) / 2) * _sn_array(g, (r - pi_ + qj) / 2)
    return h, _cs_array(g, p)


def _check_faces(g, e):
    for face in FACES:
        sides = TriangleSides(*(e[label] for label in face))
        name = '(' + ','.join(face) + ')'
        try:
            check_sides(g, sides)
        except DegenerateTriangle:
            raise DegenerateTetrahedron(f"face {name} is degenerate")
        except DomainError:
            raise NonexistentTetrahedron(f"face {name} violates triangle inequality")


# ---------------------------------------------------------------------------
# Operations
# ---------------------------------------------------------------------------

def validate(g, e):
    """Check existence of the tetrahedron and embed it in the model space."""
    g = Geometry(g)
    lengths = e.as_tuple()
    if not all(math.isfinite(v) for v in lengths):
        raise NonexistentTetrahedron(f"edge lengths must be finite, got {lengths}")
    if min(lengths) <= 0:
        raise NonexistentTetrahedron(f"edge lengths must be positive, got {lengths}")
    if g == Geometry.SPHERICAL and max(lengths) >= math.pi:
        raise NonexistentTetrahedron(f"spherical edge lengths must be < pi, got {lengths}")
    _check_faces(g, e)

    h, c = reduced_gram(g, e)
    eigenvalues = np.linalg.eigvalsh(h)
    relative = eigenvalues[0] / eigenvalues[-1]
    logger.debug("reduced Gram eigenvalues %s (relative %.3e)", eigenvalues, relative)
    if relative < -config.DEGENERACY_TOL:
        raise NonexistentTetrahedron(f"no tetrahedron with edges {lengths} in {g.name.lower()} space")
    if relative <= config.DEGENERACY_TOL:
        raise DegenerateTetrahedron(f"edges {lengths} give a flat tetrahedron")

    # F1 at the base point, F2 along the first axis, K in the first coordinate
    # plane, L on the positive side of the third coordinate.
    chol = np.linalg.cholesky(h)
    if g == Geometry.EUCLIDEAN:
        vertices = np.vstack([np.zeros(3), chol])
    else:
        vertices = np.zeros((4, 4))
        vertices[0, 3] = 1.0
        vertices[1:, :3] = chol
        vertices[1:, 3] = c
    vertices.setflags(write=False)
    return Tetrahedron(geometry=g, edges=e, embedding=Embedding(geometry=g, vertices=vertices))


def _corner_angle(g, opposite, p, q):
    """Angle between sides p and q of the triangle (opposite, p, q), by the half-angle formula.

    Rounding below zero is clamped rather than raised, so faces and vertex links
    of nearly flat tetrahedra still get angles close to 0 or pi.
    """
    s = (opposite + p + q) / 2
    numerator = sn(g, s - p) * sn(g, s - q)
    denominator = sn(g, s) * sn(g, s - opposite)
    return 2 * math.atan2(math.sqrt(max(numerator, 0.0)), math.sqrt(max(denominator, 0.0)))


def dihedral_angles_from_edges(g, e):
    """Dihedral angles straight from the edge lengths, through the vertex links.

    The link of vertex i is a spherical triangle whose sides are the three face
    angles at i; its angle between the face angles adjacent to edge ij is the
    dihedral angle at ij.  No validation or embedding, and no matrix inverse, so
    callers that integrate along a path can evaluate it arbitrarily close to
    either flat end.
    """
    g = Geometry(g)
    angles = {}
    for label, (i, j) in EDGE_VERTICES.items():
        k, l = (v for v in range(4) if v not in (i, j))
        edge = {pair: VERTEX_PAIR_EDGE[frozenset(pair)] for pair in ((i, k), (i, l), (j, k), (j, l), (k, l))}
        towards_k = _corner_angle(g, e[edge[j, k]], e[label], e[edge[i, k]])
        towards_l = _corner_angle(g, e[edge[j, l]], e[label], e[edge[i, l]])
        across = _corner_angle(g, e[edge[k, l]], e[edge[i, k]], e[edge[i, l]])
        angles[ANGLE_NAMES[label]] = _corner_angle(Geometry.SPHERICAL, across, towards_k, towards_l)
    return DihedralAngles(**angles)


def _dihedral_angles_from_normals(vertices):
    angles = {}
    for label, (i, j) in EDGE_VERTICES.items():
        k, l = (v for v in range(4) if v not in (i, j))
        normals = []
        for away, third in ((k, l), (l, k)):
            n = np.cross(vertices[j] - vertices[i], vertices[third] - vertices[i])
            if n @ (vertices[away] - vertices[i]) > 0:
                n = -n
            normals.append(n)
        between = math.atan2(np.linalg.norm(np.cross(*normals)), normals[0] @ normals[1])
        angles[ANGLE_NAMES[label]] = math.pi - between
    return DihedralAngles(**angles)


def dihedral_angles(t):
    """Interior dihedral angles at all six edges."""
    if t.geometry == Geometry.EUCLIDEAN:
        return _dihedral_angles_from_normals(t.embedding.vertices)
    return dihedral_angles_from_edges(t.geometry, t.edges)


def _face_triangle(t, e1, e2):
    if e1 not in EDGE_VERTICES or e2 not in EDGE_VERTICES:
        raise InvalidPair(f"unknown edge label in {(e1, e2)}")
    shared = set(EDGE_VERTICES[e1]) & set(EDGE_VERTICES[e2])
    if e1 == e2 or len(shared) != 1:
        raise InvalidPair(f"edges {e1} and {e2} do not share a vertex")
    (vertex,) = shared
    far = [v for v in EDGE_VERTICES[e1] + EDGE_VERTICES[e2] if v != vertex]
    third = VERTEX_PAIR_EDGE[frozenset(far)]
    return TriangleSides(t.edges[third], t.edges[e1], t.edges[e2])


def face_half_angle_tangent(t, e1, e2):
    """tan of half the face angle between two edges meeting at a vertex."""
    return half_angle_tangent(t.geometry, _face_triangle(t, e1, e2), 0)


def face_angle(t, e1, e2):
    """Angle at the common vertex of two edges, measured inside their common face."""
    return 2 * math.atan(face_half_angle_tangent(t, e1, e2))


def face_area(t, face):
    """Area of the face spanned by three edge labels (Heron / angle excess)."""
    sides = TriangleSides(*(t.edges[label] for label in face))
    if t.geometry == Geometry.EUCLIDEAN:
        # Kahan's ordering keeps Heron's formula accurate for needle triangles
        a, b, c = sorted((sides.a, sides.b, sides.c), reverse=True)
        product = (a + (b + c)) * (c - (a - b)) * (c + (a - b)) * (a + (b - c))
        return math.sqrt(max(product, 0.0)) / 4
    # angle excess (or defect) is 2*sigma - pi
    return abs(2 * semi_quantities(t.geometry, sides).sigma - math.pi)


def solid_angle(t, v):
    """Area of the vertex link: sum of the three incident dihedral angles minus pi."""
    index = VERTEX_LABELS.index(v)
    angles = dihedral_angles(t)
    incident = [label for label, pair in EDGE_VERTICES.items() if index in pair]
    return sum(angles.at(label) for label in incident) - math.pi


def _cofactor_matrix(m):
    n = m.shape[0]
    cof = np.empty_like(m)
    for i in range(n):
        for j in range(n):
            minor = np.delete(np.delete(m, i, axis=0), j, axis=1)
            cof[i, j] = (-1) ** (i + j) * np.linalg.det(minor)
    return cof


def vertex_gram(g, e):
    """Gram matrix <v_i, v_j> of the embedded vertices (curved geometries)."""
    return g.curvature * _cs_array(g, e.distance_matrix())


def cayley_menger(e):
    """Bordered matrix of squared distances in F1, F2, K, L order."""
    m = np.ones((5, 5))
    m[0, 0] = 0.0
    m[1:, 1:] = e.distance_matrix() ** 2
    return m


def gram_data(t):
    """Gram (or Cayley-Menger) matrix with its determinant and cofactors."""
    if t.geometry == Geometry.EUCLIDEAN:
        matrix = cayley_menger(t.edges)
    else:
        matrix = vertex_gram(t.geometry, t.edges)
    return GramData(matrix=matrix, determinant=float(np.linalg.det(matrix)), cofactors=_cofactor_matrix(matrix))
