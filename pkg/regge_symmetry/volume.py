"""Volumes of Euclidean, spherical and hyperbolic tetrahedra.

Euclidean volumes come from the Cayley-Menger determinant or from the
two-face ("height times base") formula.  Curved volumes are obtained by
integrating the Schlafli differential

    dVol = +/- 1/2 * sum(l_i * dtheta_i)      (+ spherical, - hyperbolic)

along the deformation that changes only the y-edge, starting from the
folded end (dihedral angle 0 at the x-edge).  The volume tends to zero there
in every geometry.  At the unfolded end it need not: a spherical tetrahedron
can tend to a hemisphere (volume pi^2) or have K and L run into antipodal
points.
"""
from __future__ import annotations

import logging
import math
from dataclasses import dataclass, field

import numpy as np
from scipy.integrate import quad

from . import config
from .errors import (
    DomainError,
    InvalidTetrahedron,
    NearDegenerate,
    NonexistentTetrahedron,
    NoValidRange,
    PathUnbounded,
    QuadratureFailure,
)
from .tetrahedron import (
    FACES,
    dihedral_angles,
    dihedral_angles_from_edges,
    face_area,
    reduced_gram,
    validate,
)
from .trig_kernel import Geometry, TriangleSides, check_sides, solve_angles_from_sides, third_side

logger = logging.getLogger(__name__)

# Finite-difference steps, relative to the natural length scale
PATH_STEP = 1e-3
EDGE_STEP = 1e-4
# Closest approach to the flattening endpoint, relative to the path length in u
PATH_FLOOR = 1e-4
# Reduced-Gram eigenvalue ratio below which finite differences are refused
NEAR_FLAT = 1e-6


@dataclass(frozen=True)
class QuadratureOptions:
    abs_tol: float = config.QUAD_TOL
    max_subdivisions: int = config.QUAD_LIMIT
    substitute_endpoint: bool = True

    def __post_init__(self):
        if not self.abs_tol > 0:
            raise DomainError(f"quadrature tolerance must be positive, got {self.abs_tol}")
        if self.max_subdivisions < 1:
            raise DomainError(f"max_subdivisions must be >= 1, got {self.max_subdivisions}")


@dataclass(frozen=True)
class VolumeResult:
    value: float
    error: float = 0.0


@dataclass(frozen=True)
class PathSample:
    t: float
    angles: tuple
    rate: float


@dataclass(frozen=True)
class SchlafliPath:
    """The y-deformation of a tetrahedron, sampled between the target and flattening."""
    geometry: Geometry
    base: object
    t_start: float
    t_end: float
    samples: list = field(default_factory=list)


# ---------------------------------------------------------------------------
# Euclidean formulas
# ---------------------------------------------------------------------------

def volume_euclidean_cm(e):
    """Cayley-Menger volume, with the determinant laid out in K, F1, F2, L order."""
    x, y, a, b, c, d = (v * v for v in e.as_tuple())
    matrix = np.array([
        [0.0, 1.0, 1.0, 1.0, 1.0],
        [1.0, 0.0, a, b, y],
        [1.0, a, 0.0, x, d],
        [1.0, b, x, 0.0, c],
        [1.0, y, d, c, 0.0],
    ])
    det = float(np.linalg.det(matrix))
    scale = max(e.as_tuple()) ** 6
    logger.debug("Cayley-Menger determinant %.6e (scale %.3e)", det, scale)
    if det < -config.DEGENERACY_TOL * scale:
        raise NonexistentTetrahedron(f"Cayley-Menger determinant {det:.3e} is negative")
    if det <= config.DEGENERACY_TOL * scale:
        return 0.0
    return math.sqrt(det / 288)


def volume_euclidean_two_face(t, edge):
    """Vol = 2/3 * A1 * A2 * sin(theta) / l for the two faces meeting at an edge."""
    if t.geometry != Geometry.EUCLIDEAN:
        raise DomainError("the two-face formula is Euclidean only")
    first, second = (face for face in FACES if edge in face)
    theta = dihedral_angles(t).at(edge)
    return 2 / 3 * face_area(t, first) * face_area(t, second) * math.sin(theta) / t.edges[edge]


# ---------------------------------------------------------------------------
# Flattening deformation
# ---------------------------------------------------------------------------

def flattening_range(g, e):
    """Interval (y_min, y_max) of y-edge lengths giving a tetrahedron with the other five edges of e.

    The faces (x, a, b) and (x, c, d) hinge on the x-edge; y grows monotonically
    with the dihedral angle there, from 0 (faces folded together) to pi
    (faces unfolded into one plane).
    """
    g = Geometry(g)
    try:
        check_sides(g, TriangleSides(e.b, e.x, e.a))
        check_sides(g, TriangleSides(e.c, e.x, e.d))
    except DomainError as exc:
        raise NoValidRange(f"faces (x,a,b) and (x,c,d) must both exist: {exc}")

    try:
        # Face angles at F1 between x and a, and between x and d
        theta_k = solve_angles_from_sides(g, TriangleSides(e.b, e.x, e.a)).alpha
        theta_l = solve_angles_from_sides(g, TriangleSides(e.c, e.x, e.d)).alpha
        opened = theta_k + theta_l
        if opened > math.pi:
            opened = 2 * math.pi - opened
        y_min = third_side(g, e.a, e.d, abs(theta_k - theta_l))
        y_max = third_side(g, e.a, e.d, opened)
    except OverflowError:
        raise PathUnbounded(f"flattening length overflowed for edges {e.as_tuple()}")
    if not math.isfinite(y_max):
        raise PathUnbounded(f"flattening length overflowed for edges {e.as_tuple()}")
    logger.debug("flattening range for %s: (%.15g, %.15g)", e.as_tuple(), y_min, y_max)
    return y_min, y_max


def flattening_parameter(g, e):
    """Largest y for which the tetrahedron exists; there it flattens."""
    return flattening_range(g, e)[1]


# ---------------------------------------------------------------------------
# Schlafli integration
# ---------------------------------------------------------------------------

def _angle_vector(g, e):
    return np.array(dihedral_angles_from_edges(g, e).as_tuple())


def _richardson(func, at, h):
    """Central difference with one Richardson extrapolation step."""
    coarse = (func(at + h) - func(at - h)) / (2 * h)
    fine = (func(at + h / 2) - func(at - h / 2)) / h
    return (4 * fine - coarse) / 3


def _schlafli_sign(g):
    return 1.0 if g == Geometry.EUCLIDEAN else float(g.curvature)


def _flatness(g, e):
    h, _ = reduced_gram(g, e)
    eigenvalues = np.linalg.eigvalsh(h)
    return eigenvalues[0] / eigenvalues[-1]


def schlafli_form(t, direction):
    """+/- 1/2 * sum(l_i * dtheta_i / dl_direction); zero for Euclidean tetrahedra."""
    g, e = t.geometry, t.edges
    length = e[direction]
    h = EDGE_STEP * max(e.as_tuple())
    try:
        for shifted in (length - h, length + h):
            candidate = e.replace(**{direction: shifted})
            validate(g, candidate)
            if _flatness(g, candidate) < NEAR_FLAT:
                raise NearDegenerate(f"tetrahedron {e.as_tuple()} is nearly flat")
    except InvalidTetrahedron as exc:
        raise NearDegenerate(f"cannot differentiate at {e.as_tuple()}: {exc}")

    def angles(value):
        return _angle_vector(g, e.replace(**{direction: value}))

    rates = _richardson(angles, length, h)
    return 0.5 * _schlafli_sign(g) * float(np.array(e.as_tuple()) @ rates)


def _volume_rate(g, e, anchor, direction, u, u_floor, step):
    """dVol/du along y = anchor + direction * u^2."""
    u = max(u, u_floor)
    h = min(step, u / 4)
    lengths = np.array(e.replace(y=anchor + direction * u * u).as_tuple())

    def angles(v):
        return _angle_vector(g, e.replace(y=anchor + direction * v * v))

    return 0.5 * g.curvature * float(lengths @ _richardson(angles, u, h))


def _volume_rate_in_y(g, e, y_min, y_max, y, y_floor, step):
    """dVol/dy along the path, without the endpoint substitution."""
    y = min(max(y, y_min + y_floor), y_max - y_floor)
    h = min(step, (y - y_min) / 4, (y_max - y) / 4)
    lengths = np.array(e.replace(y=y).as_tuple())

    def angles(v):
        return _angle_vector(g, e.replace(y=v))

    return 0.5 * g.curvature * float(lengths @ _richardson(angles, y, h))


def _integrate(integrand, lower, upper, tol, opts):
    result = quad(integrand, lower, upper, epsabs=tol, epsrel=0.0,
                  limit=opts.max_subdivisions, full_output=1)
    value, error = result[0], result[1]
    logger.debug("Schlafli quadrature on [%.6g, %.6g]: value %.12g, error %.3e, %d evaluations",
                 lower, upper, value, error, result[2]['neval'])
    if len(result) > 3:
        if error > tol:
            raise QuadratureFailure(f"quadrature stopped at error {error:.3e}: {result[3]}")
        logger.warning("quadrature reported: %s", result[3])
    return value, error


def volume_schlafli(t, opts=None):
    """Volume of a spherical or hyperbolic tetrahedron by integrating the Schlafli form.

    The integral runs from the folded end y_min of the y-deformation.  Up to the
    middle of the valid interval it is taken in u with y = y_min + u^2, beyond it
    in v with y = y_max - v^2; both substitutions remove the square-root
    behaviour of the angles at the two flat ends.
    """
    opts = opts or QuadratureOptions()
    g, e = t.geometry, t.edges
    if g == Geometry.EUCLIDEAN:
        raise DomainError("Schlafli integration needs a curved geometry")
    y_min, y_max = flattening_range(g, e)
    if not y_min < e.y < y_max:
        raise NoValidRange(f"y={e.y} is outside the valid interval ({y_min}, {y_max})")
    width = y_max - y_min
    tol = opts.abs_tol / 2

    if not opts.substitute_endpoint:
        integrand = lambda y: _volume_rate_in_y(g, e, y_min, y_max, y, PATH_FLOOR ** 2 * width, PATH_STEP * width)
        value, error = _integrate(integrand, y_min, e.y, opts.abs_tol, opts)
        return VolumeResult(value=value, error=error)

    middle = y_min + width / 2
    reach = math.sqrt(width / 2)
    floor, step = PATH_FLOOR * reach, PATH_STEP * reach
    value, error = _integrate(lambda u: _volume_rate(g, e, y_min, 1.0, u, floor, step),
                              0.0, math.sqrt(min(e.y, middle) - y_min), tol, opts)
    if e.y > middle:
        # Vol(y) - Vol(middle), with v running from sqrt(y_max - y) up to reach
        tail, tail_error = _integrate(lambda v: _volume_rate(g, e, y_max, -1.0, v, floor, step),
                                      math.sqrt(y_max - e.y), reach, tol, opts)
        value -= tail
        error += tail_error
    return VolumeResult(value=value, error=error)


def volume(t, opts=None):
    """Volume in the tetrahedron's own geometry."""
    if t.geometry == Geometry.EUCLIDEAN:
        return VolumeResult(value=volume_euclidean_cm(t.edges))
    return volume_schlafli(t, opts)


def schlafli_path(t, count=20):
    """Sample the y-deformation from t up to (not including) the flattening point."""
    g, e = t.geometry, t.edges
    _, y_max = flattening_range(g, e)
    path = SchlafliPath(geometry=g, base=e, t_start=y_max, t_end=e.y)
    # Sample in u so points crowd towards the flattening end
    for u in np.linspace(math.sqrt(y_max - e.y), 0.0, count + 1)[:-1]:
        y = y_max - u * u
        try:
            current = validate(g, e.replace(y=y))
            rate = schlafli_form(current, 'y')
        except (InvalidTetrahedron, NearDegenerate):
            break
        path.samples.append(PathSample(t=y, angles=dihedral_angles(current).as_tuple(), rate=rate))
    return path
