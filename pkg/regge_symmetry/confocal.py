"""Confocal conics and quadrics, elliptic coordinates and Ivory's lemma.

A family is written uniformly as

    sum_i eps_i * x_i^2 / (e_i - lam) = 1      (Euclidean)
    sum_i eps_i * x_i^2 / (e_i - lam) = 0      (sphere, hyperboloid)

with poles e_i = a_i^2 for the first n coordinates.  In the curved cases the
last coordinate is the base coordinate of the model: its pole is -c^2 with
eps = +1 on the sphere and c^2 with eps = -1 on the hyperboloid, which turns
the cone equations of the two models into the form above.

The "rotational" family sweeps a planar family about its focal axis; a point
is then described by the planar coordinates of its meridian section plus the
rotation angle.
"""
from __future__ import annotations

import itertools
import logging
import math
from dataclasses import dataclass

import numpy as np
from scipy.optimize import brentq

from .errors import (
    BandMismatch,
    ConstructionFailure,
    DegenerateConfiguration,
    DegeneratePoint,
    DomainError,
    EmptyBox,
    PoleParameter,
)
from .regge_transform import regge_edges
from .tetrahedron import distance
from .trig_kernel import Geometry, TriangleSides, cs, half_angle_tangent, sn

logger = logging.getLogger(__name__)

POLE_TOL = 1e-12
ZERO_COORDINATE = 1e-12
MAX_HALVINGS = 200


@dataclass(frozen=True)
class ConfocalFamily:
    """Squared semi-axes a_1^2 > ... > a_n^2 (plus c^2 for a curved family)."""
    geometry: Geometry
    axes_sq: tuple
    rotational: bool = False

    def __post_init__(self):
        g = Geometry(self.geometry)
        object.__setattr__(self, 'geometry', g)
        object.__setattr__(self, 'axes_sq', tuple(float(v) for v in self.axes_sq))
        n = self.planar_dimension
        if n < 1:
            raise DomainError(f"family needs at least one semi-axis, got {self.axes_sq}")
        axes = self.axes_sq[:n]
        if any(a <= b for a, b in zip(axes, axes[1:])):
            raise DomainError(f"semi-axes must strictly decrease, got {axes}")
        if g == Geometry.HYPERBOLIC and not self.axes_sq[n] > axes[0]:
            raise DomainError("hyperbolic family needs c^2 > a_1^2 for proper foci")
        if g == Geometry.SPHERICAL and not -self.axes_sq[n] < axes[-1]:
            raise DomainError("spherical family needs -c^2 < a_n^2")
        if self.rotational and n != 2:
            raise DomainError("a rotational family is swept from a planar (n = 2) family")

    @classmethod
    def from_foci(cls, g, half_focal, rotational=False):
        """Family whose foci sit at distance half_focal on either side of the center."""
        g = Geometry(g)
        if g == Geometry.EUCLIDEAN:
            return cls(g, (half_focal ** 2, 0.0), rotational)
        return cls(g, (sn(g, half_focal) ** 2, 0.0, cs(g, half_focal) ** 2), rotational)

    @property
    def planar_dimension(self):
        """Number of semi-axes of the generating family (excluding c^2)."""
        return len(self.axes_sq) - (0 if self.geometry == Geometry.EUCLIDEAN else 1)

    @property
    def dimension(self):
        return self.planar_dimension + (1 if self.rotational else 0)

    @property
    def poles(self):
        n = self.planar_dimension
        e = list(self.axes_sq[:n])
        if self.geometry == Geometry.SPHERICAL:
            e.append(-self.axes_sq[n])
        elif self.geometry == Geometry.HYPERBOLIC:
            e.append(self.axes_sq[n])
        return np.array(e)

    @property
    def signs(self):
        eps = np.ones(len(self.axes_sq))
        if self.geometry == Geometry.HYPERBOLIC:
            eps[-1] = -1.0
        return eps

    @property
    def bands(self):
        """Open parameter intervals, lowest first; band i holds the i-th elliptic coordinate."""
        n = self.planar_dimension
        if self.geometry == Geometry.SPHERICAL:
            lower = -self.axes_sq[n]
        else:
            lower = -math.inf
        ends = [lower] + sorted(self.axes_sq[:n])
        return list(zip(ends, ends[1:]))

    @property
    def rhs(self):
        return 1.0 if self.geometry == Geometry.EUCLIDEAN else 0.0


@dataclass(frozen=True)
class EllipticCoordinates:
    lambdas: tuple
    angle: float = None


@dataclass(frozen=True)
class Box:
    """Two parameter values per band; for a rotational family also two rotation angles.

    signs multiplies the planar coordinates of every corner (the last coordinate
    of a curved model is never flipped).
    """
    family: ConfocalFamily
    lambdas: tuple
    signs: tuple = None
    angles: tuple = None


@dataclass(frozen=True)
class IvoryReport:
    diagonals: tuple
    max_difference: float


@dataclass(frozen=True)
class PartnerPoints:
    Kbar: np.ndarray
    Lbar: np.ndarray
    distance: float


@dataclass(frozen=True)
class TransverseHeights:
    """Distances to the focal axis and the axial/transverse scaling factors."""
    h_K: float
    h_L: float
    h_Kbar: float
    h_Lbar: float
    p: float
    q: float


# ---------------------------------------------------------------------------
# Coordinates of a point
# ---------------------------------------------------------------------------

def _planar(f, p):
    """Meridian-section coordinates of a point (identity unless rotational)."""
    p = np.asarray(p, dtype=float)
    if not f.rotational:
        return p
    rho = math.hypot(p[1], p[2])
    if f.geometry == Geometry.EUCLIDEAN:
        return np.array([p[0], rho])
    return np.array([p[0], rho, p[3]])


def _quadric_value(f, lam, q):
    return float(np.sum(f.signs * q * q / (f.poles - lam))) - f.rhs


def _check_pole(f, lam):
    poles = f.poles
    gaps = np.abs(poles - lam)
    if gaps.min() <= POLE_TOL * max(1.0, float(np.abs(poles).max())):
        raise PoleParameter(f"lambda={lam} is a pole of the family {f.axes_sq}")


def quadric_point_residual(f, lam, p):
    """Left minus right side of the defining equation of Q(lam) at p."""
    _check_pole(f, lam)
    return _quadric_value(f, lam, _planar(f, p))


def band_index(f, lam):
    """Index of the open band containing lam, or None."""
    for i, (lo, hi) in enumerate(f.bands):
        if lo < lam < hi:
            return i
    return None


def _root_in_band(func, lo, hi):
    # func runs from negative values at lo up to +inf at hi
    width = hi - lo if math.isfinite(lo) else max(1.0, abs(hi))
    step = 1e-3 * width
    right = hi - step
    for _ in range(MAX_HALVINGS):
        if func(right) > 0:
            break
        step /= 2
        right = hi - step
    else:
        raise DegeneratePoint(f"no sign change below the pole {hi}")

    if math.isfinite(lo):
        step = 1e-3 * width
        left = lo + step
        for _ in range(MAX_HALVINGS):
            if func(left) < 0:
                break
            step /= 2
            left = lo + step
        else:
            raise DegeneratePoint(f"no sign change above {lo}")
    else:
        reach = width
        left = right - reach
        for _ in range(MAX_HALVINGS):
            if func(left) < 0:
                break
            reach *= 2
            left = right - reach
        else:
            raise DegeneratePoint("no sign change in the unbounded band")

    return brentq(func, left, right, xtol=1e-15 * max(1.0, abs(left), abs(right)), maxiter=500)


def _euclidean_plane_roots(e, q):
    # (e1 - lam)(e2 - lam) - q0^2 (e2 - lam) - q1^2 (e1 - lam) = 0
    total = e[0] + e[1] - q[0] ** 2 - q[1] ** 2
    product = e[0] * e[1] - q[0] ** 2 * e[1] - q[1] ** 2 * e[0]
    disc = total * total - 4 * product
    if disc <= 0:
        raise DegeneratePoint(f"elliptic coordinates collide at {tuple(q)}")
    root = math.sqrt(disc)
    if total >= 0:
        big = (total + root) / 2
        return product / big, big
    small = (total - root) / 2
    return small, product / small


def elliptic_coordinates(f, p):
    """Parameters of the quadrics of the family through p, one per band."""
    q = _planar(f, p)
    checked = q if f.geometry != Geometry.HYPERBOLIC else q[:-1]
    if np.any(np.abs(checked) <= ZERO_COORDINATE * float(np.linalg.norm(q))):
        raise DegeneratePoint(f"point {tuple(np.asarray(p))} lies on a coordinate hyperplane")

    if f.geometry == Geometry.EUCLIDEAN and f.planar_dimension == 2:
        lambdas = _euclidean_plane_roots(f.poles, q)
    else:
        lambdas = tuple(
            _root_in_band(lambda lam: _quadric_value(f, lam, q), lo, hi)
            for lo, hi in f.bands
        )

    for lam in lambdas:
        logger.debug("lambda=%.15g residual %.3e", lam, _quadric_value(f, lam, q))
    angle = math.atan2(p[2], p[1]) if f.rotational else None
    return EllipticCoordinates(lambdas=tuple(float(v) for v in lambdas), angle=angle)


# ---------------------------------------------------------------------------
# Boxes
# ---------------------------------------------------------------------------

def _corner(f, lambdas):
    """Positive-orthant point on the quadrics Q(lambda_1), ..., Q(lambda_n)."""
    e, eps = f.poles, f.signs
    kappa = f.geometry.curvature
    coords = []
    for i, pole in enumerate(e):
        numerator = np.prod([lam - pole for lam in lambdas])
        denominator = np.prod([other - pole for k, other in enumerate(e) if k != i])
        ratio = numerator / denominator
        square = -ratio if kappa == 0 else kappa * eps[i] * ratio
        if square < -1e-12 * max(1.0, abs(ratio)):
            raise EmptyBox(f"quadrics {lambdas} do not meet")
        coords.append(math.sqrt(max(square, 0.0)))
    return np.array(coords)


def _lift(f, q, angle):
    if f.geometry == Geometry.EUCLIDEAN:
        return np.array([q[0], q[1] * math.cos(angle), q[1] * math.sin(angle)])
    return np.array([q[0], q[1] * math.cos(angle), q[1] * math.sin(angle), q[2]])


def box_vertices(b):
    """Corners of the box, keyed by which of the two values each band (then angle) takes."""
    f = b.family
    n = f.planar_dimension
    if len(b.lambdas) != 2 * n:
        raise EmptyBox(f"expected {2 * n} parameters, got {len(b.lambdas)}")
    pairs = [tuple(b.lambdas[2 * i:2 * i + 2]) for i in range(n)]
    for i, pair in enumerate(pairs):
        for lam in pair:
            if band_index(f, lam) != i:
                raise EmptyBox(f"lambda={lam} is not inside band {f.bands[i]}")
        if abs(pair[0] - pair[1]) <= POLE_TOL * max(1.0, abs(pair[0])):
            raise EmptyBox(f"layer {pair} has zero thickness")

    choices = n
    if f.rotational:
        if b.angles is None or len(b.angles) != 2 or b.angles[0] == b.angles[1]:
            raise EmptyBox("a rotational box needs two distinct rotation angles")
        choices += 1

    signs = np.ones(len(f.axes_sq))
    if b.signs is not None:
        if len(b.signs) not in (f.planar_dimension, len(f.axes_sq)):
            raise DomainError(f"expected {len(f.axes_sq)} signs, got {len(b.signs)}")
        if any(s not in (-1, 1) for s in b.signs):
            raise DomainError(f"signs must be +1 or -1, got {b.signs}")
        signs[:len(b.signs)] = b.signs
        if f.geometry != Geometry.EUCLIDEAN:
            signs[-1] = 1.0

    corners = {}
    for bits in itertools.product((0, 1), repeat=choices):
        q = _corner(f, [pairs[i][bits[i]] for i in range(n)]) * signs
        corners[bits] = _lift(f, q, b.angles[bits[n]]) if f.rotational else q
    return corners


def ivory_check(b):
    """Lengths of the great diagonals of the box and their largest spread."""
    corners = box_vertices(b)
    g = b.family.geometry
    diagonals = []
    for bits, p in corners.items():
        if bits[0] == 0:
            opposite = tuple(1 - v for v in bits)
            diagonals.append(distance(g, p, corners[opposite]))
    report = IvoryReport(diagonals=tuple(diagonals), max_difference=max(diagonals) - min(diagonals))
    logger.info("Ivory diagonals %s, spread %.3e", report.diagonals, report.max_difference)
    return report


def ivory_affine_map(f, lam, lam_prime):
    """Diagonal linear map sending Q(lam) onto Q(lam_prime)."""
    first, second = band_index(f, lam), band_index(f, lam_prime)
    if first is None or first != second:
        raise BandMismatch(f"lambda={lam} and lambda'={lam_prime} are in different bands")
    factors = np.sqrt((f.poles - lam_prime) / (f.poles - lam))
    if f.rotational:
        factors = np.insert(factors, 2, factors[1])
    return np.diag(factors)


def orthogonality_defect(f, p, lam1, lam2):
    """Cosine of the angle between the normals of Q(lam1) and Q(lam2) at p."""
    q = _planar(f, p)
    eps = f.signs
    n1 = q / (f.poles - lam1)
    n2 = q / (f.poles - lam2)
    inner = float(np.sum(eps * n1 * n2))
    return inner / math.sqrt(abs(float(np.sum(eps * n1 * n1))) * abs(float(np.sum(eps * n2 * n2))))


# ---------------------------------------------------------------------------
# Conics with given foci
# ---------------------------------------------------------------------------

def _standard_foci(g, half_focal):
    """Foci symmetric about the center of the model plane, with the frame at F1."""
    f = half_focal
    if g == Geometry.EUCLIDEAN:
        return np.array([-f, 0.0]), np.array([f, 0.0]), np.array([1.0, 0.0]), np.array([0.0, 1.0])
    if g == Geometry.SPHERICAL:
        f1 = np.array([-math.sin(f), 0.0, math.cos(f)])
        f2 = np.array([math.sin(f), 0.0, math.cos(f)])
        u = np.array([math.cos(f), 0.0, math.sin(f)])
    else:
        f1 = np.array([-math.sinh(f), 0.0, math.cosh(f)])
        f2 = np.array([math.sinh(f), 0.0, math.cosh(f)])
        u = np.array([math.cosh(f), 0.0, -math.sinh(f)])
    return f1, f2, u, np.array([0.0, 1.0, 0.0])


def _geodesic_point(g, base, u, v, r, theta):
    direction = math.cos(theta) * u + math.sin(theta) * v
    if g == Geometry.EUCLIDEAN:
        return base + r * direction
    return cs(g, r) * base + sn(g, r) * direction


def tangent_invariants(g, f1, f2, p):
    """Product and ratio of tan(half angle) at F1 and F2 in the triangle F1 F2 P."""
    g = Geometry(g)
    c = distance(g, f1, f2)
    r1 = distance(g, p, f1)
    r2 = distance(g, p, f2)
    sides = TriangleSides(r2, r1, c)
    try:
        k1 = half_angle_tangent(g, sides, 0)
        k2 = half_angle_tangent(g, sides, 1)
    except DomainError as exc:
        raise DegenerateConfiguration(f"point is collinear with the foci: {exc}")
    return k1 * k2, k1 / k2


def conic_points(g, half_focal, kind, constant, count=100):
    """Points of an ellipse (r1 + r2 = constant) or hyperbola (r1 - r2 = constant).

    Foci are placed by _standard_foci; points come back on the upper half.
    """
    g = Geometry(g)
    c = 2 * half_focal
    if kind == 'ellipse':
        upper = math.pi if g == Geometry.SPHERICAL else math.inf
        if not c < constant < 2 * upper - c:
            raise DomainError(f"focal sum {constant} must exceed the focal distance {c}")
        lo, hi = (constant - c) / 2, (constant + c) / 2
    elif kind == 'hyperbola':
        if not abs(constant) < c:
            raise DomainError(f"focal difference {constant} must be below the focal distance {c}")
        lo = (c + constant) / 2
        if g == Geometry.SPHERICAL:
            hi = (2 * math.pi - c + constant) / 2
        else:
            hi = lo + 3 * c
    else:
        raise DomainError(f"unknown conic kind {kind!r}")

    f1, f2, u, v = _standard_foci(g, half_focal)
    points = []
    for r1 in np.linspace(lo, hi, count + 2)[1:-1]:
        r2 = constant - r1 if kind == 'ellipse' else r1 - constant
        theta = 2 * math.atan(half_angle_tangent(g, TriangleSides(r2, r1, c), 0))
        points.append(_geodesic_point(g, f1, u, v, r1, theta))
    return (f1, f2), points


# ---------------------------------------------------------------------------
# Tetrahedra and the rotational family
# ---------------------------------------------------------------------------

def focal_frame(g, x, p):
    """Move a point of a tetrahedron embedding so F1 and F2 sit symmetrically about the center."""
    g = Geometry(g)
    p = np.asarray(p, dtype=float)
    f = x / 2
    out = p.copy()
    if g == Geometry.EUCLIDEAN:
        out[0] = p[0] - f
    elif g == Geometry.SPHERICAL:
        out[0] = p[0] * math.cos(f) - p[3] * math.sin(f)
        out[3] = p[0] * math.sin(f) + p[3] * math.cos(f)
    else:
        out[0] = p[0] * math.cosh(f) - p[3] * math.sinh(f)
        out[3] = -p[0] * math.sinh(f) + p[3] * math.cosh(f)
    return out


def regge_partner_points(t):
    """Place the partner's K and L opposite the x-edge of t and measure |K L| for them.

    L-bar goes in the half-plane of K and K-bar in the half-plane of L, so the
    four points are the corners of a box of the rotational confocal family
    with foci F1, F2; Ivory's lemma makes |K-bar L-bar| equal to y.
    """
    g, e = t.geometry, t.edges
    s = regge_edges(e).s
    vertices = t.embedding.vertices
    f1, l = vertices[0], vertices[3]
    dim = vertices.shape[1]
    u = np.zeros(dim)
    u[0] = 1.0
    toward_k = np.zeros(dim)
    toward_k[1] = 1.0
    toward_l = np.zeros(dim)
    toward_l[1:3] = l[1:3] / math.hypot(l[1], l[2])

    try:
        angle_lbar = 2 * math.atan(half_angle_tangent(g, TriangleSides(s - e.d, e.x, s - e.c), 0))
        angle_kbar = 2 * math.atan(half_angle_tangent(g, TriangleSides(s - e.a, e.x, s - e.b), 0))
    except DomainError as exc:
        raise ConstructionFailure(f"partner face does not exist: {exc}")

    lbar = _geodesic_point(g, f1, u, toward_k, s - e.c, angle_lbar)
    kbar = _geodesic_point(g, f1, u, toward_l, s - e.b, angle_kbar)
    return PartnerPoints(Kbar=kbar, Lbar=lbar, distance=distance(g, kbar, lbar))


def transverse_heights(t):
    """Distances of K, L, K-bar, L-bar to the x-axis together with the ellipsoid scaling factors."""
    if t.geometry != Geometry.EUCLIDEAN:
        raise DomainError("transverse heights are measured in Euclidean space")
    e = t.edges
    points = regge_partner_points(t)
    k, l = t.embedding.vertex('K'), t.embedding.vertex('L')
    f = e.x / 2
    major_k, major_l = (e.a + e.b) / 2, (e.c + e.d) / 2
    return TransverseHeights(
        h_K=float(np.linalg.norm(k[1:])),
        h_L=float(np.linalg.norm(l[1:])),
        h_Kbar=float(np.linalg.norm(points.Kbar[1:])),
        h_Lbar=float(np.linalg.norm(points.Lbar[1:])),
        p=major_l / major_k,
        q=math.sqrt(major_l ** 2 - f ** 2) / math.sqrt(major_k ** 2 - f ** 2),
    )
