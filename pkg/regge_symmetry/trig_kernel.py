"""Triangle solvers for the three constant-curvature planes.

Every routine takes a Geometry tag and dispatches on its curvature:
0 (Euclidean), +1 (unit sphere), -1 (hyperbolic plane of curvature -1).
Lengths on the sphere are arc lengths in radians.

Besides the usual cosine-law solvers this module exposes the four
half-angle bijections of a triangle with one fixed element:

  * fixed side c:      a + b  <->  tan(alpha/2) * tan(beta/2)
                       a - b  <->  tan(alpha/2) / tan(beta/2)
  * fixed angle gamma: alpha + beta  <->  tn(a/2) * tn(b/2)
                       alpha - beta  <->  tn(a/2) / tn(b/2)

where tn is tan on the sphere and tanh in the hyperbolic plane.
All inverses are closed form.
"""
from __future__ import annotations

import enum
import logging
import math
from dataclasses import dataclass

from . import config
from .errors import DegenerateTriangle, DomainError

logger = logging.getLogger(__name__)

# Rounding slack for square-root arguments
SQRT_SLACK = 1e-13


class Geometry(enum.IntEnum):
    """Model space, valued by its curvature."""
    EUCLIDEAN = 0
    SPHERICAL = 1
    HYPERBOLIC = -1

    @property
    def curvature(self):
        return int(self)

    @classmethod
    def from_name(cls, name):
        """Accept 'euclidean' / 'spherical' / 'hyperbolic' (any case) or 0/1/-1."""
        aliases = {
            'euclidean': cls.EUCLIDEAN, 'e': cls.EUCLIDEAN, '0': cls.EUCLIDEAN,
            'spherical': cls.SPHERICAL, 's': cls.SPHERICAL, '1': cls.SPHERICAL, '+1': cls.SPHERICAL,
            'hyperbolic': cls.HYPERBOLIC, 'h': cls.HYPERBOLIC, '-1': cls.HYPERBOLIC,
        }
        key = str(name).strip().lower()
        if key not in aliases:
            raise DomainError(f"unknown geometry {name!r}")
        return aliases[key]


@dataclass(frozen=True)
class TriangleSides:
    a: float
    b: float
    c: float

    def __getitem__(self, index):
        return (self.a, self.b, self.c)[index]

    @property
    def semiperimeter(self):
        return (self.a + self.b + self.c) / 2


@dataclass(frozen=True)
class TriangleAngles:
    alpha: float
    beta: float
    gamma: float

    def __getitem__(self, index):
        return (self.alpha, self.beta, self.gamma)[index]

    @property
    def sigma(self):
        return (self.alpha + self.beta + self.gamma) / 2


@dataclass(frozen=True)
class SemiQuantities:
    s: float
    sigma: float


# ---------------------------------------------------------------------------
# Curvature-dependent elementary functions
# ---------------------------------------------------------------------------

def sn(g, x):
    """sin, sinh or identity."""
    if g == Geometry.SPHERICAL:
        return math.sin(x)
    if g == Geometry.HYPERBOLIC:
        return math.sinh(x)
    return x


def cs(g, x):
    """cos, cosh or 1."""
    if g == Geometry.SPHERICAL:
        return math.cos(x)
    if g == Geometry.HYPERBOLIC:
        return math.cosh(x)
    return 1.0


def tn(g, x):
    """tan, tanh or identity."""
    if g == Geometry.SPHERICAL:
        return math.tan(x)
    if g == Geometry.HYPERBOLIC:
        return math.tanh(x)
    return x


def asn(g, y):
    if g == Geometry.SPHERICAL:
        return math.asin(y)
    if g == Geometry.HYPERBOLIC:
        return math.asinh(y)
    return y


def atn(g, y):
    if g == Geometry.SPHERICAL:
        return math.atan(y)
    if g == Geometry.HYPERBOLIC:
        return math.atanh(y)
    return y


def safe_sqrt(value, what='value'):
    """Square root that forgives rounding just below zero."""
    if value < 0:
        if value < -SQRT_SLACK:
            raise DomainError(f"negative {what} under square root: {value:.3e}")
        logger.warning("clamping %s=%.3e to zero", what, value)
        return 0.0
    return math.sqrt(value)


# ---------------------------------------------------------------------------
# Validation
# ---------------------------------------------------------------------------

def check_sides(g, sides):
    """Raise unless the three lengths form a nondegenerate triangle in g."""
    a, b, c = sides.a, sides.b, sides.c
    if min(a, b, c) <= 0:
        raise DomainError(f"side lengths must be positive, got {(a, b, c)}")
    if g == Geometry.SPHERICAL and max(a, b, c) >= math.pi:
        raise DomainError(f"spherical side lengths must be < pi, got {(a, b, c)}")

    s = sides.semiperimeter
    slack = min(s - a, s - b, s - c)
    guard = config.TRIANGLE_TOL * max(a, b, c)
    if slack < -guard:
        raise DomainError(f"sides {(a, b, c)} violate the triangle inequality")
    if slack < guard:
        raise DegenerateTriangle(f"sides {(a, b, c)} form a degenerate triangle")
    if g == Geometry.SPHERICAL:
        # Perimeter must stay below a great circle
        excess = math.pi - s
        if excess < -guard:
            raise DomainError(f"spherical sides {(a, b, c)} have perimeter >= 2*pi")
        if excess < guard:
            raise DegenerateTriangle(f"spherical sides {(a, b, c)} fill a great circle")


def check_angles(g, angles):
    """Raise unless three angles belong to a triangle in g (curved geometries only)."""
    values = (angles.alpha, angles.beta, angles.gamma)
    if min(values) <= 0 or max(values) >= math.pi:
        raise DomainError(f"angles must lie in (0, pi), got {values}")
    total = sum(values)
    if g == Geometry.SPHERICAL:
        if total <= math.pi:
            raise DomainError(f"spherical angles must sum to more than pi, got {total}")
        # Polar triangle must satisfy the triangle inequality
        for i in range(3):
            others = total - values[i]
            if others - values[i] >= math.pi:
                raise DomainError(f"angles {values} violate the polar triangle inequality")
    elif g == Geometry.HYPERBOLIC:
        if total >= math.pi:
            raise DomainError(f"hyperbolic angles must sum to less than pi, got {total}")


def semi_quantities(g, sides):
    """Semiperimeter and semi-angle-sum of the triangle with the given sides."""
    return SemiQuantities(s=sides.semiperimeter, sigma=solve_angles_from_sides(g, sides).sigma)


# ---------------------------------------------------------------------------
# Solvers
# ---------------------------------------------------------------------------

def half_angle_tangent(g, sides, vertex):
    """tan(angle/2) at the vertex opposite sides[vertex] (half-angle formula)."""
    check_sides(g, sides)
    s = sides.semiperimeter
    opposite = sides[vertex]
    adjacent = [sides[i] for i in range(3) if i != vertex]
    numerator = sn(g, s - adjacent[0]) * sn(g, s - adjacent[1])
    denominator = sn(g, s) * sn(g, s - opposite)
    return math.sqrt(numerator / denominator)


def solve_angles_from_sides(g, sides):
    """The three angles of the triangle with the given sides."""
    halves = [half_angle_tangent(g, sides, i) for i in range(3)]
    return TriangleAngles(*(2 * math.atan(h) for h in halves))


def half_side_tangent(g, angles, side):
    """tan(a/2) (sphere) or tanh(a/2) (hyperbolic plane) of the side opposite angles[side]."""
    if g == Geometry.EUCLIDEAN:
        raise DomainError("angles do not determine a Euclidean triangle")
    check_angles(g, angles)
    sigma = angles.sigma
    opposite = angles[side]
    adjacent = [angles[i] for i in range(3) if i != side]
    numerator = -g.curvature * math.cos(sigma) * math.cos(sigma - opposite)
    denominator = math.cos(sigma - adjacent[0]) * math.cos(sigma - adjacent[1])
    return safe_sqrt(numerator / denominator, 'half-side ratio')


def solve_sides_from_angles(g, angles):
    """Dual cosine law: the sides of the curved triangle with the given angles."""
    halves = [half_side_tangent(g, angles, i) for i in range(3)]
    return TriangleSides(*(2 * atn(g, h) for h in halves))


def third_side(g, a, b, gamma):
    """Side opposite the included angle gamma, by the haversine form of the cosine law.

    sn(c/2)^2 = sn((a-b)/2)^2 + sn(a) sn(b) sin(gamma/2)^2 holds in all three geometries.
    """
    half = sn(g, (a - b) / 2) ** 2 + sn(g, a) * sn(g, b) * math.sin(gamma / 2) ** 2
    root = math.sqrt(half)
    if g == Geometry.SPHERICAL:
        root = min(root, 1.0)
    return 2 * asn(g, root)


def solve_sas(g, a, b, gamma):
    """Close the triangle from two sides and the included angle."""
    if a <= 0 or b <= 0:
        raise DomainError(f"side lengths must be positive, got {(a, b)}")
    if g == Geometry.SPHERICAL and max(a, b) >= math.pi:
        raise DomainError(f"spherical side lengths must be < pi, got {(a, b)}")
    if not 0 < gamma < math.pi:
        raise DomainError(f"included angle must lie in (0, pi), got {gamma}")
    sides = TriangleSides(a, b, third_side(g, a, b, gamma))
    return sides, solve_angles_from_sides(g, sides)


def polar_triangle(sides, angles):
    """Polar (dual) triangle of a spherical triangle."""
    polar_sides = TriangleSides(math.pi - angles.alpha, math.pi - angles.beta, math.pi - angles.gamma)
    polar_angles = TriangleAngles(math.pi - sides.a, math.pi - sides.b, math.pi - sides.c)
    return polar_sides, polar_angles


# ---------------------------------------------------------------------------
# Half-angle bijections with a fixed side
# ---------------------------------------------------------------------------

def side_sum_product(g, c, a_plus_b):
    """tan(alpha/2) tan(beta/2) as a function of a+b, for the fixed side c."""
    if c <= 0 or a_plus_b <= c:
        raise DomainError(f"need 0 < c < a+b, got c={c}, a+b={a_plus_b}")
    s = (a_plus_b + c) / 2
    if g == Geometry.SPHERICAL and s >= math.pi:
        raise DomainError(f"spherical perimeter {2 * s} must be < 2*pi")
    return sn(g, s - c) / sn(g, s)


def inverse_side_sum_product(g, c, product):
    """a+b recovered from tan(alpha/2) tan(beta/2) and the fixed side c."""
    if product <= 0:
        raise DomainError(f"half-angle product must be positive, got {product}")
    t = tn(g, c / 2)
    if g == Geometry.SPHERICAL:
        return 2 * math.atan2(t * (1 + product), 1 - product)
    if product >= 1:
        raise DomainError(f"half-angle product must be < 1 here, got {product}")
    half_sum = t * (1 + product) / (1 - product)
    if g == Geometry.HYPERBOLIC and half_sum >= 1:
        raise DomainError(f"half-angle product {product} not attainable for c={c}")
    return 2 * atn(g, half_sum)


def side_diff_ratio(g, c, a_minus_b):
    """tan(alpha/2) / tan(beta/2) as a function of a-b, for the fixed side c."""
    if abs(a_minus_b) >= c:
        raise DomainError(f"need |a-b| < c, got a-b={a_minus_b}, c={c}")
    return sn(g, (c + a_minus_b) / 2) / sn(g, (c - a_minus_b) / 2)


def inverse_side_diff_ratio(g, c, ratio):
    """a-b recovered from tan(alpha/2) / tan(beta/2) and the fixed side c."""
    if ratio <= 0:
        raise DomainError(f"half-angle ratio must be positive, got {ratio}")
    return 2 * atn(g, tn(g, c / 2) * (ratio - 1) / (ratio + 1))


# ---------------------------------------------------------------------------
# Half-side bijections with a fixed angle (curved geometries)
# ---------------------------------------------------------------------------

def angle_sum_from_side_product(g, gamma, side_product):
    """alpha+beta from the included angle gamma and tn(a/2) tn(b/2)."""
    if g == Geometry.EUCLIDEAN:
        raise DomainError("half-side products need a curved geometry")
    if not 0 < gamma < math.pi:
        raise DomainError(f"included angle must lie in (0, pi), got {gamma}")
    if side_product <= 0 or (g == Geometry.HYPERBOLIC and side_product >= 1):
        raise DomainError(f"half-side product {side_product} not attainable")
    k = g.curvature
    half = math.atan2((1 + k * side_product) * math.cos(gamma / 2),
                      (1 - k * side_product) * math.sin(gamma / 2))
    return 2 * half


def angle_diff_from_side_ratio(g, gamma, side_ratio):
    """alpha-beta from the included angle gamma and tn(a/2) / tn(b/2)."""
    if g == Geometry.EUCLIDEAN:
        raise DomainError("half-side ratios need a curved geometry")
    if not 0 < gamma < math.pi:
        raise DomainError(f"included angle must lie in (0, pi), got {gamma}")
    if side_ratio <= 0:
        raise DomainError(f"half-side ratio must be positive, got {side_ratio}")
    return 2 * math.atan((side_ratio - 1) / (side_ratio + 1) / math.tan(gamma / 2))
