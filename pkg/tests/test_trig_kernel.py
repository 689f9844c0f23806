import math

import numpy as np
import pytest
from hypothesis import assume, given, settings
from hypothesis import strategies as st

from regge_symmetry.errors import DegenerateTriangle, DomainError
from regge_symmetry.trig_kernel import (
    Geometry,
    TriangleAngles,
    TriangleSides,
    angle_diff_from_side_ratio,
    angle_sum_from_side_product,
    atn,
    half_angle_tangent,
    half_side_tangent,
    inverse_side_diff_ratio,
    inverse_side_sum_product,
    polar_triangle,
    safe_sqrt,
    semi_quantities,
    side_diff_ratio,
    side_sum_product,
    solve_angles_from_sides,
    solve_sas,
    solve_sides_from_angles,
    tn,
)

E, S, H = Geometry.EUCLIDEAN, Geometry.SPHERICAL, Geometry.HYPERBOLIC
ALL = [E, S, H]
CURVED = [S, H]

# Ravi substitution: sides v+w, u+w, u+v always close a triangle, and with
# u, v, w <= 1 the perimeter stays below 2*pi on the sphere.
ravi = st.tuples(*(st.floats(min_value=0.05, max_value=1.0) for _ in range(3)))


def _sides(uvw):
    u, v, w = uvw
    return TriangleSides(v + w, u + w, u + v)


# ---------------------------------------------------------------------------
# Geometry tag
# ---------------------------------------------------------------------------

@pytest.mark.parametrize("name, expected", [
    ("euclidean", E), ("Spherical", S), ("hyperbolic", H), ("-1", H), ("0", E),
])
def test_geometry_from_name(name, expected):
    assert Geometry.from_name(name) is expected


def test_geometry_from_name_rejects_unknown():
    with pytest.raises(DomainError):
        Geometry.from_name("elliptic")


# ---------------------------------------------------------------------------
# Solvers
# ---------------------------------------------------------------------------

@pytest.mark.parametrize("g, sides, expected", [
    (E, (1, 1, 1), (math.pi / 3,) * 3),
    (S, (math.pi / 2,) * 3, (math.pi / 2,) * 3),
    (E, (3, 4, 5), (math.atan(3 / 4), math.atan(4 / 3), math.pi / 2)),
])
def test_solve_angles_from_sides(g, sides, expected):
    angles = solve_angles_from_sides(g, TriangleSides(*sides))
    assert (angles.alpha, angles.beta, angles.gamma) == pytest.approx(expected, abs=1e-12)


def test_degenerate_triangle_is_rejected():
    with pytest.raises(DegenerateTriangle):
        solve_angles_from_sides(E, TriangleSides(1, 2, 3))


def test_violated_triangle_inequality_is_a_domain_error():
    with pytest.raises(DomainError) as info:
        solve_angles_from_sides(E, TriangleSides(1, 1, 3))
    assert not isinstance(info.value, DegenerateTriangle)


def test_spherical_perimeter_bound():
    with pytest.raises(DomainError):
        solve_angles_from_sides(S, TriangleSides(2.5, 2.5, 2.5))


@pytest.mark.parametrize("g, a, b, gamma, expected", [
    (E, 1, 1, math.pi / 2, math.sqrt(2)),
    (S, math.pi / 2, math.pi / 2, math.pi / 2, math.pi / 2),
    (H, 1, 1, math.pi / 2, math.acosh(math.cosh(1) ** 2)),
])
def test_solve_sas_third_side(g, a, b, gamma, expected):
    sides, angles = solve_sas(g, a, b, gamma)
    assert sides.c == pytest.approx(expected, rel=1e-12)
    assert angles.gamma == pytest.approx(gamma, abs=1e-12)


def test_solve_sas_rejects_long_spherical_side():
    with pytest.raises(DomainError):
        solve_sas(S, math.pi, 1.0, 1.0)


@pytest.mark.parametrize("g, sides, vertex, expected", [
    (E, (1, 1, 1), 0, 1 / math.sqrt(3)),
    (S, (math.pi / 2,) * 3, 2, 1.0),
    (E, (3, 4, 5), 0, 1 / 3),
])
def test_half_angle_tangent(g, sides, vertex, expected):
    assert half_angle_tangent(g, TriangleSides(*sides), vertex) == pytest.approx(expected, rel=1e-12)


def test_half_side_tangent_octant():
    assert half_side_tangent(S, TriangleAngles(*(math.pi / 2,) * 3), 1) == pytest.approx(1.0, rel=1e-12)


def test_half_side_tangent_hyperbolic_dual_cosine_law():
    q = math.pi / 4
    cosh_a = (math.cos(q) + math.cos(q) ** 2) / math.sin(q) ** 2
    expected = math.sqrt((cosh_a - 1) / (cosh_a + 1))
    assert half_side_tangent(H, TriangleAngles(q, q, q), 0) == pytest.approx(expected, rel=1e-12)


def test_half_side_tangent_spherical_dual_cosine_law():
    q = 2 * math.pi / 3
    # cos a = -1/3, so tan(a/2) = sqrt(2)
    assert half_side_tangent(S, TriangleAngles(q, q, q), 2) == pytest.approx(math.sqrt(2), rel=1e-12)


def test_half_side_tangent_refuses_euclidean():
    with pytest.raises(DomainError):
        half_side_tangent(E, TriangleAngles(1.0, 1.0, math.pi - 2.0), 0)


def test_safe_sqrt_clamps_rounding_only():
    assert safe_sqrt(-1e-15) == 0.0
    with pytest.raises(DomainError):
        safe_sqrt(-1e-6)


@settings(max_examples=200, deadline=None)
@given(uvw=ravi, g=st.sampled_from(ALL))
def test_half_angle_tangent_matches_solved_angles(uvw, g):
    sides = _sides(uvw)
    angles = solve_angles_from_sides(g, sides)
    for i in range(3):
        assert half_angle_tangent(g, sides, i) == pytest.approx(math.tan(angles[i] / 2), rel=1e-12)
        assert 0 < angles[i] < math.pi


@settings(max_examples=200, deadline=None)
@given(uvw=ravi, g=st.sampled_from(CURVED))
def test_angles_round_trip_through_dual_solver(uvw, g):
    sides = _sides(uvw)
    back = solve_sides_from_angles(g, solve_angles_from_sides(g, sides))
    assert (back.a, back.b, back.c) == pytest.approx((sides.a, sides.b, sides.c), rel=1e-9)


@settings(max_examples=100, deadline=None)
@given(uvw=ravi)
def test_angle_sum_signals_curvature(uvw):
    sides = _sides(uvw)
    total = {g: sum((solve_angles_from_sides(g, sides)[i] for i in range(3))) for g in ALL}
    assert total[E] == pytest.approx(math.pi, abs=1e-12)
    assert total[S] > math.pi
    assert total[H] < math.pi


@settings(max_examples=100, deadline=None)
@given(uvw=ravi)
def test_polar_triangle_swaps_half_angles_and_half_sides(uvw):
    sides = _sides(uvw)
    angles = solve_angles_from_sides(S, sides)
    _, polar_angles = polar_triangle(sides, angles)
    for i in range(3):
        # tan of half a polar side is cot of half the original angle
        assert half_side_tangent(S, polar_angles, i) == pytest.approx(
            1 / half_angle_tangent(S, sides, i), rel=1e-9)


# ---------------------------------------------------------------------------
# Fixed-side bijections
# ---------------------------------------------------------------------------

@pytest.mark.parametrize("g, c, a_plus_b, expected", [
    (E, 1, 2, 1 / 3),
    (S, math.pi / 2, 2 * math.pi / 3, 2 - math.sqrt(3)),
    (E, 5, 7, 1 / 6),
])
def test_side_sum_product(g, c, a_plus_b, expected):
    assert side_sum_product(g, c, a_plus_b) == pytest.approx(expected, rel=1e-12)


@pytest.mark.parametrize("g, c, a_minus_b, expected", [
    (H, 0.7, 0.0, 1.0),
    (E, 5, -1, 2 / 3),
    (E, 1, 0.5, 3.0),
])
def test_side_diff_ratio(g, c, a_minus_b, expected):
    assert side_diff_ratio(g, c, a_minus_b) == pytest.approx(expected, rel=1e-12)


def test_side_sum_product_domain():
    with pytest.raises(DomainError):
        side_sum_product(E, 2.0, 2.0)
    with pytest.raises(DomainError):
        side_diff_ratio(E, 1.0, 1.0)


@pytest.mark.parametrize("g", ALL)
def test_side_sum_product_is_increasing(g):
    c = 0.8
    grid = np.linspace(c + 0.01, 2.5, 200)
    values = [side_sum_product(g, c, v) for v in grid]
    assert all(b > a for a, b in zip(values, values[1:]))


@pytest.mark.parametrize("g", ALL)
@pytest.mark.parametrize("a_plus_b", [0.9, 1.4, 2.2])
def test_inverse_side_sum_product(g, a_plus_b):
    c = 0.8
    assert inverse_side_sum_product(g, c, side_sum_product(g, c, a_plus_b)) == pytest.approx(a_plus_b, rel=1e-12)


@pytest.mark.parametrize("g", ALL)
@pytest.mark.parametrize("a_minus_b", [-0.5, 0.0, 0.3])
def test_inverse_side_diff_ratio(g, a_minus_b):
    c = 0.8
    assert inverse_side_diff_ratio(g, c, side_diff_ratio(g, c, a_minus_b)) == pytest.approx(a_minus_b, abs=1e-12)


@settings(max_examples=200, deadline=None)
@given(uvw=ravi, g=st.sampled_from(ALL))
def test_fixed_side_maps_agree_with_actual_angles(uvw, g):
    sides = _sides(uvw)
    ta = half_angle_tangent(g, sides, 0)
    tb = half_angle_tangent(g, sides, 1)
    assert side_sum_product(g, sides.c, sides.a + sides.b) == pytest.approx(ta * tb, rel=1e-11)
    assert side_diff_ratio(g, sides.c, sides.a - sides.b) == pytest.approx(ta / tb, rel=1e-11)


# ---------------------------------------------------------------------------
# Fixed-angle bijections
# ---------------------------------------------------------------------------

def test_angle_sum_octant():
    assert angle_sum_from_side_product(S, math.pi / 2, 1.0) == pytest.approx(math.pi, abs=1e-12)


@pytest.mark.parametrize("g, gamma, a, b", [
    (S, math.pi / 2, 0.8, 0.8),
    (H, math.pi / 3, 1.0, 1.0),
    (S, 1.1, 0.4, 1.3),
    (H, 2.0, 0.3, 1.7),
])
def test_angle_sum_matches_sas(g, gamma, a, b):
    _, angles = solve_sas(g, a, b, gamma)
    product = tn(g, a / 2) * tn(g, b / 2)
    assert angle_sum_from_side_product(g, gamma, product) == pytest.approx(angles.alpha + angles.beta, abs=1e-12)


@pytest.mark.parametrize("g, gamma, a, b", [
    (S, 1.0, 0.9, 0.5),
    (H, 1.0, 0.9, 0.5),
    (H, 2.4, 0.2, 1.5),
])
def test_angle_diff_matches_sas(g, gamma, a, b):
    _, angles = solve_sas(g, a, b, gamma)
    ratio = tn(g, a / 2) / tn(g, b / 2)
    assert angle_diff_from_side_ratio(g, gamma, ratio) == pytest.approx(angles.alpha - angles.beta, abs=1e-12)


@settings(max_examples=100, deadline=None)
@given(a=st.floats(0.1, 1.4), b=st.floats(0.1, 1.4), scale=st.floats(0.5, 0.95),
       gamma=st.floats(0.2, 2.9), g=st.sampled_from(CURVED))
def test_equal_half_side_products_give_equal_angle_sums(a, b, scale, gamma, g):
    # a second pair of sides with the same product of half-side tangents
    product = tn(g, a / 2) * tn(g, b / 2)
    a2 = 2 * math.atan(math.tan(a / 2) * scale) if g == S else 2 * math.atanh(math.tanh(a / 2) * scale)
    t2 = product / tn(g, a2 / 2)
    assume(g == S or t2 < 0.95)
    b2 = 2 * math.atan(t2) if g == S else 2 * math.atanh(t2)
    _, first = solve_sas(g, a, b, gamma)
    _, second = solve_sas(g, a2, b2, gamma)
    assert first.alpha + first.beta == pytest.approx(second.alpha + second.beta, abs=1e-10)


def test_fixed_angle_maps_refuse_euclidean():
    with pytest.raises(DomainError):
        angle_sum_from_side_product(E, 1.0, 0.5)
    with pytest.raises(DomainError):
        angle_diff_from_side_ratio(E, 1.0, 0.5)


@settings(max_examples=100, deadline=None)
@given(a=st.floats(0.1, 1.4), b=st.floats(0.1, 1.4), scale=st.floats(0.5, 0.95),
       gamma=st.floats(0.2, 2.9), g=st.sampled_from(CURVED))
def test_equal_half_side_ratios_give_equal_angle_differences(a, b, scale, gamma, g):
    # shrink both half-side tangents by the same factor: the ratio is unchanged
    a2 = 2 * atn(g, tn(g, a / 2) * scale)
    b2 = 2 * atn(g, tn(g, b / 2) * scale)
    _, first = solve_sas(g, a, b, gamma)
    _, second = solve_sas(g, a2, b2, gamma)
    assert first.alpha - first.beta == pytest.approx(second.alpha - second.beta, abs=1e-10)


def _random_triangles(rng, count):
    for u, v, w in rng.uniform(0.05, 1.0, size=(count, 3)):
        yield TriangleSides(v + w, u + w, u + v)


@pytest.mark.parametrize("g", ALL)
def test_fixed_side_bijections_on_random_triangles(g, rng):
    for sides in _random_triangles(rng, 1000):
        ta = half_angle_tangent(g, sides, 0)
        tb = half_angle_tangent(g, sides, 1)
        product = side_sum_product(g, sides.c, sides.a + sides.b)
        ratio = side_diff_ratio(g, sides.c, sides.a - sides.b)
        assert product == pytest.approx(ta * tb, rel=1e-12)
        assert ratio == pytest.approx(ta / tb, rel=1e-12)
        assert inverse_side_sum_product(g, sides.c, product) == pytest.approx(sides.a + sides.b, rel=1e-12)
        assert inverse_side_diff_ratio(g, sides.c, ratio) == pytest.approx(sides.a - sides.b, abs=1e-12)


@pytest.mark.parametrize("g", CURVED)
def test_fixed_angle_bijections_on_random_triangles(g, rng):
    for sides in _random_triangles(rng, 1000):
        angles = solve_angles_from_sides(g, sides)
        product = tn(g, sides.a / 2) * tn(g, sides.b / 2)
        ratio = tn(g, sides.a / 2) / tn(g, sides.b / 2)
        assert angle_sum_from_side_product(g, angles.gamma, product) == pytest.approx(
            angles.alpha + angles.beta, abs=1e-12)
        assert angle_diff_from_side_ratio(g, angles.gamma, ratio) == pytest.approx(
            angles.alpha - angles.beta, abs=1e-12)


@pytest.mark.parametrize("g, sides, s, sigma", [
    (E, (3, 4, 5), 6.0, math.pi / 2),
    (S, (math.pi / 2,) * 3, 3 * math.pi / 4, 3 * math.pi / 4),
])
def test_semi_quantities(g, sides, s, sigma):
    semi = semi_quantities(g, TriangleSides(*sides))
    assert semi.s == pytest.approx(s, rel=1e-14)
    assert semi.sigma == pytest.approx(sigma, rel=1e-12)


@settings(max_examples=100, deadline=None)
@given(uvw=ravi)
def test_semiperimeter_exceeds_every_side(uvw):
    sides = _sides(uvw)
    semi = semi_quantities(E, sides)
    assert semi.s > max(sides.a, sides.b, sides.c)
    assert semi.sigma == pytest.approx(math.pi / 2, abs=1e-12)
