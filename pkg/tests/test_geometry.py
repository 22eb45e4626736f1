import math
import random
from fractions import Fraction

import pytest

from transknot.errors import DegenerateConeError, ReversalError
from transknot.geometry import (
    Point,
    Vec,
    add,
    corner_sweep_contains,
    cross,
    dist2,
    dot,
    in_closed_cone,
    in_open_cone,
    is_parallel,
    neg,
    orient,
    point_in_open_segment,
    point_segment_dist2,
    same_direction,
    scale,
    segment_intersection,
    sign,
    turn_sign,
    vec,
)


def P(x, z) -> Point:
    return Point(Fraction(x), Fraction(z))


def V(x, z) -> Vec:
    return Vec(Fraction(x), Fraction(z))


def test_vector_basics():
    assert vec(P(1, 2), P(4, 0)) == V(3, -2)
    assert add(P(1, 2), V(3, -2)) == P(4, 0)
    assert scale(V(3, -2), Fraction(1, 2)) == V(Fraction(3, 2), -1)
    assert neg(V(3, -2)) == V(-3, 2)
    assert cross(V(1, 0), V(0, 1)) == 1
    assert cross(V(0, 1), V(1, 0)) == -1
    assert dot(V(1, 2), V(3, -1)) == 1
    assert sign(Fraction(-7, 3)) == -1
    assert sign(0) == 0
    assert sign(5) == 1


def test_orient():
    assert orient(P(0, 0), P(1, 0), P(0, 1)) == 1
    assert orient(P(0, 0), P(1, 0), P(2, 0)) == 0
    assert orient(P(0, 0), P(0, 1), P(1, 1)) == -1


def test_parallel_predicates():
    assert is_parallel(V(2, 4), V(1, 2))
    assert is_parallel(V(2, 4), V(-1, -2))
    assert not is_parallel(V(2, 4), V(1, 3))
    assert same_direction(V(2, 4), V(1, 2))
    assert not same_direction(V(2, 4), V(-1, -2))
    assert not same_direction(V(2, 4), V(4, 2))


def test_segment_intersection_symmetric_x():
    assert segment_intersection(P(0, 0), P(2, 2), P(0, 2), P(2, 0)) == P(1, 1)


def test_segment_intersection_disjoint_collinear():
    assert segment_intersection(P(0, 0), P(1, 0), P(2, 0), P(3, 0)) is None


def test_segment_intersection_exact_rational():
    assert segment_intersection(P(-1, -1), P(1, 1), P(1, -1), P(-1, 1)) == P(0, 0)


def test_segment_intersection_interior_only():
    # shared endpoint does not count
    assert segment_intersection(P(0, 0), P(1, 1), P(1, 1), P(2, 0)) is None
    # T-contact: endpoint of one segment interior to the other
    assert segment_intersection(P(0, 0), P(2, 0), P(1, 0), P(1, 1)) is None
    # genuinely disjoint
    assert segment_intersection(P(0, 0), P(1, 1), P(5, 0), P(6, 1)) is None
    # parallel
    assert segment_intersection(P(0, 0), P(2, 0), P(0, 1), P(2, 1)) is None


def test_segment_intersection_fractional_result():
    p = segment_intersection(P(0, 0), P(3, 1), P(1, 1), P(2, -1))
    assert p is not None
    assert p == Point(Fraction(9, 7), Fraction(3, 7))


def test_in_open_cone():
    up = V(0, 1)
    assert in_open_cone(up, V(1, 1), V(-1, 1))
    assert not in_open_cone(up, V(1, 0), V(1, 1))
    # boundary rays are excluded
    assert not in_open_cone(V(1, 1), V(1, 1), V(0, 1))
    assert not in_open_cone(V(2, 2), V(1, 1), V(0, 1))
    # order of the generators does not matter
    assert in_open_cone(up, V(-1, 1), V(1, 1))


def test_in_open_cone_degenerate():
    with pytest.raises(DegenerateConeError):
        in_open_cone(V(0, 1), V(1, 1), V(-1, -1))
    with pytest.raises(DegenerateConeError):
        in_open_cone(V(0, 1), V(1, 1), V(2, 2))


def test_in_closed_cone():
    up = V(0, 1)
    assert in_closed_cone(up, V(1, 1), V(-1, 1))
    assert in_closed_cone(V(1, 1), V(1, 1), V(0, 1))
    assert in_closed_cone(V(3, 3), V(1, 1), V(0, 1))
    assert not in_closed_cone(V(1, -1), V(1, 1), V(0, 1))
    with pytest.raises(DegenerateConeError):
        in_closed_cone(up, V(1, 0), V(-2, 0))


def test_corner_sweep_contains():
    up = V(0, 1)
    assert corner_sweep_contains(V(1, 1), V(-1, 1), up)
    assert not corner_sweep_contains(V(1, 0), V(1, 1), up)
    assert corner_sweep_contains(V(1, -1), V(-1, -1), V(0, -1))
    # the sweep is open: its endpoints are not contained
    assert not corner_sweep_contains(V(1, 1), V(-1, 1), V(1, 1))
    assert not corner_sweep_contains(V(1, 1), V(-1, 1), V(-2, 2))
    # straight corner sweeps nothing
    assert not corner_sweep_contains(V(1, 1), V(2, 2), up)


def test_corner_sweep_reversal():
    with pytest.raises(ReversalError):
        corner_sweep_contains(V(1, 1), V(-1, -1), V(0, 1))


def test_turn_sign():
    assert turn_sign(V(1, 0), V(0, 1)) == 1
    assert turn_sign(V(1, 0), V(0, -1)) == -1
    assert turn_sign(V(1, 0), V(2, 0)) == 0


def test_point_in_open_segment():
    assert point_in_open_segment(P(1, 1), P(0, 0), P(2, 2))
    assert not point_in_open_segment(P(0, 0), P(0, 0), P(2, 2))
    assert not point_in_open_segment(P(2, 2), P(0, 0), P(2, 2))
    assert not point_in_open_segment(P(3, 3), P(0, 0), P(2, 2))
    assert not point_in_open_segment(P(1, 0), P(0, 0), P(2, 2))


def test_distances():
    assert dist2(P(0, 0), P(3, 4)) == 25
    assert point_segment_dist2(P(0, 1), P(-1, 0), P(1, 0)) == 1
    # projection beyond an endpoint clamps to that endpoint
    assert point_segment_dist2(P(5, 1), P(-1, 0), P(1, 0)) == 17
    assert point_segment_dist2(P(1, 1), P(0, 0), P(2, 2)) == 0
    assert point_segment_dist2(P(2, 0), P(0, 0), P(4, 2)) == Fraction(4, 5)


def _angle(v: Vec) -> float:
    return math.atan2(float(v.z), float(v.x))


def _wrap(theta: float) -> float:
    while theta <= -math.pi:
        theta += 2 * math.pi
    while theta > math.pi:
        theta -= 2 * math.pi
    return theta


def _random_vec(rng: random.Random) -> Vec:
    while True:
        x, z = rng.randint(-9, 9), rng.randint(-9, 9)
        if x or z:
            return V(x, z)


EPS = 1e-9


def test_corner_sweep_matches_float_angles():
    """Exact sweep membership agrees with naive floating-point angles.

    Cases within EPS of a boundary are skipped; everything else must
    match the float computation exactly.
    """
    rng = random.Random(20260815)
    checked = 0
    for _ in range(10000):
        d_in, d_out, u = (_random_vec(rng) for _ in range(3))
        if is_parallel(d_in, d_out):
            continue
        delta = _wrap(_angle(d_out) - _angle(d_in))
        rel = _wrap(_angle(u) - _angle(d_in))
        if min(abs(rel), abs(rel - delta), abs(delta)) < EPS:
            continue
        expected = 0 < rel < delta if delta > 0 else delta < rel < 0
        assert corner_sweep_contains(d_in, d_out, u) == expected
        checked += 1
    assert checked > 5000


def test_open_cone_matches_float_solve():
    """Exact cone membership agrees with solving u = a*t1 + b*t2 in floats."""
    rng = random.Random(8151113)
    checked = 0
    for _ in range(10000):
        t1, t2, u = (_random_vec(rng) for _ in range(3))
        det = float(cross(t1, t2))
        if det == 0:
            continue
        a = float(cross(u, t2)) / det
        b = float(cross(t1, u)) / det
        if min(abs(a), abs(b)) < EPS:
            continue
        assert in_open_cone(u, t1, t2) == (a > 0 and b > 0)
        checked += 1
    assert checked > 5000
