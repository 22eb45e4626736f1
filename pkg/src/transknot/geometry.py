"""Exact planar geometry over the rationals.

All predicates are decided with ``fractions.Fraction`` arithmetic, so
there is no epsilon anywhere: parallel means exactly parallel, interior
means strictly interior.
"""

from __future__ import annotations

from fractions import Fraction
from typing import NamedTuple, Optional

from .errors import DegenerateConeError, ReversalError


class Point(NamedTuple):
    x: Fraction
    z: Fraction


class Vec(NamedTuple):
    x: Fraction
    z: Fraction


def vec(p: Point, q: Point) -> Vec:
    """Displacement from p to q."""
    return Vec(q.x - p.x, q.z - p.z)


def add(p: Point, d: Vec) -> Point:
    return Point(p.x + d.x, p.z + d.z)


def scale(d: Vec, s: Fraction) -> Vec:
    return Vec(d.x * s, d.z * s)


def neg(d: Vec) -> Vec:
    return Vec(-d.x, -d.z)


def cross(u: Vec, v: Vec) -> Fraction:
    return u.x * v.z - u.z * v.x


def dot(u: Vec, v: Vec) -> Fraction:
    return u.x * v.x + u.z * v.z


def sign(a) -> int:
    return (a > 0) - (a < 0)


def orient(a: Point, b: Point, c: Point) -> int:
    """+1 if a,b,c is a left turn, -1 if a right turn, 0 if collinear."""
    return sign(cross(vec(a, b), vec(a, c)))


def is_parallel(u: Vec, v: Vec) -> bool:
    return cross(u, v) == 0


def same_direction(u: Vec, v: Vec) -> bool:
    """True when u and v are positive multiples of one another."""
    return cross(u, v) == 0 and dot(u, v) > 0


def segment_intersection(
    a: Point, b: Point, c: Point, d: Point
) -> Optional[Point]:
    """Intersection point of the open segments ab and cd.

    Returns None for parallel or collinear segments and for contacts at
    an endpoint: only a transversal meeting of the two interiors counts.
    """
    d1 = vec(a, b)
    d2 = vec(c, d)
    denom = cross(d1, d2)
    if denom == 0:
        return None
    w = vec(a, c)
    t = cross(w, d2) / denom
    u = cross(w, d1) / denom
    if 0 < t < 1 and 0 < u < 1:
        return Point(a.x + t * d1.x, a.z + t * d1.z)
    return None


def in_open_cone(u: Vec, t1: Vec, t2: Vec) -> bool:
    """Whether u lies strictly inside the positive cone spanned by t1, t2.

    Writing u = a*t1 + b*t2, membership means a > 0 and b > 0.  The
    decomposition requires t1, t2 to be linearly independent; otherwise
    DegenerateConeError is raised.
    """
    denom = cross(t1, t2)
    if denom == 0:
        raise DegenerateConeError("cone generators are parallel")
    a = cross(u, t2) / denom
    b = cross(t1, u) / denom
    return a > 0 and b > 0


def in_closed_cone(u: Vec, t1: Vec, t2: Vec) -> bool:
    """Like in_open_cone but including the boundary rays (a, b >= 0)."""
    denom = cross(t1, t2)
    if denom == 0:
        raise DegenerateConeError("cone generators are parallel")
    a = cross(u, t2) / denom
    b = cross(t1, u) / denom
    return a >= 0 and b >= 0


def corner_sweep_contains(d_in: Vec, d_out: Vec, u: Vec) -> bool:
    """Whether a corner's tangent sweep passes through direction u.

    At a corner the tangent rotates from d_in to d_out through the
    unique angle of absolute value < pi.  The sweep is the open sector
    between the two directions on the side of that rotation; u is in it
    iff it lies strictly between d_in and d_out.  A straight corner
    (d_out parallel to d_in) sweeps nothing; an exact reversal has no
    well-defined short rotation and raises ReversalError.
    """
    c = cross(d_in, d_out)
    if c == 0:
        if dot(d_in, d_out) < 0:
            raise ReversalError("corner reverses direction exactly")
        return False
    if c > 0:
        return cross(d_in, u) > 0 and cross(u, d_out) > 0
    return cross(d_in, u) < 0 and cross(u, d_out) < 0


def turn_sign(d_in: Vec, d_out: Vec) -> int:
    """+1 for a left (counterclockwise) corner, -1 for right, 0 straight.

    Raises ReversalError on an exact reversal.
    """
    c = cross(d_in, d_out)
    if c == 0 and dot(d_in, d_out) < 0:
        raise ReversalError("corner reverses direction exactly")
    return sign(c)


def point_in_open_segment(p: Point, a: Point, b: Point) -> bool:
    """Whether p lies on segment ab strictly between the endpoints."""
    d = vec(a, b)
    w = vec(a, p)
    if cross(d, w) != 0:
        return False
    s = dot(w, d)
    return 0 < s < dot(d, d)


def dist2(p: Point, q: Point) -> Fraction:
    dx = p.x - q.x
    dz = p.z - q.z
    return dx * dx + dz * dz


def point_segment_dist2(p: Point, a: Point, b: Point) -> Fraction:
    """Exact squared distance from p to the closed segment ab."""
    d = vec(a, b)
    dd = dot(d, d)
    if dd == 0:
        return dist2(p, a)
    t = dot(vec(a, p), d) / dd
    if t <= 0:
        return dist2(p, a)
    if t >= 1:
        return dist2(p, b)
    q = Point(a.x + t * d.x, a.z + t * d.z)
    return dist2(p, q)
