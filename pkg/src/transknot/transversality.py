"""Validity of transverse diagrams and the Whitney index.

A diagram drawn in the (x, z) plane is a valid transverse front when

1. no tangent direction points straight up, and
2. at every crossing where straight up lies in the open cone spanned by
   the two tangents, the strand heading up-and-right passes under.

For the Minus coorientation both checks run on the orientation-reversed
curve, which is the same as testing straight down on the original.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .diagram import (
    Coorientation,
    PolyCurve,
    TransverseDiagram,
    Violation,
    ViolationKind,
    check_genericity,
    detect_crossings,
    sort_violations,
)
from .geometry import (
    Vec,
    corner_sweep_contains,
    in_open_cone,
    is_parallel,
    neg,
    same_direction,
    turn_sign,
)

UP = Vec(Fraction(0), Fraction(1))
DOWN = Vec(Fraction(0), Fraction(-1))


def _reference(coor: Coorientation) -> Vec:
    return UP if coor is Coorientation.PLUS else DOWN


@dataclass(frozen=True)
class ValidityReport:
    violations: tuple[Violation, ...]

    @property
    def is_valid(self) -> bool:
        return not self.violations


def check_condition1(curve: PolyCurve, coor: Coorientation) -> list[Violation]:
    """Violations of the no-upward-tangent condition.

    Edges pointing along the forbidden vertical and corners whose sweep
    passes through it are reported.  For Plus the forbidden direction
    is (0,1); for Minus it is (0,-1), which is what reversing the
    curve's orientation and testing (0,1) would give.
    """
    ref = _reference(coor)
    out = []
    for i, a, b in curve.edges():
        if same_direction(Vec(b.x - a.x, b.z - a.z), ref):
            out.append(Violation(ViolationKind.UpwardEdge, edges=(i,)))
    for i, d_in, d_out in curve.corners():
        e_in = (i - 2) % curve.n + 1
        if corner_sweep_contains(d_in, d_out, ref):
            out.append(Violation(ViolationKind.UpwardCorner, edges=(e_in, i)))
    return sort_violations(out)


def check_condition2(d: TransverseDiagram) -> list[Violation]:
    """Violations of the upper-right-strand-is-under rule.

    A crossing constrains the over bit only when straight up lies in
    the open cone of the two tangents (Minus: tangents reversed).  In
    that case one tangent has dx > 0 and one has dx < 0, and the over
    strand must be the dx < 0 one.
    """
    out = []
    for c in d.crossings:
        t_lo = d.curve.direction(c.lo)
        t_hi = d.curve.direction(c.hi)
        if d.coorientation is Coorientation.MINUS:
            t_lo, t_hi = neg(t_lo), neg(t_hi)
        if not in_open_cone(UP, t_lo, t_hi):
            continue
        # up strictly inside forces opposite horizontal senses
        assert (t_lo.x > 0) != (t_hi.x > 0) and t_lo.x != 0 and t_hi.x != 0
        t_over = t_lo if c.over == "lo" else t_hi
        if t_over.x > 0:
            out.append(Violation(ViolationKind.ForbiddenCrossing, point=c.point))
    return sort_violations(out)


def validate(d: TransverseDiagram) -> ValidityReport:
    """Full validity check: genericity, then conditions 1 and 2.

    Positional defects short-circuit the report, since crossing data is
    meaningless on a non-generic curve.  A crossing list that disagrees
    with the detected intersections is reported as CrossingMismatch.
    """
    gen = check_genericity(d.curve)
    if gen:
        return ValidityReport(tuple(gen))
    detected = {(lo, hi) for lo, hi, _ in detect_crossings(d.curve)}
    declared = {(c.lo, c.hi) for c in d.crossings}
    if detected != declared:
        diffs = sorted(detected.symmetric_difference(declared))
        return ValidityReport(
            tuple(
                Violation(ViolationKind.CrossingMismatch, edges=pair)
                for pair in diffs
            )
        )
    out = check_condition1(d.curve, d.coorientation) + check_condition2(d)
    return ValidityReport(tuple(sort_violations(out)))


def whitney_index(curve: PolyCurve) -> int:
    """Rotation number of the tangent direction, by sweep counting.

    Corners whose sweep passes through a reference direction r count
    +1 (counterclockwise turn) or -1 (clockwise).  r defaults to (0,1)
    and is moved to the first of (1,1), (1,2), ... whenever some edge
    is parallel to it, so r is always a regular value.
    """
    dirs = [curve.direction(i) for i in range(1, curve.n + 1)]
    ref = UP
    n_try = 1
    while any(is_parallel(dv, ref) for dv in dirs):
        ref = Vec(Fraction(1), Fraction(n_try))
        n_try += 1
    total = 0
    for _, d_in, d_out in curve.corners():
        if corner_sweep_contains(d_in, d_out, ref):
            total += turn_sign(d_in, d_out)
    return total
