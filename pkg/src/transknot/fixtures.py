"""Hand-built reference diagrams used across the test suite and docs.

Every fixture here has been checked by independent computation: the
curve is generic, the stated coorientation conditions hold, and the
frozen invariant values (writhe, self-linking, Whitney index, v2)
match both the direct formulas and the push-off oracle.
"""

from __future__ import annotations

from fractions import Fraction

from .diagram import Coorientation, TransverseDiagram, build_diagram

# Unknot with a single negative crossing.  The loop runs up-right,
# "swallows" a right-pointing tongue, and returns; straight up lies in
# the open tangent cone at the crossing, so the over bit is forced:
# the up-right strand (edge 1) must pass under.
_U_MINUS_VERTICES = [
    (-1, -1),
    (1, 1),
    (2, 1),
    (3, 0),
    (2, -1),
    (1, -1),
    (-1, 1),
    (-2, 1),
    (-3, 0),
    (-2, -1),
]


def u_minus() -> TransverseDiagram:
    """One-crossing unknot, Plus coorientation, sl = -1."""
    return build_diagram(_U_MINUS_VERTICES, Coorientation.PLUS, {(1, 6): "hi"})


def u_minus_forbidden() -> TransverseDiagram:
    """u_minus with the over bit flipped; fails validation."""
    return u_minus().with_over({(1, 6): "lo"})


def minus_unknot() -> TransverseDiagram:
    """Mirror of u_minus across the x-axis, cooriented Minus; sl = -1.

    Negating z swaps the roles of up and down, so the forced strand
    swaps too: here edge 6 must pass under.
    """
    flipped = [(x, -z) for x, z in _U_MINUS_VERTICES]
    return build_diagram(flipped, Coorientation.MINUS, {(1, 6): "lo"})


def one_crossing_unknots(count: int) -> list[TransverseDiagram]:
    """A family of one-crossing unknots with the forced over bit.

    Members are affine images of u_minus: an x-stretch, a shear along
    z, and a translation.  All three preserve validity and keep
    straight up inside the open tangent cone at the crossing, so every
    member has its over bit forced and sl = -1.
    """
    out = []
    for i in range(count):
        sx = 1 + Fraction(i, 3)
        shear = Fraction(i - 7, 5)
        tx, tz = Fraction(i, 2), Fraction(-i, 3)
        verts = [
            (sx * x + tx, z + shear * sx * x + tz)
            for x, z in _U_MINUS_VERTICES
        ]
        out.append(build_diagram(verts, Coorientation.PLUS, {(1, 6): "hi"}))
    return out


# Right trefoil drawn as a 2-strand braid with three positive
# crossings (the zigzags through edges 1..4 and 9..12), closed by a
# return arc that dives below the braid and comes back.  The closure
# crosses the braid region twice and itself once, all with up outside
# the tangent cone except (6,8), (6,13) and (13,15) which are forced.
_TREFOIL_VERTICES = [
    (0, 2),
    (2, 0),
    (4, 2),
    (6, 0),
    (9, 0),
    (10, Fraction(-5, 2)),
    (Fraction(-5, 4), Fraction(-5, 2)),
    (-1, Fraction(-13, 4)),
    (0, 0),
    (2, 2),
    (4, 0),
    (6, 2),
    (8, -2),
    (-3, Fraction(-19, 4)),
    (Fraction(-11, 4), Fraction(-11, 2)),
]

_TREFOIL_RIGHT_OVER = {
    (1, 9): "lo",
    (2, 10): "hi",
    (3, 11): "lo",
    (4, 12): "hi",
    (6, 8): "lo",
    (6, 13): "hi",
    (13, 15): "lo",
}

# Mirror braid: the three alternating braid bits flip, the four
# return-arc crossings keep their (partly forced) values.
_TREFOIL_LEFT_OVER = {
    **_TREFOIL_RIGHT_OVER,
    (1, 9): "hi",
    (2, 10): "lo",
    (3, 11): "hi",
}


def trefoil_right() -> TransverseDiagram:
    """Right-handed trefoil; sl = +1, v2 = 1."""
    return build_diagram(_TREFOIL_VERTICES, Coorientation.PLUS, _TREFOIL_RIGHT_OVER)


def trefoil_left() -> TransverseDiagram:
    """Left-handed trefoil; sl = -5, v2 = 1."""
    return build_diagram(_TREFOIL_VERTICES, Coorientation.PLUS, _TREFOIL_LEFT_OVER)


def trefoil_right_alt() -> TransverseDiagram:
    """A second, geometrically distinct right trefoil diagram.

    Same crossing pattern as trefoil_right but with an extra vertex
    splitting the braid exit edge and all x-coordinates stretched, so
    no vertex, edge or crossing point coincides with the primary
    fixture.  Used to cross-check invariants between diagrams.
    """
    verts = list(_TREFOIL_VERTICES)
    verts.insert(4, (Fraction(15, 2), Fraction(1, 4)))
    stretched = [(Fraction(3, 2) * Fraction(x), Fraction(z)) for x, z in verts]
    over = {
        (1, 10): "lo",
        (2, 11): "hi",
        (3, 12): "lo",
        (4, 13): "hi",
        (7, 9): "lo",
        (7, 14): "hi",
        (14, 16): "lo",
    }
    return build_diagram(stretched, Coorientation.PLUS, over)
