from fractions import Fraction

import pytest

from transknot.diagram import (
    Coorientation,
    TransverseDiagram,
    build_diagram,
    serialize_diagram,
)
from transknot.errors import (
    FamilyArityError,
    InadmissibleDoublePointError,
    InvalidDiagramError,
)
from transknot.fixtures import trefoil_right, u_minus, u_minus_forbidden
from transknot.invariants import (
    crossing_sign,
    pushoff_linking_oracle,
    self_linking,
    v2,
    writhe,
)
from transknot.moves_singular import (
    FRAMING_PROJECTION,
    V2_INVARIANT,
    WRITHE_INVARIANT,
    Double,
    Resolution,
    ResolutionAssignment,
    assignment_sign,
    is_order_at_most,
    make_singular,
    pullback_framed_invariant,
    random_valid_diagram,
    resolve,
    singular_family,
    stabilize,
    vassiliev_defect,
)
from transknot.transversality import validate, whitney_index


def vertical_edge_unknot() -> TransverseDiagram:
    """U_MINUS variant whose edge 9 runs straight down."""
    verts = [
        (-1, -1), (1, 1), (2, 1), (3, 0), (2, -1), (1, -1),
        (-1, 1), (-2, 1), (-3, 0), (-3, -1), (-2, -1),
    ]
    return build_diagram(verts, Coorientation.PLUS, {(1, 6): "hi"})


def vertical_edge_unknot_minus() -> TransverseDiagram:
    verts = [
        (-1, 1), (1, -1), (2, -1), (3, 0), (2, 1), (1, 1),
        (-1, -1), (-2, -1), (-3, 0), (-3, 1), (-2, 1),
    ]
    return build_diagram(verts, Coorientation.MINUS, {(1, 6): "lo"})


def new_crossings(before: TransverseDiagram, after: TransverseDiagram):
    old_points = {c.point for c in before.crossings}
    return [c for c in after.crossings if c.point not in old_points]


class TestStabilize:
    @pytest.mark.parametrize("host", range(1, 11))
    def test_every_host_edge_of_u_minus(self, host):
        d = stabilize(u_minus(), host, 1)
        assert validate(d).is_valid
        assert len(d.crossings) == 3
        assert self_linking(d) == -3

    def test_detour_adds_two_negative_crossings(self):
        before = trefoil_right()
        after = stabilize(before, 5, 1)
        added = new_crossings(before, after)
        assert len(added) == 2
        assert [crossing_sign(after, c) for c in added] == [-1, -1]

    def test_invariant_bookkeeping(self):
        before = trefoil_right()
        for k in (1, 2, 3):
            after = stabilize(before, 5, k)
            assert validate(after).is_valid
            assert len(after.crossings) == len(before.crossings) + 2 * k
            assert self_linking(after) == self_linking(before) - 2 * k
            assert v2(after) == v2(before)
            assert whitney_index(after.curve) == 0
            assert pushoff_linking_oracle(after) == self_linking(after)

    def test_host_edge_carrying_crossings(self):
        # trefoil edge 6 meets two crossings; the splice must dodge them
        d = stabilize(trefoil_right(), 6, 1)
        assert validate(d).is_valid
        assert self_linking(d) == -1

    def test_vertical_host_is_bent_first(self):
        d = vertical_edge_unknot()
        assert d.curve.direction(9).x == 0
        out = stabilize(d, 9, 1)
        assert validate(out).is_valid
        assert self_linking(out) == self_linking(d) - 2

    def test_vertical_host_minus_coorientation(self):
        d = vertical_edge_unknot_minus()
        assert d.curve.direction(9).x == 0
        out = stabilize(d, 9, 1)
        assert validate(out).is_valid
        assert self_linking(out) == self_linking(d) - 2

    def test_count_zero_is_identity(self):
        d = u_minus()
        assert serialize_diagram(stabilize(d, 1, 0)) == serialize_diagram(d)

    def test_minus_diagram(self):
        d = random_valid_diagram(3, Coorientation.MINUS)
        out = stabilize(d, 1, 1)
        assert validate(out).is_valid
        assert self_linking(out) == self_linking(d) - 2

    def test_rejects_bad_arguments(self):
        with pytest.raises(InvalidDiagramError):
            stabilize(u_minus_forbidden(), 1, 1)
        with pytest.raises(ValueError):
            stabilize(u_minus(), 0, 1)
        with pytest.raises(ValueError):
            stabilize(u_minus(), 11, 1)
        with pytest.raises(ValueError):
            stabilize(u_minus(), 1, -1)


class TestMakeSingular:
    def test_braid_crossings_become_doubles(self):
        s = make_singular(trefoil_right(), [0, 1])
        assert s.double_indices() == (0, 1)
        doubles = [site for site in s.sites if isinstance(site, Double)]
        assert [(x.lo, x.hi) for x in doubles] == [(1, 9), (2, 10)]

    def test_forced_crossing_is_inadmissible(self):
        with pytest.raises(InadmissibleDoublePointError, match="forced over bit"):
            make_singular(u_minus(), [0])

    def test_rejects_invalid_diagram(self):
        with pytest.raises(InvalidDiagramError):
            make_singular(u_minus_forbidden(), [0])

    def test_rejects_bad_site_index(self):
        with pytest.raises(ValueError):
            make_singular(trefoil_right(), [7])
        with pytest.raises(ValueError):
            make_singular(trefoil_right(), [-1])


class TestResolve:
    def test_positive_resolution_restores_trefoil(self):
        s = make_singular(trefoil_right(), [0])
        back = resolve(s, ResolutionAssignment({0: Resolution.POS}))
        assert back == trefoil_right()

    def test_single_site_sign_difference(self):
        s = make_singular(trefoil_right(), [0])
        pos = resolve(s, ResolutionAssignment({0: Resolution.POS}))
        neg = resolve(s, ResolutionAssignment({0: Resolution.NEG}))
        assert writhe(pos) - writhe(neg) == 2

    def test_all_resolutions_validate(self):
        s = make_singular(trefoil_right(), [0, 1, 2])
        for bits in range(8):
            choices = {
                i: Resolution.POS if bits >> j & 1 else Resolution.NEG
                for j, i in enumerate(s.double_indices())
            }
            assert validate(resolve(s, ResolutionAssignment(choices))).is_valid

    def test_choice_set_must_match(self):
        s = make_singular(trefoil_right(), [0, 1])
        with pytest.raises(ValueError):
            resolve(s, ResolutionAssignment({0: Resolution.POS}))
        with pytest.raises(ValueError):
            resolve(
                s,
                ResolutionAssignment(
                    {0: Resolution.POS, 1: Resolution.POS, 2: Resolution.POS}
                ),
            )


def test_assignment_sign():
    P, N = Resolution.POS, Resolution.NEG
    assert assignment_sign(ResolutionAssignment({})) == 1
    assert assignment_sign(ResolutionAssignment({0: P, 1: P})) == 1
    assert assignment_sign(ResolutionAssignment({0: N, 1: P})) == -1
    assert assignment_sign(ResolutionAssignment({0: N, 1: N})) == 1
    # flipping any one choice flips the sign
    base = {0: P, 1: N, 2: P}
    for i in base:
        flipped = dict(base)
        flipped[i] = N if base[i] is P else P
        assert assignment_sign(ResolutionAssignment(flipped)) == -assignment_sign(
            ResolutionAssignment(base)
        )


class TestVassilievDefect:
    def test_writhe_fails_order_zero(self):
        s = make_singular(trefoil_right(), [0])
        r = vassiliev_defect(WRITHE_INVARIANT, s)
        assert r.invariant_name == "writhe"
        assert r.order_tested == 0
        assert r.defect == 2
        assert r.resolutions_evaluated == 2

    def test_writhe_passes_order_one(self):
        s = make_singular(trefoil_right(), [0, 1])
        assert vassiliev_defect(WRITHE_INVARIANT, s).defect == 0

    def test_v2_fails_order_one_on_braid_witness(self):
        s = make_singular(trefoil_right(), [0, 1])
        r = vassiliev_defect(V2_INVARIANT, s)
        assert r.defect == 1
        assert r.resolutions_evaluated == 4

    def test_v2_passes_order_two(self):
        s = make_singular(trefoil_right(), [0, 1, 2])
        r = vassiliev_defect(V2_INVARIANT, s)
        assert r.defect == 0
        assert r.resolutions_evaluated == 8

    def test_needs_at_least_one_double(self):
        s = make_singular(trefoil_right(), [])
        with pytest.raises(ValueError):
            vassiliev_defect(WRITHE_INVARIANT, s)


class TestOrderCheck:
    def test_writhe_order_one_holds(self):
        family = singular_family(11, 2, 4)
        result = is_order_at_most(WRITHE_INVARIANT, 1, family)
        assert result.holds
        assert all(r.defect == 0 for r in result.reports)

    def test_writhe_order_zero_fails_with_defect_two(self):
        family = singular_family(11, 1, 4)
        result = is_order_at_most(WRITHE_INVARIANT, 0, family)
        assert not result.holds
        assert [r.defect for r in result.reports] == [2, 2, 2, 2]

    def test_v2_order_two_holds(self):
        family = singular_family(5, 3, 3)
        result = is_order_at_most(V2_INVARIANT, 2, family)
        assert result.holds

    def test_v2_order_one_fails(self):
        family = singular_family(5, 2, 3)
        result = is_order_at_most(V2_INVARIANT, 1, family)
        assert not result.holds
        # the braid witness leads the family and carries defect 1
        assert result.reports[0].defect == 1

    def test_family_arity_is_enforced(self):
        family = singular_family(11, 2, 2)
        with pytest.raises(FamilyArityError, match="order 2 needs 3 double points"):
            is_order_at_most(WRITHE_INVARIANT, 2, family)


def test_pullback_framed_invariant():
    handle = pullback_framed_invariant(FRAMING_PROJECTION)
    assert handle.name == "sl-pullback"
    assert handle.claimed_order == 1
    assert handle.fn(u_minus()) == -1
    assert handle.fn(trefoil_right()) == 1
    family = singular_family(11, 2, 3)
    assert is_order_at_most(handle, 1, family).holds


class TestGenerators:
    def test_random_diagram_is_deterministic(self):
        a = serialize_diagram(random_valid_diagram(42))
        b = serialize_diagram(random_valid_diagram(42))
        assert a == b
        assert a != serialize_diagram(random_valid_diagram(43))

    def test_coorientation_changes_the_stream(self):
        a = random_valid_diagram(7, Coorientation.PLUS)
        b = random_valid_diagram(7, Coorientation.MINUS)
        assert b.coorientation is Coorientation.MINUS
        assert serialize_diagram(a) != serialize_diagram(b)

    @pytest.mark.parametrize("seed", range(12))
    def test_random_diagrams_validate(self, seed):
        assert validate(random_valid_diagram(seed)).is_valid
        assert validate(random_valid_diagram(seed, Coorientation.MINUS)).is_valid

    def test_family_shape(self):
        family = singular_family(2, 2, 3)
        assert len(family) == 3
        for s in family:
            assert len(s.double_indices()) == 2
        # deterministic, and led by the trefoil braid witness
        again = singular_family(2, 2, 3)
        assert [m.curve for m in again] == [m.curve for m in family]
        assert family[0].curve == trefoil_right().curve

    def test_family_rejects_zero_doubles(self):
        with pytest.raises(ValueError):
            singular_family(1, 0, 1)
