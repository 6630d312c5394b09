import pytest

from veech2 import fixtures
from veech2.classify import (
    NoValidRenumbering,
    NotQuadratic,
    PreconditionFailed,
    Status,
    WrongStratum,
    area_invariant,
    check_h2_equations,
    check_h11_equations,
    h2_sides,
    is_completely_periodic,
    is_hyperperiodic_genus2,
    is_veech_h2,
    property_x,
    property_x_via_jvw,
)
from veech2.cylinder import CylinderData, build_h11
from veech2.qfield import QElem
from veech2.surface import Vec2, apply_gl2

R2 = fixtures.SQRT2
PHI = fixtures.PHI


def cyls(w, h, t):
    return [CylinderData(*x) for x in zip(w, h, t)]


def test_h2_equations_d2():
    c = cyls((1, 1 + R2), (R2 - 1, 1), (2 - R2, 0))
    sides = h2_sides(*c)
    assert sides.eq1_lhs == sides.eq1_rhs == -(1 + R2)
    assert sides.eq2_lhs == sides.eq2_rhs == 3
    assert check_h2_equations(*c, d=2)


def test_h2_equations_golden():
    c = cyls((1, PHI), (1, PHI), (QElem(3, -1, 5) / 2, 0))
    sides = h2_sides(*c)
    assert sides.eq1_lhs == sides.eq1_rhs == 1
    assert sides.eq2_lhs == sides.eq2_rhs == 2
    assert check_h2_equations(*c, d=5)


def test_h2_twist_residual():
    c = cyls((1, 1 + R2), (R2 - 1, 1), (0, 0))
    assert h2_sides(*c).eq2_residual == -2 * R2
    assert not check_h2_equations(*c, d=2)


def test_h11_equations():
    w1, w2, h1, h2, h3, t1, t2, t3 = fixtures.d2_h11_data()
    res = check_h11_equations(*cyls((w1, w2, w1 + w2), (h1, h2, h3), (t1, t2, t3)), d=2)
    assert res and res.eq4 and res.eq5
    assert (res.c1, res.c2) == (0, 1)
    # rational equal-width data by hand: s = (2, 2), tau = (0, 0);
    # w1 conj(s1) = 2 but -w2 conj(s2) = -2, the twist side is the rational 1
    res = check_h11_equations(*cyls((1, 1, 2), (1, 1, 1), (0, 0, 0)))
    assert not res and not res.eq4 and res.eq5
    assert (res.c1, res.c2) == (2, 0)
    with pytest.raises(NoValidRenumbering):
        check_h11_equations(*cyls((1, 1, 1), (1, 1, 1), (0, 0, 0)))


def test_h11_renumbering_order():
    w1, w2, h1, h2, h3, t1, t2, t3 = fixtures.d2_h11_data()
    c = cyls((w1 + w2, w2, w1), (h3, h2, h1), (t3, t2, t1))
    assert check_h11_equations(*c)


def test_property_x(golden, torus):
    assert property_x(golden[0], 2).status is Status.PROVED
    assert property_x(torus, 2).status is Status.PROVED
    v = property_x(fixtures.perturbed_golden_l()[0], 2)
    assert v.status is Status.REFUTED
    assert v.witness.jvv != 0


def test_property_x_via_jvw(golden):
    s = golden[0]
    assert property_x_via_jvw(s, Vec2(1, 0), Vec2(0, 1))
    p = fixtures.perturbed_golden_l()[0]
    try:
        assert not property_x_via_jvw(p, Vec2(1, 0), Vec2(0, 1))
    except PreconditionFailed:
        pass
    with pytest.raises(PreconditionFailed):
        property_x_via_jvw(fixtures.rational_l()[0], Vec2(1, 0), Vec2(0, 1))


def test_veech_h2():
    assert is_veech_h2(fixtures.golden_l()[0]).status is Status.PROVED
    assert is_veech_h2(fixtures.d2_h2()[0]).status is Status.PROVED
    assert is_veech_h2(fixtures.rational_l()[0]).status is Status.PROVED
    v = is_veech_h2(fixtures.bad_h2()[0])
    assert v.status is Status.REFUTED
    assert v.witness.equation == "1"
    assert v.witness.residual == 1 + R2
    with pytest.raises(WrongStratum):
        is_veech_h2(fixtures.d2_h11()[0])


def test_completely_periodic():
    assert is_completely_periodic(fixtures.golden_l()[0]).status is Status.PROVED
    v = is_completely_periodic(fixtures.d2_h11()[0])
    assert v.status is Status.PROVED
    assert is_completely_periodic(fixtures.rational_h11()[0]).status is Status.PROVED
    # heights break the height equation in the horizontal direction
    s, _ = build_h11(1, R2, 1, 1, R2 - 1, 0, 1, 0)
    v = is_completely_periodic(s)
    assert v.status is Status.REFUTED and v.witness.equation == "4"
    with pytest.raises(WrongStratum):
        is_completely_periodic(fixtures.torus())


def test_hyperperiodic(torus):
    assert is_hyperperiodic_genus2(fixtures.golden_l()[0]).status is Status.PROVED
    v = is_hyperperiodic_genus2(fixtures.perturbed_golden_l()[0])
    assert v.status is Status.REFUTED and v.claim == "hyperperiodic"
    with pytest.raises(WrongStratum):
        is_hyperperiodic_genus2(torus)


def test_area_invariant():
    g = fixtures.golden_l()[0]
    assert area_invariant(g) == 2 + PHI
    three = QElem(3)
    zero = QElem(0)
    assert area_invariant(apply_gl2(((three, zero), (zero, three)), g)) == 2 + PHI
    assert area_invariant(fixtures.d2_h2()[0]) == 2 * R2
    with pytest.raises(NotQuadratic):
        area_invariant(fixtures.rational_l()[0])


@pytest.mark.parametrize("m", [
    ((1, 1), (0, 1)),
    ((2, 1), (1, 1)),
    ((0, -1), (1, 0)),
    ((QElem(2), 0), (0, QElem(1) / 2)),
])
def test_area_invariant_matrices(m):
    g = tuple(tuple(QElem(x) if not isinstance(x, QElem) else x for x in row) for row in m)
    for name in ("golden-l", "d2-h2"):
        s = fixtures.SURFACES[name]()
        assert area_invariant(apply_gl2(g, s)) == area_invariant(s)


@pytest.mark.parametrize("name", ["golden-l", "d2-h2", "torus"])
def test_bound_monotonicity(name):
    s = fixtures.SURFACES[name]()
    statuses = [property_x(s, b).status for b in (1, 2, 3)]
    first = statuses.index(Status.PROVED)
    assert Status.REFUTED not in statuses[first:]
