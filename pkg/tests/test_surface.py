import pytest

from veech2.qfield import QElem
from veech2.surface import (
    InvalidPolygon,
    NonParallelGluing,
    SingularMatrix,
    Surface,
    UnmatchedEdge,
    Vec2,
    apply_gl2,
    area,
    holonomy_lattice,
    is_quadratic,
    lattice_basis,
    mat_det,
    subdivide,
    validate,
)

L_VERTS = [(0, 0), (1, 0), (2, 0), (2, 1), (1, 1), (1, 2), (0, 2), (0, 1)]
L_GLUE = [(0, 0, 0, 5), (0, 1, 0, 3), (0, 2, 0, 7), (0, 4, 0, 6)]


def l_shape():
    return Surface([L_VERTS], L_GLUE)


def spans_z2(basis):
    vs = [(v.x, v.y) for v in basis]
    if any(not (x.is_rational() and y.is_rational()) for x, y in vs):
        return False
    if any(x.a.denominator != 1 or y.a.denominator != 1 for x, y in vs):
        return False
    # some 2x2 minor is a unimodular pair
    return any(
        abs(vs[i][0].a * vs[j][1].a - vs[i][1].a * vs[j][0].a) == 1
        for i in range(len(vs))
        for j in range(len(vs))
    )


def test_torus(torus):
    info = validate(torus)
    assert info.genus == 1
    assert tuple(info.zero_orders) == ()
    assert list(info.cone_angles) == [1]
    assert str(is_quadratic(torus)) == "Rational"
    assert spans_z2(lattice_basis(torus))
    assert len(lattice_basis(torus)) == 2


def test_l_shape():
    s = l_shape()
    info = validate(s)
    assert info.genus == 2
    assert tuple(info.zero_orders) == (2,)
    assert list(info.cone_angles) == [3]
    assert spans_z2(lattice_basis(s))
    assert str(is_quadratic(s)) == "Rational"


def test_non_parallel_gluing():
    s = Surface([[(0, 0), (1, 0), (1, 1), (0, 1)]], [(0, 0, 0, 1), (0, 2, 0, 3)])
    with pytest.raises(NonParallelGluing):
        validate(s)


def test_unmatched_edge():
    s = Surface([[(0, 0), (1, 0), (1, 1), (0, 1)]], [(0, 0, 0, 2)])
    with pytest.raises(UnmatchedEdge):
        validate(s)


def test_self_intersecting_polygon():
    s = Surface([[(0, 0), (1, 1), (1, 0), (0, 1)]], [(0, 0, 0, 2), (0, 1, 0, 3)])
    with pytest.raises(InvalidPolygon):
        validate(s)


def test_golden_rank(golden):
    s, _ = golden
    q = is_quadratic(s)
    assert str(q) == "Quadratic(5)"
    assert q.rank == 4
    assert len(lattice_basis(s)) == 4
    gens = holonomy_lattice(s)
    assert Vec2(1, 0) in gens or Vec2(-1, 0) in gens


def test_apply_gl2(torus):
    one, zero = QElem(1), QElem(0)
    assert apply_gl2(((one, zero), (zero, one)), torus) == torus
    sheared = apply_gl2(((one, zero), (-one, one)), torus)
    assert validate(sheared).genus == 1
    assert area(sheared) == 1
    with pytest.raises(SingularMatrix):
        apply_gl2(((one, one), (one, one)), torus)


def test_reflection_keeps_stratum():
    s = l_shape()
    r = apply_gl2(((QElem(-1), QElem(0)), (QElem(0), QElem(1))), s)
    assert tuple(validate(r).zero_orders) == (2,)
    assert area(r) == area(s) == 3


def test_subdivide(torus):
    t = subdivide(torus, 0, 0, 2)
    assert len(t.polygons) == 2
    assert validate(t).genus == 1
    assert area(t) == 1


def test_golden_area(golden):
    s, _ = golden
    phi = QElem(1, 1, 5) / 2
    assert area(s) == 1 + phi * phi
