import pytest

from helpers import h2_data, h11_data, rng
from veech2 import fixtures
from veech2.cylinder import (
    CylinderData,
    Inconclusive,
    NonPositive,
    ParallelDirections,
    TwistRange,
    WidthOrder,
    build_h2,
    build_h11,
    decompose,
    homological_directions,
    measure_twists,
    normalize_direction,
)
from veech2.qfield import QElem
from veech2.surface import Vec2, validate

PHI = fixtures.PHI


def data_of(dec):
    return [(c.width, c.height, c.twist) for c in dec.cylinders]


def test_rational_l():
    s, _ = build_h2(1, 2, 1, 1, 0, 0)
    assert tuple(validate(s).zero_orders) == (2,)


def test_builder_errors():
    with pytest.raises(WidthOrder):
        build_h2(2, 1, 1, 1, 0, 0)
    with pytest.raises(NonPositive):
        build_h11(1, 1, 0, 1, 1, 0, 0, 0)
    with pytest.raises(TwistRange):
        build_h2(1, 2, 1, 1, 1, 0)
    with pytest.raises(NonPositive):
        CylinderData(QElem(-1), QElem(1))


def test_h11_builder():
    s, _ = build_h11(1, 1, 1, 1, 1, 0, 0, 0)
    info = validate(s)
    assert info.genus == 2 and tuple(info.zero_orders) == (1, 1)
    assert list(info.cone_angles) == [2, 2]


def test_golden_round_trip(golden):
    s, _ = golden
    dec = decompose(s, Vec2(1, 0))
    assert dec.kind == "h2"
    assert data_of(dec) == [
        (QElem(1), QElem(1), QElem(3, -1, 5) / 2),
        (PHI, PHI, QElem(0)),
    ]


def test_d2_h11_round_trip():
    s, _ = fixtures.d2_h11()
    dec = decompose(s, Vec2(1, 0))
    w1, w2, h1, h2, h3, t1, t2, t3 = fixtures.d2_h11_data()
    assert dec.kind == "h11"
    assert data_of(dec) == [(w1, h1, t1), (w2, h2, t2), (w1 + w2, h3, t3)]


@pytest.mark.parametrize("d", [2, 3, 5])
def test_random_h2_round_trip(d):
    r = rng(100 + d)
    for _ in range(15):
        w1, w2, h1, h2, t1, t2 = h2_data(r, d)
        s, _ = build_h2(w1, w2, h1, h2, t1, t2)
        dec = decompose(s, Vec2(1, 0))
        assert data_of(dec) == [(w1, h1, t1), (w2, h2, t2)]


@pytest.mark.parametrize("d", [2, 5])
def test_random_h11_round_trip(d):
    r = rng(200 + d)
    for _ in range(10):
        w1, w2, h1, h2, h3, t1, t2, t3 = h11_data(r, d)
        if w2 < w1 or (w1 == w2 and h2 < h1):
            continue  # labels follow width order
        s, _ = build_h11(w1, w2, h1, h2, h3, t1, t2, t3)
        dec = decompose(s, Vec2(1, 0))
        assert dec.kind == "h11"
        assert data_of(dec) == [(w1, h1, t1), (w2, h2, t2), (w1 + w2, h3, t3)]


def test_torus_diagonal(torus):
    dec = decompose(torus, Vec2(1, 1), cap=10)
    assert data_of(dec) == [(QElem(1), QElem(1), QElem(0))]


def test_torus_twists(torus):
    dec = decompose(torus, Vec2(1, 0))
    assert measure_twists(dec, Vec2(0, 1)) == [0]
    assert measure_twists(dec, Vec2(-1, 1)) == [0]
    with pytest.raises(ParallelDirections):
        measure_twists(dec, Vec2(2, 0))


def test_golden_vertical(golden):
    s, _ = golden
    assert isinstance(decompose(s, Vec2(0, 1), cap=1), Inconclusive)
    dec = decompose(s, Vec2(0, 1))
    assert len(dec.cylinders) == 2
    total = sum((c.width * c.height for c in dec.cylinders), QElem(0))
    assert total == 1 + PHI * PHI


def test_cap_from_environment(golden, monkeypatch):
    s, _ = golden
    monkeypatch.setenv("VEECH2_CAP", "1")
    assert isinstance(decompose(s, Vec2(1, 0)), Inconclusive)
    monkeypatch.setenv("VEECH2_CAP", "1000")
    assert not isinstance(decompose(s, Vec2(1, 0)), Inconclusive)


def test_homological_directions(torus, golden):
    assert set(homological_directions(torus, 1)) == {
        Vec2(1, 0), Vec2(0, 1), Vec2(1, 1), Vec2(1, -1)
    }
    assert homological_directions(torus, 0) == []
    dirs = homological_directions(golden[0], 1)
    assert dirs[:2] == [Vec2(1, 0), Vec2(0, 1)]


def test_normalize_direction():
    assert normalize_direction(Vec2(-2, 4)) == Vec2(1, -2)
    assert normalize_direction(Vec2(0, -3)) == Vec2(0, 1)


def test_decomposition_area(golden):
    s, _ = golden
    for v in homological_directions(s, 1)[:12]:
        dec = decompose(s, v)
        if isinstance(dec, Inconclusive):
            continue
        total = sum((c.width * c.height for c in dec.cylinders), QElem(0))
        assert total == 1 + PHI * PHI
