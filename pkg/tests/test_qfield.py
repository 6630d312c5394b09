import threading
from fractions import Fraction

import mpmath
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from veech2.qfield import (
    BadField,
    FieldMismatch,
    QElem,
    QField,
    fundamental_unit,
    positive_norm_one_unit,
)

D_VALUES = [2, 3, 5, 13]


def rationals(limit=50):
    return st.fractions(min_value=-limit, max_value=limit, max_denominator=12)


def elems(d):
    return st.builds(lambda a, b: QElem(a, b, d), rationals(), rationals())


def brute_unit(d):
    """Smallest unit > 1 by direct search over the integral basis."""
    best = None
    half = d % 4 == 1
    for q in range(1, 400):
        for p in range(-4000, 4000):
            if half:
                if (p - q) % 2:
                    continue
                n = p * p - d * q * q
                if abs(n) != 4:
                    continue
                x = QElem(Fraction(p, 2), Fraction(q, 2), d)
            else:
                if abs(p * p - d * q * q) != 1:
                    continue
                x = QElem(p, q, d)
            if x > 1 and (best is None or x < best):
                best = x
        if best is not None and q > 40:
            break
    return best


def test_conj_examples():
    assert QElem(3, 2, 5).conj() == QElem(3, -2, 5)
    assert QElem(7).conj() == QElem(7)


def test_sign_examples():
    assert QElem(1, -1, 2).sign() == -1
    assert QElem(0).sign() == 0
    assert (QElem(3, -1, 5) / 2).sign() == 1


def test_is_integer_examples():
    assert (QElem(1, 1, 5) / 2).is_integer()
    assert not (QElem(1, 1, 2) / 2).is_integer()
    assert QElem(4, 0, 7).is_integer()


@pytest.mark.parametrize("d, expected", [
    (2, QElem(1, 1, 2)),
    (5, QElem(1, 1, 5) / 2),
    (3, QElem(2, 1, 3)),
])
def test_fundamental_unit_examples(d, expected):
    assert fundamental_unit(d) == expected


@pytest.mark.parametrize("d", D_VALUES)
def test_fundamental_unit_matches_search(d):
    assert fundamental_unit(d) == brute_unit(d)


@pytest.mark.parametrize("d", [6, 7, 10, 11, 14, 21, 29, 94])
def test_fundamental_unit_is_unit(d):
    e = fundamental_unit(d)
    assert e > 1 and e.is_integer() and abs(e.norm_rational()) == 1


def test_positive_norm_one_unit():
    assert positive_norm_one_unit(2) == QElem(3, 2, 2)
    assert positive_norm_one_unit(3) == QElem(2, 1, 3)
    phi = QElem(1, 1, 5) / 2
    assert positive_norm_one_unit(5) == phi * phi


def test_unit_cache_threads():
    out = []
    ts = [threading.Thread(target=lambda: out.append(fundamental_unit(61))) for _ in range(8)]
    for t in ts:
        t.start()
    for t in ts:
        t.join()
    assert len(set(out)) == 1
    assert out[0].norm_rational() in (1, -1)


@pytest.mark.parametrize("d", [4, 8, 1, 0, -3, 12])
def test_bad_field(d):
    with pytest.raises(BadField):
        QField(d)


def test_field_mismatch():
    with pytest.raises(FieldMismatch):
        QElem(0, 1, 2) + QElem(0, 1, 3)
    assert QElem(1) + QElem(0, 1, 3) == QElem(1, 1, 3)


def test_floats_rejected():
    with pytest.raises(TypeError):
        QElem(0.5)


@pytest.mark.parametrize("d", D_VALUES)
@settings(max_examples=60, deadline=None)
@given(data=st.data())
def test_ring_laws(d, data):
    x, y, z = (data.draw(elems(d)) for _ in range(3))
    assert x.conj().conj() == x
    assert (x * y).norm() == x.norm() * y.norm()
    assert (x * y).conj() == x.conj() * y.conj()
    assert x * (y + z) == x * y + x * z
    assert (x * x.conj()).b == 0
    if not y.is_zero():
        assert (x / y) * y == x


@pytest.mark.parametrize("d", D_VALUES)
@settings(max_examples=80, deadline=None)
@given(data=st.data())
def test_sign_against_high_precision(d, data):
    x = data.draw(elems(d))
    with mpmath.workdps(60):
        v = mpmath.mpf(x.a.numerator) / x.a.denominator + (
            mpmath.mpf(x.b.numerator) / x.b.denominator
        ) * mpmath.sqrt(d)
        expected = 0 if v == 0 else (1 if v > 0 else -1)
    assert x.sign() == expected
    if abs(float(x)) > 1e-9:
        assert x.sign() == (1 if float(x) > 0 else -1)


@pytest.mark.parametrize("d", D_VALUES)
@settings(max_examples=40, deadline=None)
@given(data=st.data())
def test_floor_and_mod(d, data):
    x = data.draw(elems(d))
    n = x.floor()
    assert n <= x < n + 1
    m = QElem(1, 1, d)
    r = x.mod(m)
    assert 0 <= r < m
    assert ((x - r) / m).is_rational()


@pytest.mark.parametrize("d", D_VALUES)
def test_basis_round_trip(d):
    for x0 in range(-3, 4):
        for x1 in range(-3, 4):
            e = QElem.from_basis(x0, x1, d)
            assert e.is_integer()
            assert e.basis_coords() == (x0, x1)
