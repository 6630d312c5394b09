"""Named example surfaces used by the tests and the command line."""

from __future__ import annotations

from .cylinder import build_h2, build_h11
from .qfield import QElem
from .surface import Surface

PHI = QElem(1, 1, 5) / 2
SQRT2 = QElem.sqrt(2)


def torus() -> Surface:
    return Surface([[(0, 0), (1, 0), (1, 1), (0, 1)]], [(0, 0, 0, 2), (0, 1, 0, 3)])


def golden_l_data():
    return (QElem(1), PHI, QElem(1), PHI, QElem(3, -1, 5) / 2, QElem(0))


def d2_h2_data():
    return (QElem(1), 1 + SQRT2, SQRT2 - 1, QElem(1), 2 - SQRT2, QElem(0))


def d2_h11_data():
    return (QElem(1), SQRT2, QElem(1), 2 - SQRT2, SQRT2 - 1, QElem(0), QElem(1), QElem(0))


def golden_l():
    return build_h2(*golden_l_data())


def perturbed_golden_l():
    w1, w2, h1, h2, t1, t2 = golden_l_data()
    return build_h2(w1, w2, h1 + QElem(1) / 7, h2, t1, t2)


def d2_h2():
    return build_h2(*d2_h2_data())


def d2_h11():
    return build_h11(*d2_h11_data())


def bad_h2():
    return build_h2(1, SQRT2, 1, 1, 0, 0)


def rational_l():
    return build_h2(1, 2, 1, 1, 0, 0)


def rational_h11():
    return build_h11(1, 1, 1, 1, 1, 0, 0, 0)


SURFACES = {
    "torus": lambda: torus(),
    "golden-l": lambda: golden_l()[0],
    "perturbed-golden-l": lambda: perturbed_golden_l()[0],
    "d2-h2": lambda: d2_h2()[0],
    "d2-h11": lambda: d2_h11()[0],
    "bad-h2": lambda: bad_h2()[0],
    "rational-l": lambda: rational_l()[0],
    "rational-h11": lambda: rational_h11()[0],
}

# builder outputs with their symplectic bases
BUILT = {
    "golden-l": golden_l,
    "perturbed-golden-l": perturbed_golden_l,
    "d2-h2": d2_h2,
    "d2-h11": d2_h11,
    "bad-h2": bad_h2,
    "rational-l": rational_l,
    "rational-h11": rational_h11,
}
