"""Random cylinder data over O_d for property tests."""

import random

from veech2.qfield import QElem


def positive(rng, d, n=4):
    while True:
        x = QElem.from_basis(rng.randint(-n, n), rng.randint(-n, n), d)
        if x.sign() > 0:
            return x


def below(rng, d, w, n=4):
    """An element of O_d in [0, w), reduced mod w."""
    return QElem.from_basis(rng.randint(-n, n), rng.randint(-n, n), d).mod(w)


def h2_data(rng, d):
    while True:
        w1, w2 = positive(rng, d), positive(rng, d)
        if w1 < w2:
            break
    h1, h2 = positive(rng, d), positive(rng, d)
    return w1, w2, h1, h2, below(rng, d, w1), below(rng, d, w2)


def h11_data(rng, d):
    w1, w2 = positive(rng, d), positive(rng, d)
    h1, h2, h3 = positive(rng, d), positive(rng, d), positive(rng, d)
    return (w1, w2, h1, h2, h3, below(rng, d, w1), below(rng, d, w2), below(rng, d, w1 + w2))


def rng(seed):
    return random.Random(seed)
