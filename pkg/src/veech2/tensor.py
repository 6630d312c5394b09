"""Coordinate models of R ^_Q R and R (x)_Q R restricted to Q(sqrt d).

For x, y in Q(sqrt d) the wedge ``x ^ y`` is a rational multiple of
``1 ^ sqrt(d)``, and ``x (x) y`` has four rational coordinates on the basis
``1(x)1, 1(x)sqrt d, sqrt d(x)1, sqrt d(x)sqrt d``.
"""

from __future__ import annotations

from dataclasses import dataclass

from gmpy2 import mpq

from .qfield import QElem, as_qelem

__all__ = ["WedgeQQ", "TensorC4", "wedge", "tensor"]


@dataclass(frozen=True)
class WedgeQQ:
    """``c * (1 ^ sqrt d)``."""

    c: mpq = mpq(0)

    def __post_init__(self):
        object.__setattr__(self, "c", mpq(self.c))

    def __add__(self, other: "WedgeQQ") -> "WedgeQQ":
        return WedgeQQ(self.c + other.c)

    def __sub__(self, other: "WedgeQQ") -> "WedgeQQ":
        return WedgeQQ(self.c - other.c)

    def __neg__(self) -> "WedgeQQ":
        return WedgeQQ(-self.c)

    def __mul__(self, r) -> "WedgeQQ":
        return WedgeQQ(self.c * mpq(r))

    __rmul__ = __mul__

    def is_zero(self) -> bool:
        return self.c == 0

    def __bool__(self):
        return self.c != 0


@dataclass(frozen=True)
class TensorC4:
    c1: mpq = mpq(0)
    c2: mpq = mpq(0)
    c3: mpq = mpq(0)
    c4: mpq = mpq(0)

    def __post_init__(self):
        for name in ("c1", "c2", "c3", "c4"):
            object.__setattr__(self, name, mpq(getattr(self, name)))

    @property
    def coords(self) -> tuple:
        return (self.c1, self.c2, self.c3, self.c4)

    def __add__(self, other: "TensorC4") -> "TensorC4":
        return TensorC4(*(a + b for a, b in zip(self.coords, other.coords)))

    def __sub__(self, other: "TensorC4") -> "TensorC4":
        return TensorC4(*(a - b for a, b in zip(self.coords, other.coords)))

    def __neg__(self) -> "TensorC4":
        return TensorC4(*(-a for a in self.coords))

    def __mul__(self, r) -> "TensorC4":
        r = mpq(r)
        return TensorC4(*(a * r for a in self.coords))

    __rmul__ = __mul__

    def transpose(self) -> "TensorC4":
        return TensorC4(self.c1, self.c3, self.c2, self.c4)

    def is_zero(self) -> bool:
        return not any(self.coords)

    def __bool__(self):
        return not self.is_zero()


def _pair(x, y) -> tuple[QElem, QElem]:
    x, y = as_qelem(x), as_qelem(y)
    x._join(y)  # raises FieldMismatch
    return x, y


def wedge(x, y) -> WedgeQQ:
    x, y = _pair(x, y)
    return WedgeQQ(x.a * y.b - x.b * y.a)


def tensor(x, y) -> TensorC4:
    x, y = _pair(x, y)
    return TensorC4(x.a * y.a, x.a * y.b, x.b * y.a, x.b * y.b)
