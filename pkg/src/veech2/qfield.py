"""Exact arithmetic in real quadratic fields Q(sqrt d).

Elements are stored as a pair of rationals ``(a, b)`` standing for
``a + b*sqrt(d)`` under the embedding with ``sqrt(d) > 0``.  All decisions
(sign, order, integrality) are made with rational arithmetic only.
"""

from __future__ import annotations

import math
import threading
from functools import lru_cache
from numbers import Rational

from gmpy2 import mpq

__all__ = [
    "FieldMismatch",
    "BadField",
    "QField",
    "QElem",
    "as_qelem",
    "fundamental_unit",
    "positive_norm_one_unit",
    "is_squarefree",
]


class FieldMismatch(ValueError):
    """Two operands live in different quadratic fields."""


class BadField(ValueError):
    """The discriminant parameter is not a square-free integer >= 2."""


def is_squarefree(n: int) -> bool:
    if n < 1:
        return False
    k = 2
    while k * k <= n:
        if n % (k * k) == 0:
            return False
        k += 1
    return True


@lru_cache(maxsize=None)
def _check_d(d: int) -> int:
    if not isinstance(d, int) or isinstance(d, bool):
        raise BadField(f"d must be an integer, got {d!r}")
    if d < 2 or math.isqrt(d) ** 2 == d or not is_squarefree(d):
        raise BadField(f"d = {d} is not a square-free integer >= 2")
    return d


def _rat(x) -> mpq:
    if isinstance(x, str):
        return mpq(x)
    if isinstance(x, float):
        raise TypeError("floats are not accepted as exact rationals")
    return mpq(x)


def _sign_of(a, b, d) -> int:
    # sign of a + b*sqrt(d) using only rational comparisons
    sa = (a > 0) - (a < 0)
    sb = (b > 0) - (b < 0)
    if sb == 0:
        return sa
    if sa == 0 or sa == sb:
        return sb if sa == 0 else sa
    if a * a > b * b * d:
        return sa
    return sb


class QElem:
    """An element ``a + b*sqrt(d)`` of Q(sqrt d).

    ``d`` is ``None`` for plain rationals; those combine with elements of any
    field.  Instances are immutable and hashable.
    """

    __slots__ = ("a", "b", "d")

    def __init__(self, a=0, b=0, d: int | None = None):
        a = _rat(a)
        b = _rat(b)
        if b != 0:
            if d is None:
                raise BadField("irrational part given without a field")
            _check_d(d)
        elif d is not None:
            _check_d(d)
        object.__setattr__(self, "a", a)
        object.__setattr__(self, "b", b)
        object.__setattr__(self, "d", d)

    def __setattr__(self, name, value):
        raise AttributeError("QElem is immutable")

    @classmethod
    def _raw(cls, a, b, d):
        obj = object.__new__(cls)
        object.__setattr__(obj, "a", a)
        object.__setattr__(obj, "b", b)
        object.__setattr__(obj, "d", d)
        return obj

    @classmethod
    def sqrt(cls, d: int) -> "QElem":
        return cls(0, 1, d)

    # -- field bookkeeping -------------------------------------------------

    def _join(self, other: "QElem") -> int | None:
        if self.d == other.d:
            return self.d
        if other.b == 0 and (self.b != 0 or other.d is None):
            return self.d
        if self.b == 0 and (other.b != 0 or self.d is None):
            return other.d
        if self.b == 0 and other.b == 0:
            return self.d
        raise FieldMismatch(f"cannot combine elements of Q(sqrt {self.d}) and Q(sqrt {other.d})")

    def _coerce(self, other):
        if isinstance(other, QElem):
            return other
        if isinstance(other, (int, Rational)) or type(other) is type(self.a):
            return QElem._raw(mpq(other), mpq(0), None)
        return None

    # -- arithmetic ---------------------------------------------------------

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return QElem._raw(self.a + o.a, self.b + o.b, self._join(o))

    __radd__ = __add__

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return QElem._raw(self.a - o.a, self.b - o.b, self._join(o))

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o - self

    def __neg__(self):
        return QElem._raw(-self.a, -self.b, self.d)

    def __pos__(self):
        return self

    def __mul__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        d = self._join(o)
        if self.b == 0 or o.b == 0:
            return QElem._raw(self.a * o.a, self.a * o.b + self.b * o.a, d)
        return QElem._raw(self.a * o.a + self.b * o.b * d, self.a * o.b + self.b * o.a, d)

    __rmul__ = __mul__

    def inverse(self) -> "QElem":
        if self.b == 0:
            if self.a == 0:
                raise ZeroDivisionError("inverse of zero")
            return QElem._raw(1 / self.a, mpq(0), self.d)
        n = self.norm_rational()
        return QElem._raw(self.a / n, -self.b / n, self.d)

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self * o.inverse()

    def __rtruediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o * self.inverse()

    def __pow__(self, n: int):
        if not isinstance(n, int):
            return NotImplemented
        if n < 0:
            return self.inverse() ** (-n)
        result = QElem._raw(mpq(1), mpq(0), self.d)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    # -- structure ------------------------------------------------------------

    def conj(self) -> "QElem":
        return QElem._raw(self.a, -self.b, self.d)

    def norm_rational(self):
        if self.b == 0:
            return self.a * self.a
        return self.a * self.a - self.b * self.b * self.d

    def norm(self) -> "QElem":
        return QElem._raw(self.norm_rational(), mpq(0), None)

    def trace(self):
        return 2 * self.a

    def sign(self) -> int:
        return _sign_of(self.a, self.b, self.d or 0)

    def is_zero(self) -> bool:
        return self.a == 0 and self.b == 0

    def is_rational(self) -> bool:
        return self.b == 0

    def is_integer(self) -> bool:
        """Membership in the ring of integers O_d."""
        if self.b == 0 and self.d is None:
            return self.a.denominator == 1
        d = self.d
        if d % 4 == 1:
            p, q = 2 * self.a, 2 * self.b
            if p.denominator != 1 or q.denominator != 1:
                return False
            return (int(p) - int(q)) % 2 == 0
        return self.a.denominator == 1 and self.b.denominator == 1

    def basis_coords(self) -> tuple[int, int] | tuple:
        """Coordinates in the integral basis (1, omega) of O_d.

        omega = sqrt(d) for d != 1 (mod 4) and (1 + sqrt d)/2 otherwise.
        Returned as rationals; integral exactly when the element is.
        """
        if self.d is not None and self.d % 4 == 1:
            return self.a - self.b, 2 * self.b
        return self.a, self.b

    @classmethod
    def from_basis(cls, x0, x1, d: int) -> "QElem":
        x0, x1 = mpq(x0), mpq(x1)
        if d % 4 == 1:
            return cls._raw(x0 + x1 / 2, x1 / 2, _check_d(d))
        return cls._raw(x0, x1, _check_d(d))

    def floor(self) -> int:
        """Exact floor of the real value."""
        n = math.floor(float(self))
        while (self - n).sign() < 0:
            n -= 1
        while (self - (n + 1)).sign() >= 0:
            n += 1
        return n

    def mod(self, m: "QElem") -> "QElem":
        """Representative of ``self`` modulo ``m`` in ``[0, m)`` (m > 0)."""
        q = (self / m).floor()
        return self - m * q

    # -- comparison -----------------------------------------------------------

    def __eq__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        if self.a != o.a or self.b != o.b:
            return False
        return self.b == 0 or self.d == o.d

    def __hash__(self):
        if self.b == 0:
            return hash(self.a)
        return hash((self.a, self.b, self.d))

    def _cmp(self, other) -> int:
        o = self._coerce(other)
        if o is None:
            raise TypeError(f"cannot compare QElem with {type(other).__name__}")
        return (self - o).sign()

    def __lt__(self, other):
        return self._cmp(other) < 0

    def __le__(self, other):
        return self._cmp(other) <= 0

    def __gt__(self, other):
        return self._cmp(other) > 0

    def __ge__(self, other):
        return self._cmp(other) >= 0

    def __bool__(self):
        return not self.is_zero()

    def __float__(self):
        if self.b == 0:
            return float(self.a)
        return float(self.a) + float(self.b) * math.sqrt(self.d)

    def __repr__(self):
        if self.b == 0:
            return f"QElem({self.a})"
        return f"QElem({self.a}, {self.b}, d={self.d})"

    def __str__(self):
        if self.b == 0:
            return str(self.a)
        sign = "+" if self.b > 0 else "-"
        b = abs(self.b)
        bs = "" if b == 1 else f"{b}*"
        if self.a == 0:
            return f"{'-' if self.b < 0 else ''}{bs}sqrt({self.d})"
        return f"{self.a} {sign} {bs}sqrt({self.d})"


def as_qelem(x, d: int | None = None) -> QElem:
    if isinstance(x, QElem):
        return x
    return QElem(x, 0, d)


# -- units -------------------------------------------------------------------


def _continued_fraction(P: int, Q: int, D: int):
    """Partial quotients of (P + sqrt D)/Q, D not a square, Q | D - P^2."""
    r = math.isqrt(D)
    while True:
        if Q > 0:
            a = (P + r) // Q
        else:
            a = (P + r + 1) // Q
        yield a
        P = a * Q - P
        Q = (D - P * P) // Q


def _compute_fundamental_unit(d: int) -> QElem:
    if d % 4 == 1:
        # x + y*omega is close to zero in the conjugate embedding when
        # x/y approximates (sqrt d - 1)/2
        c = (d - 1) // 4
        norm = lambda x, y: x * x + x * y - c * y * y  # noqa: E731
        cf = _continued_fraction(-1, 2, d)
    else:
        norm = lambda x, y: x * x - d * y * y  # noqa: E731
        cf = _continued_fraction(0, 1, d)
    p0, q0, p1, q1 = 1, 0, 0, 1
    for a in cf:
        p0, p1 = a * p0 + p1, p0
        q0, q1 = a * q0 + q1, q0
        if q0 > 0 and abs(norm(p0, q0)) == 1:
            u = QElem.from_basis(p0, q0, d)
            if u.sign() > 0 and u > 1:
                return u
            if (-u) > 1:
                return -u
            inv = u.inverse()
            return inv if inv > 1 else -inv


_unit_lock = threading.Lock()
_unit_cache: dict[int, QElem] = {}


def fundamental_unit(d: int) -> QElem:
    """Smallest unit eps > 1 of O_d (|norm(eps)| = 1)."""
    _check_d(d)
    with _unit_lock:
        u = _unit_cache.get(d)
        if u is None:
            u = _unit_cache[d] = _compute_fundamental_unit(d)
    return u


def positive_norm_one_unit(d: int) -> QElem:
    """Smallest unit > 1 whose norm is +1."""
    e = fundamental_unit(d)
    return e if e.norm_rational() == 1 else e * e


class QField:
    """The field Q(sqrt d) together with its unit group generator."""

    __slots__ = ("d",)

    def __init__(self, d: int):
        self.d = _check_d(d)

    @property
    def fundamental_unit(self) -> QElem:
        return fundamental_unit(self.d)

    @property
    def sqrt_d(self) -> QElem:
        return QElem.sqrt(self.d)

    @property
    def omega(self) -> QElem:
        return QElem.from_basis(0, 1, self.d)

    def __call__(self, a=0, b=0) -> QElem:
        return QElem(a, b, self.d)

    def __eq__(self, other):
        return isinstance(other, QField) and other.d == self.d

    def __hash__(self):
        return hash(("QField", self.d))

    def __repr__(self):
        return f"QField({self.d})"
