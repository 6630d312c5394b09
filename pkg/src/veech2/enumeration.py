"""Solutions of the two-cylinder Veech equations in O_d, up to units.

A solution is a tuple (w1, w2, h1, h2, t1, t2) of algebraic integers with
w_i, h_i > 0, 0 <= t_i < w_i, w1 < w2, satisfying

    w1 conj(h1) + w2 conj(h2) = 0,
    conj(w1) t1 + conj(w2) t2 + conj(w1) w2  is rational,
    w1 h1 + w2 h2 = 2 (c1 + c2 sqrt d).

Searches run over an explicit box: every variable has coordinates on the
integral basis (1, omega) of absolute value at most N.  Counts are relative
to that box.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np
from gmpy2 import mpq

from .kernels import oracle_pairs, oracle_twists
from .qfield import BadField, QElem, _check_d, positive_norm_one_unit

__all__ = [
    "EmptyArea",
    "NonIntegralTarget",
    "NotAUnit",
    "NegativeUnit",
    "SolutionH2",
    "SolutionSet",
    "unit_act",
    "canonical",
    "solve_h2",
    "oracle_h2",
    "target",
]


class EmptyArea(ValueError):
    pass


class NonIntegralTarget(ValueError):
    pass


class NotAUnit(ValueError):
    pass


class NegativeUnit(ValueError):
    pass


@dataclass(frozen=True)
class SolutionH2:
    w1: QElem
    w2: QElem
    h1: QElem
    h2: QElem
    t1: QElem
    t2: QElem

    def values(self):
        return (self.w1, self.w2, self.h1, self.h2, self.t1, self.t2)

    def key(self):
        return tuple(c for x in self.values() for c in x.basis_coords())

    def satisfies(self, A: QElem) -> bool:
        w1, w2, h1, h2, t1, t2 = self.values()
        if not all(x.is_integer() for x in self.values()):
            return False
        if min(w1.sign(), w2.sign(), h1.sign(), h2.sign()) <= 0:
            return False
        if t1.sign() < 0 or t2.sign() < 0 or not (t1 < w1 and t2 < w2 and w1 < w2):
            return False
        if not (w1 * h1.conj() + w2 * h2.conj()).is_zero():
            return False
        x = w1.conj() * t1 + w2.conj() * t2 + w1.conj() * w2
        return x.b == 0 and w1 * h1 + w2 * h2 == A


@dataclass
class SolutionSet:
    d: int
    c1: mpq
    c2: mpq
    box: int
    solutions: list = field(default_factory=list)

    @property
    def count(self) -> int:
        return len(self.solutions)

    @property
    def bounds_used(self) -> str:
        return f"integral-basis coordinates |x| <= {self.box}"

    def __eq__(self, other):
        return (
            isinstance(other, SolutionSet)
            and (self.d, self.c1, self.c2, self.box) == (other.d, other.c1, other.c2, other.box)
            and self.solutions == other.solutions
        )


def _is_positive_unit(eps: QElem, d: int) -> QElem:
    if eps.b != 0 and eps.d != d:
        raise NotAUnit(f"{eps} is not in Q(sqrt {d})")
    e = QElem(eps.a, eps.b, d if eps.b else None)
    if e.is_zero() or not e.is_integer() or abs(e.norm_rational()) != 1:
        raise NotAUnit(f"{eps} is not a unit of O_{d}")
    if e.norm_rational() != 1:
        raise NotAUnit(f"{eps} has norm -1")
    if e.sign() < 0:
        raise NegativeUnit(f"{eps} is negative")
    return e


def unit_act(eps, sol: SolutionH2, d: int | None = None) -> SolutionH2:
    """(w, t) -> eps (w, t) and h -> conj(eps) h for a positive norm-one unit."""
    eps = eps if isinstance(eps, QElem) else QElem(eps)
    if d is None:
        d = next((x.d for x in sol.values() if x.d is not None), eps.d)
    if d is None:
        if eps != 1:
            raise NotAUnit(f"{eps} is not a unit")
        return sol
    e = _is_positive_unit(eps, d)
    eb = e.conj()
    return SolutionH2(e * sol.w1, e * sol.w2, eb * sol.h1, eb * sol.h2, e * sol.t1, e * sol.t2)


def canonical(sol: SolutionH2, d: int) -> SolutionH2:
    """Orbit representative with 1 <= w1 < eps_+ (eps_+ the smallest norm-one unit > 1)."""
    ep = positive_norm_one_unit(d)
    inv = ep.conj()
    while sol.w1 < 1:
        sol = unit_act(ep, sol, d)
    while not sol.w1 < ep:
        sol = unit_act(inv, sol, d)
    return sol


def target(c1, c2, d: int, allow_half: bool = False) -> QElem:
    _check_d(d)
    c1, c2 = (mpq(x.a) if isinstance(x, QElem) and x.is_rational() else mpq(x) for x in (c1, c2))
    A = QElem(2 * c1, 2 * c2, d)
    ok = (c1.denominator == 1 and c2.denominator == 1) or (
        allow_half and (2 * c1).denominator == 1 and (2 * c2).denominator == 1
    )
    if not ok:
        raise NonIntegralTarget(f"c1={c1}, c2={c2} are not integers")
    if A.sign() <= 0:
        raise EmptyArea(f"2(c1 + c2 sqrt {d}) = {A} is not positive")
    return A


def _check_args(d, box):
    if not isinstance(d, int) or d < 2:
        raise BadField(f"d = {d!r} is not a square-free integer >= 2")
    _check_d(d)
    if box < 0:
        raise ValueError("box must be non-negative")
    if box > 10_000:
        raise ValueError("box too large for 64-bit kernels")


def _omega(d):
    # omega^2 = s*omega + c
    return (1, (d - 1) // 4) if d % 4 == 1 else (0, d)


def _box_elements(d, box):
    """All box elements sorted by value."""
    elems = [
        QElem.from_basis(x0, x1, d)
        for x0 in range(-box, box + 1)
        for x1 in range(-box, box + 1)
    ]
    elems.sort()
    return elems


def _finish(d, c1, c2, box, sols):
    seen = {}
    for s in sols:
        cs = canonical(s, d)
        seen[cs.key()] = cs
    c1, c2 = (x.a if isinstance(x, QElem) else mpq(x) for x in (c1, c2))
    return SolutionSet(d, c1, c2, box, [seen[k] for k in sorted(seen)])


def oracle_h2(c1, c2, d: int, box: int, allow_half: bool = False) -> SolutionSet:
    """Brute force over every box element for all six variables."""
    _check_args(d, box)
    A = target(c1, c2, d, allow_half)
    s, c = _omega(d)
    elems = _box_elements(d, box)
    coords = np.array([[int(v) for v in x.basis_coords()] for x in elems], dtype=np.int64)
    rank = np.arange(len(elems), dtype=np.int64)
    pos = np.array([i for i, x in enumerate(elems) if x.sign() > 0], dtype=np.int64)
    nonneg = np.array([i for i, x in enumerate(elems) if x.sign() >= 0], dtype=np.int64)
    a0, a1 = (int(v) for v in A.basis_coords())
    E = np.ascontiguousarray(coords[pos])
    T = np.ascontiguousarray(coords[nonneg])
    quads = oracle_pairs(E, np.ascontiguousarray(rank[pos]), a0, a1, s, c)
    sols = []
    for i, j, k, l in quads:
        w1, h1, w2, h2 = (elems[pos[m]] for m in (i, j, k, l))
        twists = oracle_twists(
            T, np.ascontiguousarray(rank[nonneg]),
            int(coords[pos[i], 0]), int(coords[pos[i], 1]), int(pos[i]),
            int(coords[pos[k], 0]), int(coords[pos[k], 1]), int(pos[k]),
            s, c,
        )
        for p, q in twists:
            sols.append(SolutionH2(w1, w2, h1, h2, elems[nonneg[p]], elems[nonneg[q]]))
    return _finish(d, c1, c2, box, sols)


# -- structured search ----------------------------------------------------------


def _mul(x, y, s, c):
    return (x[0] * y[0] + c * x[1] * y[1], x[0] * y[1] + x[1] * y[0] + s * x[1] * y[1])


def _conj(x, s):
    return (x[0] + s * x[1], -x[1])


def _line(R, B, s, c):
    """Primitive integer generator of {w : w conj(R) = B conj(w)}, or None."""
    Rb = _conj(R, s)
    # columns: images of the basis vectors 1 and omega
    cols = []
    for e in ((1, 0), (0, 1)):
        u = _mul(e, Rb, s, c)
        v = _mul(B, _conj(e, s), s, c)
        cols.append((u[0] - v[0], u[1] - v[1]))
    (m00, m10), (m01, m11) = cols
    rows = [(m00, m01), (m10, m11)]
    rows = [r for r in rows if r != (0, 0)]
    if not rows:
        return None
    a, b = rows[0]
    for r in rows[1:]:
        if a * r[1] - b * r[0] != 0:
            return None
    g = math.gcd(a, b)
    return (b // g, -a // g)


def solve_h2(c1, c2, d: int, box: int, allow_half: bool = False) -> SolutionSet:
    """Structured search.

    For fixed (w1, h1) the two equations for w2 force w2 / conj(w2) to a
    fixed value, so w2 runs over integer multiples of one primitive vector;
    h2 then follows by division, and the twist equation is solved by
    matching omega coordinates.
    """
    _check_args(d, box)
    A = target(c1, c2, d, allow_half)
    s, c = _omega(d)
    elems = _box_elements(d, box)
    pos = [x for x in elems if x.sign() > 0]
    nonneg = [x for x in elems if x.sign() >= 0]
    tco = [tuple(int(v) for v in x.basis_coords()) for x in nonneg]
    Ac = tuple(int(v) for v in A.basis_coords())
    inbox = lambda x: all(abs(v) <= box for v in x.basis_coords())  # noqa: E731
    sols = []
    for w1 in pos:
        w1c = tuple(int(v) for v in w1.basis_coords())
        for h1 in pos:
            if not w1 * h1 < A:
                continue
            h1c = tuple(int(v) for v in h1.basis_coords())
            p = _mul(w1c, h1c, s, c)
            R = (Ac[0] - p[0], Ac[1] - p[1])
            q = _mul(w1c, _conj(h1c, s), s, c)
            B = (-q[0], -q[1])
            gen = _line(R, B, s, c)
            if gen is None:
                continue
            u = QElem.from_basis(gen[0], gen[1], d)
            if u.sign() < 0:
                gen, u = (-gen[0], -gen[1]), -u
            Rq = QElem.from_basis(R[0], R[1], d)
            k = 1
            while abs(gen[0]) * k <= box and abs(gen[1]) * k <= box:
                w2 = u * k
                k += 1
                if not w1 < w2:
                    continue
                h2 = Rq / w2
                if not h2.is_integer() or not inbox(h2):
                    continue
                if not (w1 * h1.conj() + w2 * h2.conj()).is_zero():
                    continue
                sols += _twists(d, s, c, w1, w2, h1, h2, nonneg, tco)
    return _finish(d, c1, c2, box, sols)


def _twists(d, s, c, w1, w2, h1, h2, nonneg, tco):
    w1c = tuple(int(v) for v in w1.basis_coords())
    w2c = tuple(int(v) for v in w2.basis_coords())
    b1, b2 = _conj(w1c, s), _conj(w2c, s)
    base = _mul(b1, w2c, s, c)[1]
    by_key = {}
    for t, tc in zip(nonneg, tco):
        if t < w2:
            by_key.setdefault(_mul(b2, tc, s, c)[1], []).append(t)
    out = []
    for t, tc in zip(nonneg, tco):
        if t < w1:
            for t2 in by_key.get(-(base + _mul(b1, tc, s, c)[1]), []):
                out.append(SolutionH2(w1, w2, h1, h2, t, t2))
    return out
