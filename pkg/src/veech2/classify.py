"""Classification predicates for genus two translation surfaces.

Verdicts of scans over homological directions are semi-decisions: ``Proved``
for a universally quantified property means "no counterexample up to the
coefficient bound", and is labelled with that bound.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass

from gmpy2 import mpq

from .cylinder import (
    CylinderData,
    H11Derived,
    decompose,
    homological_directions,
    measure_twists,
)
from .jinvariant import j_vv, j_vw
from .qfield import QElem, as_qelem, fundamental_unit
from .surface import (
    SurfaceError,
    Surface,
    Vec2,
    area,
    is_quadratic,
    lattice_basis,
    validate,
)

__all__ = [
    "Status",
    "Witness",
    "Verdict",
    "WrongStratum",
    "NotQuadratic",
    "PreconditionFailed",
    "NoValidRenumbering",
    "H2Sides",
    "H11Check",
    "h2_sides",
    "check_h2_equations",
    "check_h11_equations",
    "property_x",
    "property_x_via_jvw",
    "is_veech_h2",
    "is_completely_periodic",
    "is_hyperperiodic_genus2",
    "area_invariant",
]


class WrongStratum(SurfaceError):
    pass


class NotQuadratic(SurfaceError):
    pass


class PreconditionFailed(SurfaceError):
    pass


class NoValidRenumbering(ValueError):
    pass


class Status(str, enum.Enum):
    PROVED = "Proved"
    REFUTED = "RefutedWithWitness"
    INCONCLUSIVE = "InconclusiveAtBound"

    @property
    def exit_code(self) -> int:
        return {"Proved": 0, "RefutedWithWitness": 2, "InconclusiveAtBound": 3}[self.value]


@dataclass(frozen=True)
class Witness:
    """Exact counterexample or certificate data attached to a verdict."""

    direction: Vec2 | None = None
    equation: str | None = None
    residual: QElem | None = None
    jvv: mpq | None = None
    second_direction: Vec2 | None = None


@dataclass(frozen=True)
class Verdict:
    status: Status
    claim: str
    witness: Witness | None = None
    bound: int | None = None
    note: str = ""

    @property
    def exit_code(self) -> int:
        return self.status.exit_code

    def __bool__(self):
        return self.status is Status.PROVED


# -- equations --------------------------------------------------------------------


@dataclass(frozen=True)
class H2Sides:
    eq1_lhs: QElem
    eq1_rhs: QElem
    eq2_lhs: QElem
    eq2_rhs: QElem

    @property
    def eq1_residual(self) -> QElem:
        return self.eq1_lhs - self.eq1_rhs

    @property
    def eq2_residual(self) -> QElem:
        return self.eq2_rhs - self.eq2_lhs

    @property
    def eq1(self) -> bool:
        return self.eq1_residual.is_zero()

    @property
    def eq2(self) -> bool:
        return self.eq2_residual.is_zero()


def _in_field(d, *xs):
    for x in xs:
        if x.b != 0 and x.d != d:
            raise SurfaceError(f"value {x} is not in Q(sqrt {d})")


def h2_sides(c1: CylinderData, c2: CylinderData, d=None) -> H2Sides:
    """Both sides of the width/height equation and the twist equation."""
    w1, h1, t1 = c1.width, c1.height, c1.twist
    w2, h2, t2 = c2.width, c2.height, c2.twist
    if d is not None:
        _in_field(d, w1, h1, t1, w2, h2, t2)
    lhs2 = w1.conj() * t1 + w2.conj() * t2 + w1.conj() * w2
    return H2Sides(w1 * h1.conj(), -(w2 * h2.conj()), lhs2, lhs2.conj())


def check_h2_equations(c1: CylinderData, c2: CylinderData, d=None) -> bool:
    s = h2_sides(c1, c2, d)
    return s.eq1 and s.eq2


@dataclass(frozen=True)
class H11Check:
    holds: bool
    eq4: bool
    eq5: bool
    c1: mpq
    c2: mpq
    order: tuple

    def __bool__(self):
        return self.holds


def _h11_one(cyls, order):
    a, b, c = (cyls[i] for i in order)
    der = H11Derived.of(a, b, c)
    w1, w2 = a.width, b.width
    eq4 = (w1 * der.s1.conj() + w2 * der.s2.conj()).is_zero()
    x = w1.conj() * der.tau1 + w2.conj() * der.tau2 + w1.conj() * w2
    eq5 = (x - x.conj()).is_zero()
    total = w1 * der.s1 + w2 * der.s2
    return eq4, eq5, total.a / 2, total.b / 2


def check_h11_equations(c1: CylinderData, c2: CylinderData, c3: CylinderData, d=None) -> H11Check:
    """Test the three-cylinder equations under every admissible renumbering.

    The result is truthy when some numbering with w3 = w1 + w2 satisfies both
    the height equation and the twist equation; ``c1, c2`` come from the area
    identity of that numbering.
    """
    cyls = [c1, c2, c3]
    if d is not None:
        for c in cyls:
            _in_field(d, c.width, c.height, c.twist)
    orders = []
    for k in range(3):
        i, j = [m for m in range(3) if m != k]
        if cyls[k].width == cyls[i].width + cyls[j].width:
            orders += [(i, j, k), (j, i, k)]
    if not orders:
        raise NoValidRenumbering("no cylinder width is the sum of the other two")
    first = None
    for order in orders:
        eq4, eq5, a, b = _h11_one(cyls, order)
        res = H11Check(eq4 and eq5, eq4, eq5, a, b, order)
        if res.holds:
            return res
        if first is None or (eq4 and not first.eq4):
            first = res
    return first


# -- scans ---------------------------------------------------------------------------


def _genus2(s: Surface):
    info = validate(s)
    if info.genus != 2:
        raise WrongStratum(f"expected genus 2, got {info.stratum}")
    return info


def property_x(s: Surface, coeff_bound: int = 2) -> Verdict:
    """J_vv = 0 for every homological direction with coefficients up to the bound."""
    validate(s)
    for v in homological_directions(s, coeff_bound):
        j = j_vv(s, v)
        if not j.is_zero():
            return Verdict(Status.REFUTED, "property-x", Witness(direction=v, jvv=j.c), coeff_bound)
    return Verdict(Status.PROVED, "property-x", None, coeff_bound, "no nonzero J_vv up to the bound")


def property_x_via_jvw(s: Surface, v: Vec2, w: Vec2) -> bool:
    validate(s)
    q = is_quadratic(s)
    if q.kind != "quadratic":
        raise PreconditionFailed("surface can be rescaled to rational periods")
    if not j_vv(s, v).is_zero() or not j_vv(s, w).is_zero():
        raise PreconditionFailed("J_vv or J_ww does not vanish")
    c = j_vw(s, v, w)
    return c.c2 == c.c3 and c.c1 == q.d * c.c4


def is_hyperperiodic_genus2(s: Surface, coeff_bound: int = 2) -> Verdict:
    _genus2(s)
    v = property_x(s, coeff_bound)
    return Verdict(v.status, "hyperperiodic", v.witness, coeff_bound, v.note)


def _rescaled(cyls):
    """Multiply all data by the least common denominator of their coordinates."""
    den = 1
    for c in cyls:
        for x in (c.width, c.height, c.twist):
            for r in (x.a, x.b):
                den = den * int(r.denominator) // math.gcd(den, int(r.denominator))
    return [CylinderData(c.width * den, c.height * den, c.twist * den) for c in cyls]


def _scan(s, cap, coeff_bound):
    for v in homological_directions(s, coeff_bound):
        yield v, decompose(s, v, cap)


def is_veech_h2(s: Surface, cap=None, coeff_bound: int = 2) -> Verdict:
    info = validate(s)
    if tuple(info.zero_orders) != (2,):
        raise WrongStratum(f"expected H(2), got {info.stratum}")
    if is_quadratic(s).kind == "rational":
        return Verdict(Status.PROVED, "veech", None, None, "rational periods: square-tiled")
    candidate = None  # (direction, decomposition)
    periodic = []
    for v, dec in _scan(s, cap, coeff_bound):
        if not dec:
            continue
        n = len(dec.cylinders)
        if n == 1:
            wit = Witness(direction=v, equation="one-cylinder", jvv=j_vv(s, v).c)
            return Verdict(Status.REFUTED, "veech", wit, coeff_bound,
                           "one-cylinder direction on an irrational surface")
        if n == 2 and dec.kind == "h2":
            sides = h2_sides(*_rescaled(dec.cylinders))
            if not sides.eq1:
                wit = Witness(direction=v, equation="1", residual=sides.eq1_residual)
                return Verdict(Status.REFUTED, "veech", wit, coeff_bound)
            if candidate is None:
                candidate = (v, dec)
        periodic.append(v)
        if candidate is not None:
            w = next((u for u in periodic if u != candidate[0]), None)
            if w is not None:
                break
    else:
        return Verdict(Status.INCONCLUSIVE, "veech", None, coeff_bound,
                       "no pair of periodic directions found")
    v, dec = candidate
    twists = measure_twists(dec, w)
    cyls = [CylinderData(c.width, c.height, t) for c, t in zip(dec.cylinders, twists)]
    sides = h2_sides(*_rescaled(cyls))
    if not sides.eq2:
        wit = Witness(direction=v, equation="2", residual=sides.eq2_residual, second_direction=w)
        return Verdict(Status.REFUTED, "veech", wit, coeff_bound)
    return Verdict(Status.PROVED, "veech", Witness(direction=v, second_direction=w), coeff_bound)


def is_completely_periodic(s: Surface, cap=None, coeff_bound: int = 2) -> Verdict:
    info = _genus2(s)
    if tuple(info.zero_orders) == (2,):
        v = is_veech_h2(s, cap, coeff_bound)
        return Verdict(v.status, "completely-periodic", v.witness, v.bound, v.note)
    if is_quadratic(s).kind == "rational":
        return Verdict(Status.PROVED, "completely-periodic", None, None,
                       "rational absolute periods")
    for v, dec in _scan(s, cap, coeff_bound):
        if not dec or len(dec.cylinders) != 3:
            continue
        try:
            res = check_h11_equations(*_rescaled(dec.cylinders))
        except NoValidRenumbering:
            continue
        if res.holds:
            return Verdict(Status.PROVED, "completely-periodic", Witness(direction=v), coeff_bound,
                           f"c1={res.c1} c2={res.c2}")
        if not res.eq4:
            return Verdict(Status.REFUTED, "completely-periodic",
                           Witness(direction=v, equation="4"), coeff_bound)
    return Verdict(Status.INCONCLUSIVE, "completely-periodic", None, coeff_bound,
                   "no three-cylinder direction satisfying the equations found")


# -- area invariant ---------------------------------------------------------------


def _lcd(xs) -> int:
    den = 1
    for x in xs:
        for r in (x.a, x.b):
            den = den * int(r.denominator) // math.gcd(den, int(r.denominator))
    return den


def _ideal_basis(xs, d):
    """HNF Z-basis (2x2, basis coordinates) of the O_d-ideal generated by xs."""
    from .surface import _hnf_rows

    omega = QElem.from_basis(0, 1, d)
    rows = []
    for x in xs:
        for y in (x, x * omega):
            c0, c1 = y.basis_coords()
            rows.append([int(c0), int(c1)])
    return _hnf_rows(rows)


def _content(xs, d) -> QElem:
    """Canonical positive generator of the ideal generated by integral xs.

    Falls back to the rational gcd when the ideal is not principal.
    """
    basis = _ideal_basis(xs, d)
    norm = abs(basis[0][0] * basis[1][1] - basis[0][1] * basis[1][0])
    eps = fundamental_unit(d)
    # a generator can be moved by units into value and conjugate both
    # at most sqrt(norm) * eps, so a finite box of ideal elements suffices
    bound = math.isqrt(norm) + 1
    bound = int((float(eps) + 1) * bound * 4) + 2
    b0 = QElem.from_basis(*basis[0], d)
    b1 = QElem.from_basis(*basis[1], d)
    gen = None
    for m in range(-bound, bound + 1):
        for n in range(-bound, bound + 1):
            g = b0 * m + b1 * n
            if g.is_zero() or abs(g.norm_rational()) != norm:
                continue
            gen = g
            break
        if gen is not None:
            break
    if gen is None:
        g = 0
        for x in xs:
            for r in x.basis_coords():
                g = math.gcd(g, int(r))
        return QElem(g)
    if gen.sign() < 0:
        gen = -gen
    lo = QElem(norm)  # compare squares: gen^2 in [norm, norm * eps^2)
    while gen * gen < lo:
        gen = gen * eps
    while not gen * gen < lo * eps * eps:
        gen = gen / eps
    return gen


def area_invariant(s: Surface) -> QElem:
    """Area after clearing denominators and dividing out the O_d content
    of the x and y coordinates of the period lattice."""
    validate(s)
    q = is_quadratic(s)
    if q.kind != "quadratic":
        raise NotQuadratic(f"surface is {q}")
    d = q.d
    gens = lattice_basis(s)
    scale = QElem(1)
    for coords in ([g.x for g in gens], [g.y for g in gens]):
        den = _lcd(coords)
        ints = [x * den for x in coords if not x.is_zero()]
        scale = scale * den / _content(ints, d)
    return area(s) * scale
