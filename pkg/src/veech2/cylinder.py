"""Cylinder builders, exact cylinder decomposition and twist measurement.

Twist convention
----------------
Cylinders are presented as parallelograms with base ``(w, 0)`` and side
``(s, h)``, where ``s`` is the horizontal offset (in the chart where the
twist direction is vertical) from the start of the bottom saddle connection
that faces the narrow cylinder ``C1`` to the start of the top saddle
connection that faces it.  The reported twists are

    t1 = (s1 - w2) mod w1,     t_i = s_i mod w_i  (i >= 2)

for the two-cylinder H(2) diagram and the three-cylinder H(1,1) diagram.
Under this normalisation the horizontal/vertical J_xx vanishes exactly when
the twist equation holds, and the classical golden L-shape has twists
``((3 - sqrt 5)/2, 0)``.
"""

from __future__ import annotations

import os
from dataclasses import dataclass, field

from .jinvariant import ZeroDirection, direction_normalizer
from .qfield import QElem, as_qelem
from .surface import (
    Surface,
    SurfaceError,
    Vec2,
    apply_gl2,
    area,
    lattice_basis,
    mat_apply,
    mat_inv,
    validate,
)

__all__ = [
    "CylinderData",
    "H11Derived",
    "CylinderDecomposition",
    "Inconclusive",
    "NotPeriodic",
    "WidthOrder",
    "NonPositive",
    "TwistRange",
    "ParallelDirections",
    "build_h2",
    "build_h11",
    "decompose",
    "measure_twists",
    "homological_directions",
    "default_cap",
    "normalize_direction",
]


class WidthOrder(SurfaceError):
    pass


class NonPositive(SurfaceError):
    pass


class TwistRange(SurfaceError):
    pass


class ParallelDirections(SurfaceError):
    pass


@dataclass(frozen=True)
class CylinderData:
    width: QElem
    height: QElem
    twist: QElem = QElem(0)

    def __post_init__(self):
        for name in ("width", "height", "twist"):
            object.__setattr__(self, name, as_qelem(getattr(self, name)))
        if self.width.sign() <= 0 or self.height.sign() <= 0:
            raise NonPositive(f"width and height must be positive: {self.width}, {self.height}")
        if self.twist.sign() < 0 or not self.twist < self.width:
            raise TwistRange(f"twist {self.twist} outside [0, {self.width})")


@dataclass(frozen=True)
class H11Derived:
    s1: QElem
    s2: QElem
    tau1: QElem
    tau2: QElem

    @classmethod
    def of(cls, c1: CylinderData, c2: CylinderData, c3: CylinderData) -> "H11Derived":
        return cls(
            c1.height + c3.height,
            c2.height + c3.height,
            c1.twist + c3.twist,
            c2.twist + c3.twist,
        )


# -- builders -------------------------------------------------------------------


def _positive(*xs):
    for x in xs:
        if as_qelem(x).sign() <= 0:
            raise NonPositive(f"expected a positive value, got {x}")


def _twist_ok(t, w):
    t, w = as_qelem(t), as_qelem(w)
    if t.sign() < 0 or not t < w:
        raise TwistRange(f"twist {t} outside [0, {w})")


def _field_of(*xs) -> int | None:
    d = None
    for x in xs:
        x = as_qelem(x)
        if x.b != 0:
            if d is not None and x.d != d:
                raise SurfaceError("parameters lie in different quadratic fields")
            d = x.d
    return d


def _cylinder_polygon(bottom, top, w, s, h):
    """Parallelogram with base ``(w,0)`` and side ``(s,h)``.

    ``bottom`` and ``top`` are the break points along the base and the top,
    measured from the left end (strictly between 0 and w).
    """
    z = QElem(0)
    verts = [Vec2(z, z)]
    verts += [Vec2(b, z) for b in bottom]
    verts.append(Vec2(w, z))
    verts.append(Vec2(w + s, h))
    verts += [Vec2(s + b, h) for b in reversed(top)]
    verts.append(Vec2(s, h))
    return verts


def build_h2(w1, w2, h1, h2, t1, t2):
    """Two-cylinder surface in H(2) with the given horizontal data.

    Returns ``(surface, basis)`` where ``basis`` is a symplectic basis given
    as a list of holonomy pairs ``(p(a_i), p(b_i))``.
    """
    w1, w2, h1, h2, t1, t2 = (as_qelem(x) for x in (w1, w2, h1, h2, t1, t2))
    _positive(w1, w2, h1, h2)
    if not w1 < w2:
        raise WidthOrder(f"need w1 < w2, got {w1} >= {w2}")
    _twist_ok(t1, w1)
    _twist_ok(t2, w2)
    d = _field_of(w1, w2, h1, h2, t1, t2)
    s1 = (t1 + w2).mod(w1)
    s2 = t2
    # polygon 0 = C1 (narrow), polygon 1 = C2 (wide)
    p1 = _cylinder_polygon([], [], w1, s1, h1)
    p2 = _cylinder_polygon([w1], [w1], w2, s2, h2)
    # p1 edges: 0 bottom I, 1 right, 2 top (glued to A), 3 left
    # p2 edges: 0 A, 1 B, 2 right, 3 top B', 4 top I, 5 left
    gluings = [
        (0, 1, 0, 3),
        (0, 0, 1, 4),
        (0, 2, 1, 0),
        (1, 1, 1, 3),
        (1, 2, 1, 5),
    ]
    s = Surface([p1, p2], gluings, d)
    basis = [
        (Vec2(w1, 0), Vec2(s1, h1)),
        (Vec2(w2, 0), Vec2(s2, h2)),
    ]
    return s, basis


def build_h11(w1, w2, h1, h2, h3, t1, t2, t3):
    """Three-cylinder surface in H(1,1); the wide cylinder has width w1 + w2."""
    w1, w2, h1, h2, h3, t1, t2, t3 = (
        as_qelem(x) for x in (w1, w2, h1, h2, h3, t1, t2, t3)
    )
    _positive(w1, w2, h1, h2, h3)
    w3 = w1 + w2
    _twist_ok(t1, w1)
    _twist_ok(t2, w2)
    _twist_ok(t3, w3)
    d = _field_of(w1, w2, h1, h2, h3, t1, t2, t3)
    s1 = (t1 + w2).mod(w1)
    s2, s3 = t2, t3
    p1 = _cylinder_polygon([], [], w1, s1, h1)
    p2 = _cylinder_polygon([], [], w2, s2, h2)
    p3 = _cylinder_polygon([w1], [w1], w3, s3, h3)
    # p3 edges: 0 A1, 1 A2, 2 right, 3 top I2, 4 top I1, 5 left
    gluings = [
        (0, 1, 0, 3),
        (1, 1, 1, 3),
        (2, 2, 2, 5),
        (0, 0, 2, 4),
        (1, 0, 2, 3),
        (0, 2, 2, 0),
        (1, 2, 2, 1),
    ]
    s = Surface([p1, p2, p3], gluings, d)
    basis = [
        (Vec2(w1, 0), Vec2(s1 + s3, h1 + h3)),
        (Vec2(w2, 0), Vec2(s2 + s3, h2 + h3)),
    ]
    return s, basis


# -- decomposition --------------------------------------------------------------


class NotPeriodic:
    """Exact witness that a direction is not completely periodic (reserved)."""

    def __init__(self, detail: str):
        self.detail = detail

    def __repr__(self):
        return f"NotPeriodic({self.detail!r})"


@dataclass
class Inconclusive:
    """Tracing exceeded the length cap before every leaf closed up."""

    direction: Vec2
    cap: QElem
    traced: QElem

    def __bool__(self):
        return False


@dataclass
class _Trap:
    poly: int
    lo: QElem
    hi: QElem
    left: int
    right: int
    xl_lo: QElem
    xr_lo: QElem
    xl_hi: QElem
    xr_hi: QElem
    strip: int = -1
    offset: QElem = None


@dataclass
class _Strip:
    traps: list
    width: QElem
    height: QElem
    top_marks: list = field(default_factory=list)
    bottom_marks: list = field(default_factory=list)
    top_points: list = field(default_factory=list)


@dataclass
class _Cyl:
    width: QElem
    height: QElem
    strips: list  # bottom to top
    shifts: list  # frame shift of each strip into the cylinder frame
    bottom_marks: list
    top_marks: list
    top_points: list
    top_match: list = field(default_factory=list)
    bottom_match: list = field(default_factory=list)


@dataclass
class CylinderDecomposition:
    direction: Vec2
    normalizer: tuple
    cylinders: list
    twist_direction: Vec2
    kind: str = "generic"
    _cyls: list = field(default_factory=list, repr=False, compare=False)
    _order: list = field(default_factory=list, repr=False, compare=False)
    _tracer: object = field(default=None, repr=False, compare=False)

    def __bool__(self):
        return True

    @property
    def widths(self):
        return [c.width for c in self.cylinders]

    @property
    def heights(self):
        return [c.height for c in self.cylinders]

    @property
    def twists(self):
        return [c.twist for c in self.cylinders]


def default_cap(s: Surface) -> QElem:
    env = os.environ.get("VEECH2_CAP")
    if env:
        return as_qelem(env)
    return s.perimeter_extent() * 100


def normalize_direction(v: Vec2) -> Vec2:
    """Canonical representative of the line through ``v``: (1, q) or (0, 1)."""
    if v.is_zero():
        raise ZeroDirection("direction vector is zero")
    if v.x.is_zero():
        return Vec2(0, 1)
    return Vec2(1, v.y / v.x)


def _x_at(P, Q, y):
    return P.x + (y - P.y) * (Q.x - P.x) / (Q.y - P.y)


def _levels(t: Surface, cap: QElem):
    polys = t.polygons
    extent = []
    for poly in polys:
        xs = [v.x for v in poly.vertices]
        extent.append(max(xs) - min(xs))
    crossing = []
    for p, poly in enumerate(polys):
        rows = []
        n = len(poly)
        for e in range(n):
            A, B = poly.vertices[e], poly.vertices[(e + 1) % n]
            if A.y == B.y:
                continue
            q, _ = t.partner[(p, e)]
            ty = t.translation(p, e).y
            rows.append((min(A.y, B.y), max(A.y, B.y), q, ty))
        crossing.append(rows)
    levels = [set(v.y for v in poly.vertices) for poly in polys]
    work = [(p, y) for p in range(len(polys)) for y in levels[p]]
    traced = QElem(0)
    while work:
        p, y = work.pop()
        traced = traced + extent[p]
        if traced > cap:
            return None, traced
        for ymin, ymax, q, ty in crossing[p]:
            if ymin < y < ymax:
                y2 = y + ty
                if y2 not in levels[q]:
                    levels[q].add(y2)
                    work.append((q, y2))
    return [sorted(ls) for ls in levels], traced


def _trapezoids(t: Surface, levels):
    traps = []
    for p, poly in enumerate(t.polygons):
        n = len(poly)
        vs = poly.vertices
        edges = []
        for e in range(n):
            A, B = vs[e], vs[(e + 1) % n]
            if A.y != B.y:
                edges.append((e, A, B))
        ys = levels[p]
        for k in range(len(ys) - 1):
            lo, hi = ys[k], ys[k + 1]
            mid = (lo + hi) / 2
            cr = []
            for e, A, B in edges:
                if min(A.y, B.y) <= lo and max(A.y, B.y) >= hi:
                    cr.append((_x_at(A, B, mid), e, A, B))
            cr.sort(key=lambda r: r[0])
            if len(cr) % 2:
                raise SurfaceError(f"polygon {p}: odd number of crossings in a slab")
            for i in range(0, len(cr), 2):
                _, el, Al, Bl = cr[i]
                _, er, Ar, Br = cr[i + 1]
                if not (Bl.y < Al.y and Br.y > Ar.y):
                    raise SurfaceError(f"polygon {p}: inconsistent slab boundary")
                traps.append(
                    _Trap(
                        p, lo, hi, el, er,
                        _x_at(Al, Bl, lo), _x_at(Ar, Br, lo),
                        _x_at(Al, Bl, hi), _x_at(Ar, Br, hi),
                    )
                )
    return traps


class _Tracer:
    """Cylinder structure of a surface in the horizontal direction."""

    def __init__(self, t: Surface, info, levels):
        self.t = t
        self.info = info
        self.traps = _trapezoids(t, levels)
        angles = info.cone_angles
        marked = {c for c, n in enumerate(angles) if n >= 2}
        self.marked = marked or set(range(len(angles)))
        self.by_left = {}
        self.at_lo = {}
        for i, T in enumerate(self.traps):
            self.by_left[(T.poly, T.left, T.lo)] = i
            self.at_lo.setdefault((T.poly, T.lo), []).append(i)
        self.corners_at = {}
        for (p, k), cls in info.corner_class.items():
            v = t.polygons[p].vertices[k]
            self.corners_at.setdefault((p, v.y), []).append((v.x, cls))
        self.top_edges = {}
        for p, poly in enumerate(t.polygons):
            n = len(poly)
            for e in range(n):
                A, B = poly.vertices[e], poly.vertices[(e + 1) % n]
                if A.y == B.y and B.x < A.x:
                    self.top_edges.setdefault(p, []).append((e, A.y, B.x, A.x))
        self._strips()
        self._cylinders()
        self._match()

    # strips -------------------------------------------------------------------

    def _right(self, i):
        T = self.traps[i]
        q, f = self.t.partner[(T.poly, T.right)]
        tau = self.t.translation(T.poly, T.right)
        j = self.by_left.get((q, f, T.lo + tau.y))
        if j is None:
            raise SurfaceError("trapezoid chain does not close up")
        return j, tau

    def _strips(self):
        self.strips = []
        for i0, T0 in enumerate(self.traps):
            if T0.strip >= 0:
                continue
            sid = len(self.strips)
            chain = []
            i, off = i0, -T0.xl_lo
            width = QElem(0)
            while True:
                T = self.traps[i]
                if T.strip >= 0:
                    if i != i0:
                        raise SurfaceError("trapezoid chains overlap")
                    break
                T.strip, T.offset = sid, off
                chain.append(i)
                width = width + (T.xr_lo - T.xl_lo)
                j, tau = self._right(i)
                off = off - tau.x
                i = j
            strip = _Strip(chain, width, T0.hi - T0.lo)
            for i in chain:
                T = self.traps[i]
                for y, x0, x1, marks, points in (
                    (T.hi, T.xl_hi, T.xr_hi, strip.top_marks, strip.top_points),
                    (T.lo, T.xl_lo, T.xr_lo, strip.bottom_marks, None),
                ):
                    for x, cls in self.corners_at.get((T.poly, y), []):
                        if x0 <= x <= x1:
                            pos = (x + T.offset).mod(width)
                            if points is not None and pos not in points:
                                points.append(pos)
                            if cls in self.marked and pos not in marks:
                                marks.append(pos)
            strip.top_marks.sort()
            strip.bottom_marks.sort()
            strip.top_points.sort()
            self.strips.append(strip)

    def frame_to_chart(self, sid, pos, top=True):
        """Trapezoid and chart x of the frame position ``pos`` on a strip boundary."""
        strip = self.strips[sid]
        W = strip.width
        for i in strip.traps:
            T = self.traps[i]
            x0, x1 = (T.xl_hi, T.xr_hi) if top else (T.xl_lo, T.xr_lo)
            rel = (pos - (x0 + T.offset)).mod(W)
            if rel <= x1 - x0:
                return i, x0 + rel
        raise SurfaceError("frame position not found on strip boundary")

    def locate_up(self, p, x, y):
        """Trapezoid whose bottom contains the regular point (x, y) of polygon p."""
        for i in self.at_lo.get((p, y), []):
            T = self.traps[i]
            if T.xl_lo <= x <= T.xr_lo:
                return i, x
        for e, ye, x0, x1 in self.top_edges.get(p, []):
            if ye == y and x0 <= x <= x1:
                q, _ = self.t.partner[(p, e)]
                tau = self.t.translation(p, e)
                x2, y2 = x + tau.x, y + tau.y
                for i in self.at_lo.get((q, y2), []):
                    T = self.traps[i]
                    if T.xl_lo <= x2 <= T.xr_lo:
                        return i, x2
        raise SurfaceError(f"no trapezoid above point ({x}, {y}) of polygon {p}")

    def _above(self, sid, pos):
        """Strip above the top point at frame ``pos`` and the frame position there."""
        i, x = self.frame_to_chart(sid, pos, top=True)
        T = self.traps[i]
        j, x2 = self.locate_up(T.poly, x, T.hi)
        U = self.traps[j]
        return U.strip, (x2 + U.offset).mod(self.strips[U.strip].width)

    def _regular_point(self, points, W, start):
        """A frame position just after ``start`` avoiding every vertex."""
        nxt = None
        for p in points:
            rel = (p - start).mod(W)
            if rel.sign() > 0 and (nxt is None or rel < nxt):
                nxt = rel
        if nxt is None:
            nxt = W
        return (start + nxt / 2).mod(W)

    # cylinders ----------------------------------------------------------------

    def _cylinders(self):
        above = {}
        for sid, strip in enumerate(self.strips):
            if strip.top_marks:
                continue
            start = strip.top_points[0] if strip.top_points else QElem(0)
            pos = self._regular_point(strip.top_points, strip.width, start)
            up, pos_up = self._above(sid, pos)
            above[sid] = (up, pos - pos_up)
        has_below = {up for up, _ in above.values()}
        self.cyls = []
        self.strip_cyl = {}
        for sid in range(len(self.strips)):
            if sid in has_below:
                continue
            chain, shifts = [sid], [QElem(0)]
            height = self.strips[sid].height
            cur = sid
            while cur in above:
                up, delta = above[cur]
                if up == sid:
                    break
                shifts.append(shifts[-1] + delta)
                chain.append(up)
                height = height + self.strips[up].height
                cur = up
            W = self.strips[sid].width
            for s in chain:
                if self.strips[s].width != W:
                    raise SurfaceError("strips of one cylinder have different widths")
            top = self.strips[chain[-1]]
            sh = shifts[-1]
            cyl = _Cyl(
                W,
                height,
                chain,
                shifts,
                sorted(self.strips[sid].bottom_marks),
                sorted((m + sh).mod(W) for m in top.top_marks),
                sorted((m + sh).mod(W) for m in top.top_points),
            )
            for k, s in enumerate(chain):
                self.strip_cyl[s] = (len(self.cyls), shifts[k])
            self.cyls.append(cyl)
        if len(self.strip_cyl) != len(self.strips):
            raise SurfaceError("strips could not be assembled into cylinders")

    @staticmethod
    def _piece_index(marks, W, pos):
        # piece k runs from marks[k] to marks[k + 1] (cyclically)
        best, best_rel = None, None
        for k, m in enumerate(marks):
            rel = (pos - m).mod(W)
            if best_rel is None or rel < best_rel:
                best, best_rel = k, rel
        return best

    def _match(self):
        for c in self.cyls:
            c.bottom_match = [None] * len(c.bottom_marks)
        for ci, c in enumerate(self.cyls):
            c.top_match = []
            top_sid, top_shift = c.strips[-1], c.shifts[-1]
            for k, m in enumerate(c.top_marks):
                pos = self._regular_point(c.top_points, c.width, m)
                up, pos_up = self._above(top_sid, (pos - top_shift).mod(c.width))
                cj, shift_up = self.strip_cyl[up]
                other = self.cyls[cj]
                pos_c = (pos_up + shift_up).mod(other.width)
                kb = self._piece_index(other.bottom_marks, other.width, pos_c)
                c.top_match.append((cj, kb))
                other.bottom_match[kb] = (ci, k)


def _piece_start(marks, k):
    return marks[k]


def _anchors(cyls):
    """Diagram type, cylinder order and (bottom, top) anchors per cylinder."""
    n = len(cyls)
    single = [len(c.top_marks) == 1 and len(c.bottom_marks) == 1 for c in cyls]
    double = [len(c.top_marks) == 2 and len(c.bottom_marks) == 2 for c in cyls]
    if n == 2 and cyls[0].width != cyls[1].width:
        nar, wide = (0, 1) if cyls[0].width < cyls[1].width else (1, 0)
        if single[nar] and double[wide]:
            N, Wd = cyls[nar], cyls[wide]
            _, kb = N.top_match[0]
            _, kt = N.bottom_match[0]
            anchors = {
                nar: (N.bottom_marks[0], N.top_marks[0]),
                wide: (Wd.bottom_marks[kb], Wd.top_marks[kt]),
            }
            return "h2", [nar, wide], anchors
    if n == 3:
        for wide in range(3):
            a, b = [i for i in range(3) if i != wide]
            if cyls[wide].width == cyls[a].width + cyls[b].width:
                if single[a] and single[b] and double[wide]:
                    key = lambda i: (cyls[i].width, cyls[i].height, i)  # noqa: E731
                    c1, c2 = sorted((a, b), key=key)
                    N, Wd = cyls[c1], cyls[wide]
                    cj, kb = N.top_match[0]
                    ck, kt = N.bottom_match[0]
                    if cj == wide and ck == wide:
                        anchors = {
                            c1: (N.bottom_marks[0], N.top_marks[0]),
                            c2: (cyls[c2].bottom_marks[0], cyls[c2].top_marks[0]),
                            wide: (Wd.bottom_marks[kb], Wd.top_marks[kt]),
                        }
                        return "h11", [c1, c2, wide], anchors
    order = sorted(range(n), key=lambda i: (cyls[i].width, cyls[i].height, i))
    anchors = {
        i: (cyls[i].bottom_marks[0] if cyls[i].bottom_marks else QElem(0),
            cyls[i].top_marks[0] if cyls[i].top_marks else QElem(0))
        for i in range(n)
    }
    return "generic", order, anchors


def _twists(kind, order, anchors, cyls, slope):
    raw = []
    for i in order:
        c = cyls[i]
        b, t = anchors[i]
        raw.append((t - slope * c.height - b).mod(c.width))
    if kind in ("h2", "h11"):
        w_other = cyls[order[1]].width
        raw[0] = (raw[0] - w_other).mod(cyls[order[0]].width)
    return raw


def decompose(s: Surface, v: Vec2, cap=None):
    """Cylinder decomposition of ``s`` in direction ``v``.

    Returns a :class:`CylinderDecomposition`, or :class:`Inconclusive` when the
    traced length exceeds ``cap`` before all leaves through vertices close.
    """
    info = validate(s)
    if v.is_zero():
        raise ZeroDirection("direction vector is zero")
    g = direction_normalizer(v)
    t = apply_gl2(g, s)
    if cap is None:
        cap = default_cap(t)
    cap = as_qelem(cap)
    levels, traced = _levels(t, cap)
    if levels is None:
        return Inconclusive(v, cap, traced)
    tr = _Tracer(t, info, levels)
    kind, order, anchors = _anchors(tr.cyls)
    twists = _twists(kind, order, anchors, tr.cyls, QElem(0))
    cylinders = [
        CylinderData(tr.cyls[i].width, tr.cyls[i].height, tw) for i, tw in zip(order, twists)
    ]
    ginv = mat_inv(g)
    return CylinderDecomposition(
        v,
        g,
        cylinders,
        mat_apply(ginv, Vec2(0, 1)),
        kind,
        tr.cyls,
        order,
        tr,
    )


def measure_twists(dec: CylinderDecomposition, w: Vec2) -> list:
    """Twists of every cylinder of ``dec`` measured along direction ``w``."""
    wn = mat_apply(dec.normalizer, w)
    if wn.y.is_zero():
        raise ParallelDirections("twist direction is parallel to the cylinders")
    slope = wn.x / wn.y
    kind, order, anchors = _anchors(dec._cyls)
    return _twists(kind, order, anchors, dec._cyls, slope)


def homological_directions(s: Surface, coeff_bound: int) -> list:
    """Distinct directions of nonzero sums of lattice generators with |n_i| <= bound.

    Directions are normalised to (1, q) or (0, 1) and returned sorted by the
    size of q and then by value.
    """
    import itertools

    if coeff_bound <= 0:
        return []
    gens = lattice_basis(s)
    seen = set()
    for coeffs in itertools.product(range(-coeff_bound, coeff_bound + 1), repeat=len(gens)):
        if not any(coeffs):
            continue
        vx, vy = QElem(0), QElem(0)
        for n, g in zip(coeffs, gens):
            if n:
                vx = vx + g.x * n
                vy = vy + g.y * n
        if vx.is_zero() and vy.is_zero():
            continue
        seen.add(normalize_direction(Vec2(vx, vy)))
    return sorted(seen, key=direction_key)


def _height(q: QElem) -> int:
    return max(
        abs(q.a.numerator), q.a.denominator, abs(q.b.numerator), q.b.denominator
    )


def direction_key(v: Vec2):
    """Deterministic order: horizontal, vertical, then by arithmetic size and value."""
    if v.x.is_zero():
        return (1, 0, 0, 0)
    if v.y.is_zero():
        return (0, 0, 0, 0)
    q = v.y
    return (2, _height(q), float(q), (q.a, q.b))
