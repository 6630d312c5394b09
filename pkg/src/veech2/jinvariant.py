"""The J-invariant of a translation surface and its directional projections."""

from __future__ import annotations

from dataclasses import dataclass

from .qfield import QElem
from .surface import Polygon, SurfaceError, Surface, Vec2, apply_gl2, cross, validate
from .tensor import TensorC4, WedgeQQ, tensor, wedge

__all__ = [
    "JInvariant",
    "ZeroDirection",
    "DependentDirections",
    "j_polygon",
    "j_surface",
    "j_vv",
    "j_vw",
    "j_yx",
    "j_from_homology",
    "wedge_vectors",
    "direction_normalizer",
]


class ZeroDirection(SurfaceError):
    pass


class DependentDirections(SurfaceError):
    pass


@dataclass(frozen=True)
class JInvariant:
    jxx: WedgeQQ = WedgeQQ()
    jyy: WedgeQQ = WedgeQQ()
    jxy: TensorC4 = TensorC4()

    def __add__(self, o: "JInvariant") -> "JInvariant":
        return JInvariant(self.jxx + o.jxx, self.jyy + o.jyy, self.jxy + o.jxy)

    def __mul__(self, r) -> "JInvariant":
        return JInvariant(self.jxx * r, self.jyy * r, self.jxy * r)

    __rmul__ = __mul__

    def coords(self) -> tuple:
        """The six rational coordinates (jxx, jyy, c1, c2, c3, c4)."""
        return (self.jxx.c, self.jyy.c) + self.jxy.coords


def wedge_vectors(u: Vec2, v: Vec2) -> JInvariant:
    """Projections of ``u ^ v`` in R^2 ^_Q R^2."""
    a, b = u
    c, d = v
    return JInvariant(wedge(a, c), wedge(b, d), tensor(a, d) - tensor(c, b))


def j_polygon(p: Polygon) -> JInvariant:
    vs = p.vertices
    n = len(vs)
    total = JInvariant()
    for k in range(n):
        total = total + wedge_vectors(vs[k], vs[(k + 1) % n])
    return total


def j_surface(s: Surface) -> JInvariant:
    validate(s)
    total = JInvariant()
    for p in s.polygons:
        total = total + j_polygon(p)
    return total


def j_yx(s: Surface) -> TensorC4:
    """J_yx((a,b) ^ (c,d)) = b (x) c - d (x) a, summed over polygon wedges."""
    total = TensorC4()
    for p in s.polygons:
        vs = p.vertices
        n = len(vs)
        for k in range(n):
            (a, b), (c, d) = vs[k], vs[(k + 1) % n]
            total = total + tensor(b, c) - tensor(d, a)
    return total


def _jyy_polygon_sheared(p: Polygon, q: QElem) -> WedgeQQ:
    # jyy after (x, y) -> (x, y - q x), without building the sheared polygon
    vs = p.vertices
    n = len(vs)
    ys = [v.y - q * v.x for v in vs]
    total = WedgeQQ()
    for k in range(n):
        total = total + wedge(ys[k], ys[(k + 1) % n])
    return total


def direction_normalizer(v: Vec2):
    """Det-1 matrix sending the line of ``v`` to the horizontal."""
    if v.is_zero():
        raise ZeroDirection("direction vector is zero")
    if v.x.is_zero():
        return ((QElem(0), QElem(1)), (QElem(-1), QElem(0)))
    q = v.y / v.x
    return ((QElem(1), QElem(0)), (-q, QElem(1)))


def j_vv(s: Surface, v: Vec2) -> WedgeQQ:
    """J_vv(S) = J_yy(gS) for g in SL(2) with g(1, q) = (1, 0); J_xx if v is vertical."""
    validate(s)
    if v.is_zero():
        raise ZeroDirection("direction vector is zero")
    if v.x.is_zero():
        total = WedgeQQ()
        for p in s.polygons:
            vs = p.vertices
            for k in range(len(vs)):
                total = total + wedge(vs[k].x, vs[(k + 1) % len(vs)].x)
        return total
    q = v.y / v.x
    total = WedgeQQ()
    for p in s.polygons:
        total = total + _jyy_polygon_sheared(p, q)
    return total


def j_vw(s: Surface, v: Vec2, w: Vec2) -> TensorC4:
    """J_vw(S) = J_xy(gS) with g v' = (1,0), g w = (0,1), v' = v / det(v, w).

    For v vertical and w horizontal the J_yx projection is used instead.
    """
    validate(s)
    det = cross(v, w)
    if det.is_zero():
        raise DependentDirections("directions are linearly dependent")
    if v.x.is_zero() and w.y.is_zero():
        return j_yx(s)
    vp = v * (1 / det)
    # g = [v' w']^{-1}; det [v' w'] = 1
    g = ((w.y, -w.x), (-vp.y, vp.x))
    return j_surface(apply_gl2(g, s)).jxy


def j_from_homology(basis) -> JInvariant:
    """J = 2 * sum_i p(a_i) ^ p(b_i) over a symplectic basis."""
    total = JInvariant()
    for a, b in basis:
        total = total + wedge_vectors(a, b)
    return total * 2
