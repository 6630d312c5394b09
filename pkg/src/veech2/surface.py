"""Translation surfaces as planar polygons glued by translations."""

from __future__ import annotations

import itertools
import math
from collections import deque
from dataclasses import dataclass, field

from gmpy2 import mpq

from .qfield import FieldMismatch, QElem, as_qelem

__all__ = [
    "Vec2",
    "Polygon",
    "Surface",
    "StratumInfo",
    "Quadraticity",
    "SurfaceError",
    "InvalidPolygon",
    "NonParallelGluing",
    "AngleNotMultipleOf2Pi",
    "Disconnected",
    "UnmatchedEdge",
    "SingularMatrix",
    "validate",
    "holonomy_lattice",
    "lattice_basis",
    "is_quadratic",
    "apply_gl2",
    "area",
    "subdivide",
]


class SurfaceError(ValueError):
    pass


class InvalidPolygon(SurfaceError):
    pass


class NonParallelGluing(SurfaceError):
    pass


class AngleNotMultipleOf2Pi(SurfaceError):
    pass


class Disconnected(SurfaceError):
    pass


class UnmatchedEdge(SurfaceError):
    pass


class SingularMatrix(SurfaceError):
    pass


class Vec2:
    __slots__ = ("x", "y")

    def __init__(self, x, y):
        x, y = as_qelem(x), as_qelem(y)
        x._join(y)
        object.__setattr__(self, "x", x)
        object.__setattr__(self, "y", y)

    def __setattr__(self, name, value):
        raise AttributeError("Vec2 is immutable")

    def __iter__(self):
        yield self.x
        yield self.y

    def __add__(self, o: "Vec2") -> "Vec2":
        return Vec2(self.x + o.x, self.y + o.y)

    def __sub__(self, o: "Vec2") -> "Vec2":
        return Vec2(self.x - o.x, self.y - o.y)

    def __neg__(self) -> "Vec2":
        return Vec2(-self.x, -self.y)

    def __mul__(self, r) -> "Vec2":
        return Vec2(self.x * r, self.y * r)

    __rmul__ = __mul__

    def __eq__(self, o):
        return isinstance(o, Vec2) and self.x == o.x and self.y == o.y

    def __hash__(self):
        return hash((self.x, self.y))

    def __repr__(self):
        return f"Vec2({self.x}, {self.y})"

    def is_zero(self) -> bool:
        return self.x.is_zero() and self.y.is_zero()

    @property
    def d(self):
        return self.x._join(self.y)


def cross(u: Vec2, v: Vec2) -> QElem:
    return u.x * v.y - u.y * v.x


def dot(u: Vec2, v: Vec2) -> QElem:
    return u.x * v.x + u.y * v.y


def _half(u: Vec2) -> int:
    # 0 for directions with angle in [0, pi), 1 for [pi, 2pi)
    sy = u.y.sign()
    if sy > 0 or (sy == 0 and u.x.sign() > 0):
        return 0
    return 1


def _angle_before(u: Vec2, v: Vec2) -> bool:
    """Whether arg(u) < arg(v) with arguments taken in [0, 2pi)."""
    hu, hv = _half(u), _half(v)
    if hu != hv:
        return hu < hv
    return cross(u, v).sign() > 0


class Polygon:
    __slots__ = ("vertices",)

    def __init__(self, vertices):
        vs = tuple(v if isinstance(v, Vec2) else Vec2(*v) for v in vertices)
        object.__setattr__(self, "vertices", vs)

    def __setattr__(self, name, value):
        raise AttributeError("Polygon is immutable")

    def __len__(self):
        return len(self.vertices)

    def __eq__(self, o):
        return isinstance(o, Polygon) and self.vertices == o.vertices

    def __hash__(self):
        return hash(self.vertices)

    def __repr__(self):
        return f"Polygon({list(self.vertices)!r})"

    def edge(self, i: int) -> Vec2:
        n = len(self.vertices)
        return self.vertices[(i + 1) % n] - self.vertices[i]

    def edges(self):
        return [self.edge(i) for i in range(len(self.vertices))]

    def signed_area(self) -> QElem:
        s = QElem(0)
        vs = self.vertices
        for i in range(len(vs)):
            s = s + cross(vs[i], vs[(i + 1) % len(vs)])
        return s / 2

    def translate(self, t: Vec2) -> "Polygon":
        return Polygon([v + t for v in self.vertices])

    def check(self, index: int = 0):
        vs = self.vertices
        n = len(vs)
        if n < 3:
            raise InvalidPolygon(f"polygon {index} has fewer than 3 vertices")
        for i in range(n):
            if self.edge(i).is_zero():
                raise InvalidPolygon(f"polygon {index} has a degenerate edge {i}")
        if self.signed_area().sign() <= 0:
            raise InvalidPolygon(f"polygon {index} is not counterclockwise with positive area")
        for i in range(n):
            for j in range(i + 1, n):
                if j == i + 1 or (i == 0 and j == n - 1):
                    # adjacent edges may only meet at their common vertex
                    a, b = (i, j) if j == i + 1 else (j, i)
                    e1, e2 = self.edge(a), self.edge(b)
                    if cross(e1, e2).sign() == 0 and dot(e1, e2).sign() < 0:
                        raise InvalidPolygon(f"polygon {index} folds back at vertex {b}")
                    continue
                if _segments_meet(vs[i], vs[(i + 1) % n], vs[j], vs[(j + 1) % n]):
                    raise InvalidPolygon(f"polygon {index} is not simple (edges {i}, {j})")


def _orient(a: Vec2, b: Vec2, c: Vec2) -> int:
    return cross(b - a, c - a).sign()


def _on_segment(a: Vec2, b: Vec2, p: Vec2) -> bool:
    return (min(a.x, b.x) <= p.x <= max(a.x, b.x)) and (min(a.y, b.y) <= p.y <= max(a.y, b.y))


def _segments_meet(p1, p2, q1, q2) -> bool:
    o1, o2 = _orient(p1, p2, q1), _orient(p1, p2, q2)
    o3, o4 = _orient(q1, q2, p1), _orient(q1, q2, p2)
    if o1 * o2 < 0 and o3 * o4 < 0:
        return True
    if o1 == 0 and _on_segment(p1, p2, q1):
        return True
    if o2 == 0 and _on_segment(p1, p2, q2):
        return True
    if o3 == 0 and _on_segment(q1, q2, p1):
        return True
    if o4 == 0 and _on_segment(q1, q2, p2):
        return True
    return False


@dataclass(frozen=True)
class StratumInfo:
    genus: int
    zero_orders: tuple[int, ...]
    # cone angle of each vertex class, as a multiple of 2*pi
    cone_angles: tuple[int, ...] = field(default=(), compare=False)
    # vertex class of each polygon corner, keyed (polygon, vertex)
    corner_class: dict = field(default_factory=dict, compare=False, repr=False)

    @property
    def stratum(self) -> str:
        return "H(" + (",".join(str(k) for k in self.zero_orders) or "0") + ")"


class Surface:
    """Polygons with a perfect matching of their edges by translations.

    ``gluings`` holds ``(pi, ei, pj, ej)``: edge ``ei`` of polygon ``pi`` (from
    vertex ``ei`` to ``ei + 1``) is glued to edge ``ej`` of polygon ``pj``.
    """

    def __init__(self, polygons, gluings, d: int | None = None):
        polys = tuple(p if isinstance(p, Polygon) else Polygon(p) for p in polygons)
        pairs = []
        for g in gluings:
            pi, ei, pj, ej = (int(k) for k in g)
            a, b = (pi, ei), (pj, ej)
            pairs.append(a + b if a <= b else b + a)
        self.polygons = polys
        self.gluings = tuple(sorted(set(pairs)))
        self.d = d
        if d is None:
            for p in polys:
                for v in p.vertices:
                    vd = v.d
                    if vd is not None and (v.x.b != 0 or v.y.b != 0):
                        self.d = vd
                        break
        self._partner = None
        self._info = None

    def __eq__(self, o):
        return (
            isinstance(o, Surface)
            and self.polygons == o.polygons
            and self.gluings == o.gluings
            and self.d == o.d
        )

    def __hash__(self):
        return hash((self.polygons, self.gluings, self.d))

    def __repr__(self):
        return f"Surface(d={self.d}, polygons={len(self.polygons)}, gluings={len(self.gluings)})"

    @property
    def partner(self) -> dict:
        if self._partner is None:
            m = {}
            for pi, ei, pj, ej in self.gluings:
                for a, b in (((pi, ei), (pj, ej)), ((pj, ej), (pi, ei))):
                    if a in m:
                        raise UnmatchedEdge(f"edge {a} is glued more than once")
                    m[a] = b
            self._partner = m
        return self._partner

    def edge_vector(self, p: int, e: int) -> Vec2:
        return self.polygons[p].edge(e)

    def translation(self, p: int, e: int) -> Vec2:
        """Translation carrying edge (p, e) onto its glued partner."""
        q, f = self.partner[(p, e)]
        # start of (p, e) is identified with the end of (q, f)
        P, Q = self.polygons[p], self.polygons[q]
        return Q.vertices[(f + 1) % len(Q)] - P.vertices[e]

    def corners(self):
        for p, poly in enumerate(self.polygons):
            for k in range(len(poly)):
                yield (p, k)

    def perimeter_extent(self) -> QElem:
        """Sum over polygons of their horizontal extent."""
        s = QElem(0)
        for poly in self.polygons:
            xs = [v.x for v in poly.vertices]
            s = s + (max(xs) - min(xs))
        return s


def _union_find(items):
    parent = {x: x for x in items}

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    def union(a, b):
        ra, rb = find(a), find(b)
        if ra != rb:
            if rb < ra:
                ra, rb = rb, ra
            parent[rb] = ra

    return find, union


def validate(s: Surface) -> StratumInfo:
    """Check every surface invariant and compute the stratum."""
    if s._info is not None:
        return s._info
    if not s.polygons:
        raise InvalidPolygon("surface has no polygons")
    for i, poly in enumerate(s.polygons):
        poly.check(i)
        for v in poly.vertices:
            try:
                d = v.d
            except FieldMismatch as exc:
                raise SurfaceError(f"polygon {i}: {exc}") from None
            if s.d is not None and d is not None and d != s.d and (v.x.b != 0 or v.y.b != 0):
                raise SurfaceError(f"polygon {i} has coordinates outside Q(sqrt {s.d})")
    partner = s.partner
    for p, poly in enumerate(s.polygons):
        for e in range(len(poly)):
            if (p, e) not in partner:
                raise UnmatchedEdge(f"edge {e} of polygon {p} is not glued")
    for key in partner:
        p, e = key
        if p >= len(s.polygons) or e >= len(s.polygons[p]):
            raise UnmatchedEdge(f"gluing refers to missing edge {key}")
    for pi, ei, pj, ej in s.gluings:
        if (pi, ei) == (pj, ej):
            raise NonParallelGluing(f"edge {ei} of polygon {pi} is glued to itself")
        u, w = s.edge_vector(pi, ei), s.edge_vector(pj, ej)
        if not (u + w).is_zero():
            raise NonParallelGluing(
                f"edges ({pi},{ei}) and ({pj},{ej}) are not opposite translates: {u} vs {w}"
            )

    # connectivity
    find, union = _union_find(range(len(s.polygons)))
    for pi, _, pj, _ in s.gluings:
        union(pi, pj)
    roots = {find(p) for p in range(len(s.polygons))}
    if len(roots) > 1:
        raise Disconnected(f"surface has {len(roots)} connected components")

    # vertex classes: start of (p, e) ~ end of its partner
    corners = list(s.corners())
    cfind, cunion = _union_find(corners)
    for (p, e), (q, f) in partner.items():
        nq = len(s.polygons[q])
        cunion((p, e), (q, (f + 1) % nq))
    classes = {}
    for c in corners:
        classes.setdefault(cfind(c), []).append(c)
    class_ids = {root: i for i, root in enumerate(sorted(classes))}
    corner_class = {c: class_ids[cfind(c)] for c in corners}

    # cone angles by counting how often the sweep around each vertex passes
    # the positive horizontal direction
    turns = [0] * len(classes)
    for p, k in corners:
        poly = s.polygons[p]
        n = len(poly)
        out_dir = poly.edge(k)
        back_dir = -poly.edge((k - 1) % n)
        if not _angle_before(out_dir, back_dir):
            turns[corner_class[(p, k)]] += 1
    for cls, n in enumerate(turns):
        if n < 1:
            raise AngleNotMultipleOf2Pi(f"vertex class {cls} has total angle {n} * 2pi")
    V, E, F = len(classes), len(s.gluings), len(s.polygons)
    chi = V - E + F
    if chi % 2:
        raise SurfaceError(f"odd Euler characteristic {chi}")
    genus = (2 - chi) // 2
    orders = tuple(sorted((n - 1 for n in turns if n > 1), reverse=True))
    if genus >= 1 and sum(orders) != 2 * genus - 2:
        raise AngleNotMultipleOf2Pi(
            f"cone angles {turns} are inconsistent with genus {genus}"
        )
    info = StratumInfo(genus, orders, tuple(turns), corner_class)
    s._info = info
    return info


def holonomy_lattice(s: Surface) -> list[Vec2]:
    """Holonomies of the chord loops of a spanning tree of the 1-skeleton."""
    info = validate(s)
    cc = info.corner_class
    nclass = len(info.cone_angles)
    adj = {c: [] for c in range(nclass)}
    edges = []
    for pi, ei, pj, ej in s.gluings:
        poly = s.polygons[pi]
        a = cc[(pi, ei)]
        b = cc[(pi, (ei + 1) % len(poly))]
        vec = poly.edge(ei)
        idx = len(edges)
        edges.append((a, b, vec))
        adj[a].append((idx, b, vec))
        adj[b].append((idx, a, -vec))
    pos = {0: Vec2(0, 0)}
    tree = set()
    queue = deque([0])
    while queue:
        c = queue.popleft()
        for idx, other, vec in adj[c]:
            if other not in pos:
                pos[other] = pos[c] + vec
                tree.add(idx)
                queue.append(other)
    gens = []
    for idx, (a, b, vec) in enumerate(edges):
        if idx in tree:
            continue
        h = pos[a] + vec - pos[b]
        if not h.is_zero():
            gens.append(h)
    return gens


def _coords4(v: Vec2) -> list:
    return [v.x.a, v.x.b, v.y.a, v.y.b]


def _rank(rows) -> int:
    m = [list(r) for r in rows]
    rank = 0
    ncols = len(m[0]) if m else 0
    for col in range(ncols):
        piv = next((i for i in range(rank, len(m)) if m[i][col] != 0), None)
        if piv is None:
            continue
        m[rank], m[piv] = m[piv], m[rank]
        for i in range(len(m)):
            if i != rank and m[i][col] != 0:
                f = m[i][col] / m[rank][col]
                m[i] = [a - f * b for a, b in zip(m[i], m[rank])]
        rank += 1
    return rank


def _hnf_rows(rows: list[list[int]]) -> list[list[int]]:
    """Row-echelon Z-basis of the lattice spanned by integer rows."""
    m = [list(r) for r in rows if any(r)]
    basis = []
    ncols = len(rows[0]) if rows else 0
    for col in range(ncols):
        live = [r for r in m if r[col] != 0]
        rest = [r for r in m if r[col] == 0]
        while len(live) > 1:
            live.sort(key=lambda r: abs(r[col]))
            pivot = live[0]
            nxt = [pivot]
            for r in live[1:]:
                q = r[col] // pivot[col]
                r = [a - q * b for a, b in zip(r, pivot)]
                if r[col] != 0:
                    nxt.append(r)
                elif any(r):
                    rest.append(r)
            live = nxt
        if live:
            basis.append(live[0])
        m = rest
    return basis


def lattice_basis(s: Surface) -> list[Vec2]:
    """A Z-basis of p(H_1(S, Z)) extracted from the chord-loop generators."""
    gens = holonomy_lattice(s)
    if not gens:
        return []
    d = s.d
    rows = []
    for g in gens:
        rows.append([c for c in _coords4(g)])
    den = 1
    for r in rows:
        for c in r:
            den = den * c.denominator // math.gcd(den, c.denominator)
    irows = [[int(c * den) for c in r] for r in rows]
    basis = _hnf_rows(irows)
    out = []
    for r in basis:
        x = QElem(mpq(r[0], den), mpq(r[1], den), d if r[1] else None)
        y = QElem(mpq(r[2], den), mpq(r[3], den), d if r[3] else None)
        out.append(Vec2(x, y))
    return out


@dataclass(frozen=True)
class Quadraticity:
    kind: str  # "rational" | "quadratic" | "not_quadratic"
    d: int | None = None
    rank: int = 0

    def __str__(self):
        if self.kind == "quadratic":
            return f"Quadratic({self.d})"
        return {"rational": "Rational", "not_quadratic": "NotQuadratic"}[self.kind]


def is_quadratic(s: Surface) -> Quadraticity:
    """Rational if the holonomy module has Q-rank <= 2, else Quadratic(d)."""
    gens = holonomy_lattice(s)
    r = _rank([_coords4(g) for g in gens]) if gens else 0
    if r <= 2 or s.d is None:
        return Quadraticity("rational", None, r)
    return Quadraticity("quadratic", s.d, r)


def _mat(g):
    (a, b), (c, d) = g
    return (as_qelem(a), as_qelem(b)), (as_qelem(c), as_qelem(d))


def mat_apply(g, v: Vec2) -> Vec2:
    (a, b), (c, d) = g
    return Vec2(a * v.x + b * v.y, c * v.x + d * v.y)


def mat_det(g) -> QElem:
    (a, b), (c, d) = _mat(g)
    return a * d - b * c


def mat_inv(g):
    (a, b), (c, d) = _mat(g)
    det = a * d - b * c
    if det.is_zero():
        raise SingularMatrix("matrix is singular")
    return ((d / det, -b / det), (-c / det, a / det))


def mat_mul(g, h):
    (a, b), (c, d) = _mat(g)
    (e, f), (k, m) = _mat(h)
    return ((a * e + b * k, a * f + b * m), (c * e + d * k, c * f + d * m))


def apply_gl2(g, s: Surface) -> Surface:
    """The surface gS = gP_1 u ... u gP_n with the same gluing pattern."""
    g = _mat(g)
    det = mat_det(g)
    if det.is_zero():
        raise SingularMatrix("matrix is singular")
    d = s.d
    for row in g:
        for x in row:
            if x.b != 0:
                d = x.d if d is None else d
                if x.d != d:
                    raise FieldMismatch("matrix entries outside the surface field")
    if det.sign() > 0:
        polys = [Polygon([mat_apply(g, v) for v in p.vertices]) for p in s.polygons]
        return Surface(polys, s.gluings, d)
    # orientation reversing: reverse each polygon and renumber edges
    polys, emap = [], []
    for p in s.polygons:
        n = len(p)
        polys.append(Polygon([mat_apply(g, v) for v in reversed(p.vertices)]))
        emap.append({i: (n - 2 - i) % n for i in range(n)})
    glu = [(pi, emap[pi][ei], pj, emap[pj][ej]) for pi, ei, pj, ej in s.gluings]
    return Surface(polys, glu, d)


def area(s: Surface) -> QElem:
    total = QElem(0)
    for p in s.polygons:
        total = total + p.signed_area()
    return total


def subdivide(s: Surface, p: int, i: int, j: int) -> Surface:
    """Cut polygon ``p`` along the diagonal from vertex ``i`` to vertex ``j``.

    The diagonal must lie inside the polygon; the two halves are glued along it.
    """
    poly = s.polygons[p]
    n = len(poly)
    i, j = sorted((i % n, j % n))
    if j - i < 2 or (i == 0 and j == n - 1):
        raise InvalidPolygon("diagonal joins adjacent vertices")
    vs = poly.vertices
    first = Polygon(vs[i : j + 1])
    second = Polygon(vs[j:] + vs[: i + 1])
    first.check(p)
    second.check(p)
    new_index = len(s.polygons)
    # old edge k of p -> (polygon, edge) in the split
    def remap(k):
        if i <= k < j:
            return (p, k - i)
        if k >= j:
            return (new_index, k - j)
        return (new_index, n - j + k)

    polys = list(s.polygons)
    polys[p] = first
    polys.append(second)
    glu = []
    for pi, ei, pj, ej in s.gluings:
        a = remap(ei) if pi == p else (pi, ei)
        b = remap(ej) if pj == p else (pj, ej)
        glu.append(a + b)
    # diagonal: last edge of first (j -> i), last edge of second (i -> j)
    glu.append((p, j - i, new_index, n - j + i))
    return Surface(polys, glu, s.d)


def corner_direction_pairs(s: Surface):
    """For tests: (outgoing, incoming-reversed) edge directions at each corner."""
    for p, poly in enumerate(s.polygons):
        n = len(poly)
        for k in range(n):
            yield (p, k), poly.edge(k), -poly.edge((k - 1) % n)


def iter_products(r: int, bound: int):
    return itertools.product(range(-bound, bound + 1), repeat=r)
