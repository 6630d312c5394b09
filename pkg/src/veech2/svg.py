"""SVG pictures of surfaces.

Coordinates are converted to floats here and only here; nothing computed in
this module flows back into exact code.
"""

from __future__ import annotations

from xml.sax.saxutils import escape

from .surface import Surface, Vec2, mat_apply, mat_inv

PALETTE = [
    "#1f77b4", "#ff7f0e", "#2ca02c", "#d62728", "#9467bd",
    "#8c564b", "#e377c2", "#7f7f7f", "#bcbd22", "#17becf",
]

_GAP = 0.4


def _layout(s: Surface):
    """Float vertices per polygon, placed left to right."""
    out = []
    x0 = 0.0
    for poly in s.polygons:
        pts = [(float(v.x), float(v.y)) for v in poly.vertices]
        xmin = min(p[0] for p in pts)
        xmax = max(p[0] for p in pts)
        pts = [(x - xmin + x0, y) for x, y in pts]
        out.append(pts)
        x0 += xmax - xmin + _GAP
    return out


def _fmt(v: float) -> str:
    return f"{v:.6f}".rstrip("0").rstrip(".")


def _bands(dec):
    """Float trapezoids of every cylinder and one core segment list per cylinder."""
    bands, cores = [], []
    tr = dec._tracer
    if tr is None:
        return bands, cores
    ginv = mat_inv(dec.normalizer)

    def back(x, y):
        p = mat_apply(ginv, Vec2(x, y))
        return float(p.x), float(p.y)

    for ci, cyl in enumerate(dec._cyls):
        mid = cyl.strips[len(cyl.strips) // 2]
        for sid in cyl.strips:
            for i in tr.strips[sid].traps:
                T = tr.traps[i]
                quad = [back(x, y) for x, y in
                        ((T.xl_lo, T.lo), (T.xr_lo, T.lo), (T.xr_hi, T.hi), (T.xl_hi, T.hi))]
                bands.append((ci, T.poly, quad))
                if sid == mid:
                    y = (T.lo + T.hi) / 2
                    xl = (T.xl_lo + T.xl_hi) / 2
                    xr = (T.xr_lo + T.xr_hi) / 2
                    cores.append((ci, T.poly, back(xl, y), back(xr, y)))
    return bands, cores


def export_svg(s: Surface, decomposition=None, scale: float = 100.0) -> str:
    polys = _layout(s)
    shift = []
    for poly, pts in zip(s.polygons, polys):
        shift.append(pts[0][0] - float(poly.vertices[0].x))
    xs = [x for pts in polys for x, _ in pts]
    ys = [y for pts in polys for _, y in pts]
    pad = 0.3
    xmin, xmax = min(xs) - pad, max(xs) + pad
    ymin, ymax = min(ys) - pad, max(ys) + pad
    width, height = (xmax - xmin) * scale, (ymax - ymin) * scale

    def pt(x, y):
        return _fmt((x - xmin) * scale), _fmt((ymax - y) * scale)

    lines = [
        '<?xml version="1.0" encoding="UTF-8"?>',
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{_fmt(width)}" '
        f'height="{_fmt(height)}" viewBox="0 0 {_fmt(width)} {_fmt(height)}">',
    ]
    if decomposition is not None:
        lines.append('<g class="cylinders">')
        bands, cores = _bands(decomposition)
        for ci, p, quad in bands:
            color = PALETTE[ci % len(PALETTE)]
            d = " ".join(",".join(pt(x + shift[p], y)) for x, y in quad)
            lines.append(f'<polygon class="cylinder c{ci}" points="{d}" fill="{color}" '
                         'fill-opacity="0.25" stroke="none"/>')
        for ci, p, (x1, y1), (x2, y2) in cores:
            a, b = pt(x1 + shift[p], y1), pt(x2 + shift[p], y2)
            lines.append(f'<line class="core c{ci}" x1="{a[0]}" y1="{a[1]}" x2="{b[0]}" '
                         f'y2="{b[1]}" stroke="black" stroke-dasharray="4,3"/>')
        lines.append("</g>")
    lines.append('<g class="polygons">')
    for k, pts in enumerate(polys):
        d = "M " + " L ".join(",".join(pt(x, y)) for x, y in pts) + " Z"
        lines.append(f'<path class="polygon" id="p{k}" d="{d}" fill="none" stroke="black" '
                     'stroke-width="1.5"/>')
    lines.append("</g>")
    lines.append('<g class="gluings">')
    for label, (pi, ei, pj, ej) in enumerate(s.gluings):
        color = PALETTE[label % len(PALETTE)]
        for p, e in ((pi, ei), (pj, ej)):
            pts = polys[p]
            (x1, y1), (x2, y2) = pts[e], pts[(e + 1) % len(pts)]
            a, b = pt(x1, y1), pt(x2, y2)
            lines.append(f'<line class="edge g{label}" x1="{a[0]}" y1="{a[1]}" '
                         f'x2="{b[0]}" y2="{b[1]}" stroke="{color}" stroke-width="3"/>')
            mx, my = pt((x1 + x2) / 2, (y1 + y2) / 2)
            lines.append(f'<text class="label g{label}" x="{mx}" y="{my}" font-size="12" '
                         f'fill="{color}">{escape(str(label))}</text>')
    lines.append("</g>")
    lines.append("</svg>")
    return "\n".join(lines) + "\n"
