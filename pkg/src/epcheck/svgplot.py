"""SVG rendering of rank-2 apartments: alcoves with height labels, shaded
chamber-based sectors, and certified/exceptional overlays."""

import math
from fractions import Fraction

SCALE = 120.0
SECTOR_FILLS = ["#cfe8ff", "#ffe3c2", "#d8f5d0", "#f3d1f0", "#fff2b3",
                "#d9d2f0", "#c2eee7", "#f5c9c9", "#e0e0e0", "#d0ecf5",
                "#ead8c0", "#cde0c0"]


def _embedding(rs):
    """Euclidean vectors of the fundamental coweights, from the Gram matrix."""
    b = [[float(x) for x in row] for row in rs.gram]
    a1 = (math.sqrt(b[0][0]), 0.0)
    a2x = b[0][1] / a1[0]
    a2 = (a2x, math.sqrt(max(b[1][1] - a2x * a2x, 0.0)))
    det = a1[0] * a2[1] - a1[1] * a2x
    l1 = (a2[1] / det, -a2x / det)
    l2 = (-a1[1] / det, a1[0] / det)
    return l1, l2


def _xy(l1, l2, point):
    x1, x2 = float(point[0]), float(point[1])
    return (x1 * l1[0] + x2 * l2[0], -(x1 * l1[1] + x2 * l2[1]))


def render_apartment(ap, c0, radius, show_heights=True, sector_shading=False,
                     overlay=None, title=""):
    """Return an SVG document for Ball(c0, radius) of a rank-2 apartment.

    overlay: optional dict chamber-key -> "certified" | "exceptional".
    """
    rs = ap.rs
    if rs.rank != 2:
        raise ValueError("SVG rendering is implemented for rank-2 types only")
    l1, l2 = _embedding(rs)
    shells = ap.shells(c0, radius)
    systems = ap.positive_systems() if sector_shading else []
    polys = []
    xs, ys = [], []
    for depth, shell in enumerate(shells):
        for ch in shell:
            pts = [_xy(l1, l2, v) for v in ch.vertices]
            xs += [p[0] for p in pts]
            ys += [p[1] for p in pts]
            fill = "#ffffff"
            if sector_shading:
                members = [i for i, ps in enumerate(systems)
                           if ap.sector_membership(c0, ps, ch)]
                if members:
                    fill = SECTOR_FILLS[members[0] % len(SECTOR_FILLS)]
            if overlay is not None:
                mark = overlay.get(ch.key)
                if mark == "certified":
                    fill = "#bfe6bf"
                elif mark == "exceptional":
                    fill = "#f2b8b8"
            bx, by = _xy(l1, l2, ch.barycenter)
            polys.append((pts, fill, depth, (bx, by), ch is c0 or ch == c0))
    pad = 0.25 * SCALE
    minx, maxx = min(xs) * SCALE - pad, max(xs) * SCALE + pad
    miny, maxy = min(ys) * SCALE - pad, max(ys) * SCALE + pad
    out = []
    out.append(
        f'<svg xmlns="http://www.w3.org/2000/svg" viewBox="{minx:.2f} {miny:.2f} '
        f'{maxx - minx:.2f} {maxy - miny:.2f}">'
    )
    if title:
        out.append(f'<title>{title}</title>')
    for pts, fill, depth, (bx, by), is_base in sorted(
            polys, key=lambda p: (p[2], p[3])):
        path = " ".join(f"{x * SCALE:.2f},{y * SCALE:.2f}" for x, y in pts)
        stroke = "#d04040" if is_base else "#404040"
        width = 2.0 if is_base else 0.8
        out.append(
            f'<polygon points="{path}" fill="{fill}" stroke="{stroke}" '
            f'stroke-width="{width:.1f}"/>'
        )
        if show_heights:
            out.append(
                f'<text x="{bx * SCALE:.2f}" y="{by * SCALE:.2f}" '
                f'font-size="{0.18 * SCALE:.1f}" text-anchor="middle" '
                f'dominant-baseline="middle" fill="#202020">{depth}</text>'
            )
    out.append("</svg>")
    return "\n".join(out) + "\n"
