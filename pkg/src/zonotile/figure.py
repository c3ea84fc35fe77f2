"""SVG rendering of a certified planar instance.

The drawing is a pure function of a full report (stage ``dicing`` or ``all``):
the zonotope, a 5x5 patch of lattice translates, the lattice points and the
dicing lines crossing the patch.
"""

from __future__ import annotations

import math
from fractions import Fraction

from .errors import UnsupportedDimensionError

PATCH = range(-2, 3)
SIZE = 640


def _num(x: float) -> str:
    s = f"{x:.6f}".rstrip("0").rstrip(".")
    return "0" if s in ("-0", "") else s


def zonotope_vertices(generators: list[tuple[float, float]]) -> list[tuple[float, float]]:
    """Vertices of the planar zonotope with segments ``[-z, z]``, counter-clockwise."""
    oriented = []
    for x, y in generators:
        if y < 0 or (y == 0 and x < 0):
            x, y = -x, -y
        oriented.append((x, y))
    oriented.sort(key=lambda v: math.atan2(v[1], v[0]))
    px = -sum(x for x, _ in oriented)
    py = -sum(y for _, y in oriented)
    verts = [(px, py)]
    for sgn in (2, -2):
        for x, y in oriented:
            px, py = px + sgn * x, py + sgn * y
            verts.append((px, py))
    return verts[:-1]


def render_svg(report: dict) -> str:
    inst = report["instance"]
    if inst["dimension"] != 2:
        raise UnsupportedDimensionError(f"figures are planar only, got dimension {inst['dimension']}")
    if "generators" not in inst or "dicing" not in report:
        raise ValueError("figure needs a certified zonotope report with dicing data")

    gens = [tuple(float(Fraction(a)) for a in z) for z in inst["generators"]]
    basis = [[float(Fraction(a)) for a in row] for row in report["geometry"]["tiling_lattice"]]
    d_vectors = [tuple(float(Fraction(a)) for a in d) for d in report["dicing"]["d"]]
    verts = zonotope_vertices(gens)

    points = []
    for a in PATCH:
        for b in PATCH:
            points.append((basis[0][0] * a + basis[0][1] * b, basis[1][0] * a + basis[1][1] * b))

    xs = [px + vx for px, _ in points for vx, _ in verts]
    ys = [py + vy for _, py in points for _, vy in verts]
    xmin, xmax, ymin, ymax = min(xs), max(xs), min(ys), max(ys)
    span = max(xmax - xmin, ymax - ymin)
    s = SIZE / span

    def sx(x: float) -> float:
        return (x - xmin) * s

    def sy(y: float) -> float:
        return (ymax - y) * s

    width, height = (xmax - xmin) * s, (ymax - ymin) * s
    lines = [
        '<?xml version="1.0" encoding="UTF-8"?>',
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{_num(width)}" height="{_num(height)}" '
        f'viewBox="0 0 {_num(width)} {_num(height)}">',
        f'<title>{inst.get("name") or "zonotope"}</title>',
        '<g id="tiles" fill="none" stroke="#1f4e79" stroke-width="1">',
    ]
    for px, py in points:
        fill = ' fill="#cfe2f3"' if (px, py) == (0.0, 0.0) else ""
        pts = " ".join(f"{_num(sx(px + vx))},{_num(sy(py + vy))}" for vx, vy in verts)
        lines.append(f'<polygon points="{pts}"{fill}/>')
    lines.append("</g>")

    lines.append('<g id="dicing" stroke="#c0392b" stroke-width="0.5" stroke-dasharray="3,2">')
    for a, b in d_vectors:
        values = [a * x + b * y for x in (xmin, xmax) for y in (ymin, ymax)]
        for k in range(math.ceil(min(values)), math.floor(max(values)) + 1):
            if abs(b) >= abs(a):
                seg = [(x, (k - a * x) / b) for x in (xmin, xmax)]
            else:
                seg = [((k - b * y) / a, y) for y in (ymin, ymax)]
            (x1, y1), (x2, y2) = seg
            lines.append(
                f'<line x1="{_num(sx(x1))}" y1="{_num(sy(y1))}" x2="{_num(sx(x2))}" y2="{_num(sy(y2))}"/>'
            )
    lines.append("</g>")

    lines.append('<g id="lattice" fill="#000000">')
    for px, py in points:
        lines.append(f'<circle cx="{_num(sx(px))}" cy="{_num(sy(py))}" r="3"/>')
    lines.append("</g>")
    lines.append("</svg>")
    return "\n".join(lines) + "\n"
