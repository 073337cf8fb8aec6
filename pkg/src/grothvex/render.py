"""SVG drawings of diagrams, bubbling diagrams and (marked) bumpless pipe dreams."""

from __future__ import annotations

from xml.sax.saxutils import escape

from .bpd import EDGES, Bpd, MarkedBpd
from .bubbling import BubblingDiagram
from .core import Diagram

CELL = 32
LIVE = "#7bc47f"
DEAD = "#b0b0b0"
PLAIN = "#8fb8de"
PIPE = "#c0392b"


def _frame(rows: int, cols: int, body: list[str]) -> str:
    w, h = cols * CELL + 2, rows * CELL + 2
    grid = []
    for i in range(rows + 1):
        grid.append(f'<line x1="1" y1="{i * CELL + 1}" x2="{cols * CELL + 1}" y2="{i * CELL + 1}" stroke="#ddd"/>')
    for j in range(cols + 1):
        grid.append(f'<line x1="{j * CELL + 1}" y1="1" x2="{j * CELL + 1}" y2="{rows * CELL + 1}" stroke="#ddd"/>')
    return (
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{w}" height="{h}" viewBox="0 0 {w} {h}">\n'
        + "\n".join(grid + body)
        + "\n</svg>\n"
    )


def _box(i: int, j: int, fill: str, label: str = "") -> list[str]:
    x, y = (j - 1) * CELL + 1, (i - 1) * CELL + 1
    out = [f'<rect x="{x}" y="{y}" width="{CELL}" height="{CELL}" fill="{fill}" stroke="#333"/>']
    if label:
        out.append(
            f'<text x="{x + CELL / 2}" y="{y + CELL * 0.65}" font-size="14" '
            f'text-anchor="middle" font-family="sans-serif">{escape(label)}</text>'
        )
    return out


def diagram_svg(D: Diagram) -> str:
    body = []
    for i, j in sorted(D.cells):
        body += _box(i, j, PLAIN)
    return _frame(D.n, D.k, body)


def bubbling_svg(d: BubblingDiagram) -> str:
    """Live squares green, dead squares grey; each labelled by its rank."""
    body = []
    for s in d.sorted_squares():
        body += _box(s.row, s.col, DEAD if s.dead else LIVE, str(s.rank))
    return _frame(d.n, d.k, body)


def bpd_svg(P: Bpd, marks=frozenset()) -> str:
    body = []
    half = CELL / 2
    for i in range(1, P.n + 1):
        for j in range(1, P.n + 1):
            t = P.tile(i, j)
            x, y = (j - 1) * CELL + 1, (i - 1) * CELL + 1
            cx, cy = x + half, y + half
            north, east, south, west = EDGES[t]
            if t in ("D", "U"):
                # elbows: quarter arcs joining the two used edges
                if t == "D":
                    path = f"M {x + CELL} {cy} A {half} {half} 0 0 0 {cx} {y + CELL}"
                else:
                    path = f"M {x} {cy} A {half} {half} 0 0 0 {cx} {y}"
                body.append(f'<path d="{path}" fill="none" stroke="{PIPE}" stroke-width="3"/>')
            else:
                if north and south:
                    body.append(f'<line x1="{cx}" y1="{y}" x2="{cx}" y2="{y + CELL}" stroke="{PIPE}" stroke-width="3"/>')
                if east and west:
                    body.append(f'<line x1="{x}" y1="{cy}" x2="{x + CELL}" y2="{cy}" stroke="{PIPE}" stroke-width="3"/>')
            if (i, j) in marks:
                body.append(f'<circle cx="{x + CELL * 0.3}" cy="{y + CELL * 0.3}" r="4" fill="#222"/>')
    return _frame(P.n, P.n, body)


def svg_from_json(data: dict) -> str:
    """Dispatch on the JSON shape written by the ``to_json`` methods."""
    if "squares" in data:
        return bubbling_svg(BubblingDiagram.from_json(data))
    if "tiles" in data:
        m = MarkedBpd.from_json(data)
        return bpd_svg(m.bpd, m.marks)
    if "cells" in data:
        return diagram_svg(Diagram.from_json(data))
    raise ValueError("unrecognised JSON: expected squares, tiles or cells")
