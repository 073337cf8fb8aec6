"""Bumpless pipe dreams: enumeration, decoding, marked BPDs and Weigandt's sum.

Tiles are single-letter codes:

    B blank, H horizontal, V vertical, X crossing, D down-elbow (S-E), U up-elbow (W-N)

Pipes enter along the bottom edge and leave through the right edge, so
inside every tile a pipe travels north or east.
"""

from __future__ import annotations

import itertools
from collections import defaultdict
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterator

from .core import BoundExceeded, Cell, Permutation, length
from .poly import MultiPoly

DEFAULT_MAX_N = 7
HARD_MAX_N = 8

# (north, east, south, west) pipe presence per tile
EDGES = {
    "B": (0, 0, 0, 0),
    "H": (0, 1, 0, 1),
    "V": (1, 0, 1, 0),
    "X": (1, 1, 1, 1),
    "D": (0, 1, 1, 0),
    "U": (1, 0, 0, 1),
}
GLYPHS = {"B": " ", "H": "─", "V": "│", "X": "┼", "D": "┌", "U": "┘"}
_BY_NW = defaultdict(list)
for _t, (_n, _e, _s, _w) in EDGES.items():
    _BY_NW[_n, _w].append(_t)


@dataclass(frozen=True)
class Bpd:
    n: int
    grid: tuple[tuple[str, ...], ...]

    def __post_init__(self):
        grid = tuple(tuple(row) for row in self.grid)
        object.__setattr__(self, "grid", grid)
        n = self.n
        if len(grid) != n or any(len(row) != n for row in grid):
            raise ValueError("grid must be n x n")
        for i in range(n):
            for j in range(n):
                t = grid[i][j]
                if t not in EDGES:
                    raise ValueError(f"unknown tile {t!r}")
                north, east, south, west = EDGES[t]
                up = EDGES[grid[i - 1][j]][2] if i else 0
                left = EDGES[grid[i][j - 1]][1] if j else 0
                if north != up or west != left:
                    raise ValueError(f"edge mismatch at {(i + 1, j + 1)}")
                if i == n - 1 and not south:
                    raise ValueError("every bottom edge must carry a pipe")
                if j == n - 1 and not east:
                    raise ValueError("every right edge must carry a pipe")

    def tile(self, i: int, j: int) -> str:
        return self.grid[i - 1][j - 1]

    def cells_of(self, code: str) -> frozenset:
        return frozenset(
            (i + 1, j + 1)
            for i, row in enumerate(self.grid)
            for j, t in enumerate(row)
            if t == code
        )

    def blanks(self) -> frozenset:
        return self.cells_of("B")

    def up_elbows(self) -> frozenset:
        return self.cells_of("U")

    def render(self) -> str:
        return "\n".join("".join(GLYPHS[t] for t in row) for row in self.grid)

    def to_json(self, marks=()) -> dict:
        return {
            "n": self.n,
            "tiles": [list(row) for row in self.grid],
            "marks": [list(c) for c in sorted(marks)],
        }


@dataclass(frozen=True)
class MarkedBpd:
    bpd: Bpd
    marks: frozenset

    def __post_init__(self):
        object.__setattr__(self, "marks", frozenset(self.marks))
        if not self.marks <= self.bpd.up_elbows():
            raise ValueError("marks must be up-elbow tiles")

    def to_json(self) -> dict:
        return self.bpd.to_json(self.marks)

    @classmethod
    def from_json(cls, data: dict) -> MarkedBpd:
        return cls(Bpd(data["n"], data["tiles"]), frozenset(tuple(c) for c in data.get("marks", [])))


def _trace(P: Bpd):
    """Route labelled pipes through ``P``; a repeated crossing of a pair is a bump.

    Returns (right-edge labels top to bottom, labels touching each tile, reduced?).
    """
    n = P.n
    north_out = [[0] * n for _ in range(n)]  # label leaving through the north edge
    east_out = [[0] * n for _ in range(n)]
    touching: dict[Cell, tuple] = {}
    crossed = set()
    reduced = True
    for i in range(n - 1, -1, -1):
        for j in range(n):
            t = P.grid[i][j]
            from_s = (j + 1) if i == n - 1 else north_out[i + 1][j]
            from_w = east_out[i][j - 1] if j else 0
            if t == "B":
                continue
            if t == "H":
                east_out[i][j] = from_w
                labels = (from_w,)
            elif t == "V":
                north_out[i][j] = from_s
                labels = (from_s,)
            elif t == "D":
                east_out[i][j] = from_s
                labels = (from_s,)
            elif t == "U":
                north_out[i][j] = from_w
                labels = (from_w,)
            else:
                pair = frozenset((from_s, from_w))
                if pair in crossed:
                    reduced = False
                    east_out[i][j], north_out[i][j] = from_s, from_w
                else:
                    crossed.add(pair)
                    north_out[i][j], east_out[i][j] = from_s, from_w
                labels = (from_s, from_w)
            touching[i + 1, j + 1] = labels
    right = tuple(east_out[i][n - 1] for i in range(n))
    return right, touching, reduced


def decode_permutation(P: Bpd) -> Permutation:
    return Permutation(_trace(P)[0])


def is_reduced(P: Bpd) -> bool:
    return _trace(P)[2]


def rothe_bpd(w: Permutation) -> Bpd:
    n = w.n
    grid = [["B"] * n for _ in range(n)]
    for i in range(1, n + 1):
        c = w(i)
        grid[i - 1][c - 1] = "D"
        for k in range(i + 1, n + 1):
            grid[k - 1][c - 1] = "X" if grid[k - 1][c - 1] == "H" else "V"
        for col in range(c + 1, n + 1):
            grid[i - 1][col - 1] = "X" if grid[i - 1][col - 1] == "V" else "H"
    return Bpd(n, grid)


def _check_bound(n: int, bound: int):
    if n > min(bound, HARD_MAX_N):
        raise BoundExceeded(f"n={n} exceeds enumeration bound {min(bound, HARD_MAX_N)}")


def enumerate_all(n: int, bound: int = DEFAULT_MAX_N) -> Iterator[Bpd]:
    """Every edge-consistent tiling of the ``n x n`` grid with the BPD boundary."""
    _check_bound(n, bound)
    grid = [[""] * n for _ in range(n)]

    def fill(pos: int):
        if pos == n * n:
            yield Bpd(n, grid)
            return
        i, j = divmod(pos, n)
        north = EDGES[grid[i - 1][j]][2] if i else 0
        west = EDGES[grid[i][j - 1]][1] if j else 0
        for t in _BY_NW[north, west]:
            _, east, south, _ = EDGES[t]
            if j == n - 1 and not east:
                continue
            if i == n - 1 and not south:
                continue
            grid[i][j] = t
            yield from fill(pos + 1)
        grid[i][j] = ""

    yield from fill(0)


@lru_cache(maxsize=None)
def _bpds_by_perm(n: int) -> dict:
    out = defaultdict(list)
    for P in enumerate_all(n, bound=HARD_MAX_N):
        out[decode_permutation(P).entries].append(P)
    return dict(out)


def bpds(w: Permutation, bound: int = DEFAULT_MAX_N) -> list[Bpd]:
    """BPD(w), from the (cached) full enumeration of the ``n x n`` grid."""
    _check_bound(w.n, bound)
    return list(_bpds_by_perm(w.n).get(w.entries, []))


def enumerate_mbpds(w: Permutation, bound: int = DEFAULT_MAX_N) -> Iterator[MarkedBpd]:
    for P in bpds(w, bound):
        ups = sorted(P.up_elbows())
        for r in range(len(ups) + 1):
            for marks in itertools.combinations(ups, r):
                yield MarkedBpd(P, frozenset(marks))


def mbpd_weight(m: MarkedBpd) -> tuple[int, ...]:
    wt = [0] * m.bpd.n
    for r, _ in m.bpd.blanks() | m.marks:
        wt[r - 1] += 1
    return tuple(wt)


def weigandt_sum(w: Permutation, bound: int = DEFAULT_MAX_N) -> MultiPoly:
    """Signed sum over marked BPDs; equals the Grothendieck polynomial of ``w``."""
    ell = length(w)
    terms: dict = defaultdict(int)
    for m in enumerate_mbpds(w, bound):
        sign = -1 if (len(m.bpd.blanks()) + len(m.marks) - ell) % 2 else 1
        terms[mbpd_weight(m)] += sign
    return MultiPoly(w.n, terms)


def blank_rank(P: Bpd, cell: Cell) -> int:
    """Number of distinct pipes meeting the rectangle ``[1..i] x [1..j]``."""
    i, j = cell
    if P.tile(i, j) != "B":
        raise ValueError(f"{cell} is not a blank tile")
    _, touching, _ = _trace(P)
    pipes = set()
    for (r, c), labels in touching.items():
        if r <= i and c <= j:
            pipes.update(labels)
    return len(pipes)
