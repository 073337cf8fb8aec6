"""Permutations, plain diagrams, dominance orders and Rothe data.

Cells are 1-indexed ``(row, column)`` pairs read as in a matrix.
"""

from __future__ import annotations

import itertools
import re
from dataclasses import dataclass
from typing import Iterable, Iterator

Cell = tuple[int, int]

_TOKEN = re.compile(r"\((\d+)\)|(\d)")


class BoundExceeded(ValueError):
    """Requested size is above a configured computation bound."""


@dataclass(frozen=True)
class Permutation:
    """A permutation in one-line notation, ``entries[i-1] == w(i)``."""

    entries: tuple[int, ...]

    def __post_init__(self):
        entries = tuple(int(e) for e in self.entries)
        object.__setattr__(self, "entries", entries)
        if sorted(entries) != list(range(1, len(entries) + 1)):
            raise ValueError(f"not a permutation of 1..{len(entries)}: {entries}")

    @classmethod
    def parse(cls, text: str) -> Permutation:
        """Parse ``"14253"`` or ``"2168534(10)79"``; commas/spaces also accepted."""
        text = text.strip()
        if "," in text or " " in text.strip():
            parts = [p for p in re.split(r"[,\s]+", text.strip("[]() ")) if p]
            return cls(tuple(int(p) for p in parts))
        pos = 0
        values = []
        for m in _TOKEN.finditer(text):
            if m.start() != pos:
                raise ValueError(f"cannot parse permutation {text!r}")
            values.append(int(m.group(1) or m.group(2)))
            pos = m.end()
        if pos != len(text) or not values:
            raise ValueError(f"cannot parse permutation {text!r}")
        return cls(tuple(values))

    @classmethod
    def identity(cls, n: int) -> Permutation:
        return cls(tuple(range(1, n + 1)))

    @classmethod
    def longest(cls, n: int) -> Permutation:
        return cls(tuple(range(n, 0, -1)))

    @property
    def n(self) -> int:
        return len(self.entries)

    def __call__(self, i: int) -> int:
        return self.entries[i - 1]

    def __len__(self):
        return len(self.entries)

    def __iter__(self):
        return iter(self.entries)

    def __str__(self):
        return "".join(str(v) if v < 10 else f"({v})" for v in self.entries)

    def __repr__(self):
        return f"Permutation({self})"

    def compose(self, other: Permutation) -> Permutation:
        """``(self * other)(i) = self(other(i))``."""
        return Permutation(tuple(self(other(i)) for i in range(1, other.n + 1)))

    def swap(self, j: int) -> Permutation:
        """Right multiplication by ``s_j``: swap positions ``j`` and ``j+1``."""
        e = list(self.entries)
        e[j - 1], e[j] = e[j], e[j - 1]
        return Permutation(tuple(e))

    def ascents(self) -> list[int]:
        return [j for j in range(1, self.n) if self(j) < self(j + 1)]

    def to_json(self) -> list[int]:
        return list(self.entries)


def inverse(w: Permutation) -> Permutation:
    inv = [0] * w.n
    for i, v in enumerate(w.entries, start=1):
        inv[v - 1] = i
    return Permutation(tuple(inv))


def length(w: Permutation) -> int:
    """Number of inversions."""
    e = w.entries
    return sum(1 for a, b in itertools.combinations(range(len(e)), 2) if e[a] > e[b])


def is_vexillary(w: Permutation) -> bool:
    """True iff ``w`` avoids the pattern 2143."""
    e = w.entries
    n = len(e)
    # for each middle split j<k with e[j] ... fix (i, l) candidates via prefix/suffix scans
    for j in range(1, n - 2):
        for k in range(j + 1, n - 1):
            if e[j] >= e[k]:
                continue
            # need i<j with e[j] < e[i] < some e[l] < e[k], l>k
            highs = [e[i] for i in range(j) if e[j] < e[i] < e[k]]
            if not highs:
                continue
            lo = min(highs)
            if any(lo < e[l] < e[k] for l in range(k + 1, n)):
                return False
    return True


def all_permutations(n: int) -> Iterator[Permutation]:
    for p in itertools.permutations(range(1, n + 1)):
        yield Permutation(p)


def vexillary_permutations(n: int) -> list[Permutation]:
    return [w for w in all_permutations(n) if is_vexillary(w)]


@dataclass(frozen=True)
class Diagram:
    """A subset of the ``n x k`` grid."""

    n: int
    k: int
    cells: frozenset

    def __post_init__(self):
        cells = frozenset((int(r), int(c)) for r, c in self.cells)
        object.__setattr__(self, "cells", cells)
        for r, c in cells:
            if not (1 <= r <= self.n and 1 <= c <= self.k):
                raise ValueError(f"cell {(r, c)} outside {self.n}x{self.k} grid")

    @classmethod
    def from_columns(cls, n: int, columns: Iterable[Iterable[int]]) -> Diagram:
        columns = list(columns)
        cells = {(r, j) for j, col in enumerate(columns, start=1) for r in col}
        return cls(n, len(columns), frozenset(cells))

    def column(self, j: int) -> frozenset:
        return frozenset(r for r, c in self.cells if c == j)

    def columns(self) -> list[frozenset]:
        cols = [set() for _ in range(self.k)]
        for r, c in self.cells:
            cols[c - 1].add(r)
        return [frozenset(c) for c in cols]

    def __len__(self):
        return len(self.cells)

    def __contains__(self, cell):
        return cell in self.cells

    def to_json(self) -> dict:
        return {"n": self.n, "k": self.k, "cells": [list(c) for c in sorted(self.cells)]}

    @classmethod
    def from_json(cls, data: dict) -> Diagram:
        return cls(data["n"], data["k"], frozenset(tuple(c) for c in data["cells"]))


def rothe_diagram(w: Permutation) -> tuple[Diagram, dict[Cell, int]]:
    """Rothe diagram of ``w`` and its rank table."""
    winv = inverse(w)
    n = w.n
    cells = {
        (i, j)
        for i in range(1, n + 1)
        for j in range(1, n + 1)
        if i < winv(j) and j < w(i)
    }
    ranks = {(i, j): sum(1 for k in range(1, i) if w(k) < j) for i, j in cells}
    return Diagram(n, n, frozenset(cells)), ranks


def subset_leq(R: Iterable[int], S: Iterable[int]) -> bool:
    """``R <= S``: equal sizes and sorted elementwise domination."""
    R, S = sorted(R), sorted(S)
    return len(R) == len(S) and all(r <= s for r, s in zip(R, S))


def diagram_leq(C: Diagram, D: Diagram) -> bool:
    if C.k != D.k:
        raise ValueError("diagrams must have the same number of columns")
    return all(subset_leq(a, b) for a, b in zip(C.columns(), D.columns()))


def weight(D: Diagram) -> tuple[int, ...]:
    wt = [0] * D.n
    for r, _ in D.cells:
        wt[r - 1] += 1
    return tuple(wt)


def dominated_subsets(S: Iterable[int], n: int) -> list[frozenset]:
    """All ``B`` with ``B <= S`` inside ``[n]``."""
    S = sorted(S)
    out = []
    for combo in itertools.combinations(range(1, n + 1), len(S)):
        if all(b <= s for b, s in zip(combo, S)):
            out.append(frozenset(combo))
    return out
