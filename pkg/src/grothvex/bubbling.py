"""Bubbling diagrams, bubbling and K-bubbling moves, and the sets built from them.

A bubbling diagram is a grid diagram whose squares carry an integer rank
and a live/dead flag.  Live squares move up one row at a time (losing one
unit of rank); a K-bubbling move also leaves a dead copy behind.  Dead
squares never move, but two dead squares in one row must have different
ranks.
"""

from __future__ import annotations

import itertools
from collections import deque
from dataclasses import dataclass, field
from typing import Iterable, NamedTuple

from .core import (
    BoundExceeded,
    Cell,
    Diagram,
    Permutation,
    dominated_subsets,
    is_vexillary,
    rothe_diagram,
    subset_leq,
)
from .polyhedra import column_fill


class IllegalMove(ValueError):
    pass


class NotVexillary(ValueError):
    pass


class NoWitness(AssertionError):
    """A search guaranteed to succeed by a theorem came back empty."""


class ContractViolation(ValueError):
    pass


class Square(NamedTuple):
    row: int
    col: int
    rank: int
    dead: bool


def linking_key(i: int, rank: int) -> int:
    """Squares are linked exactly when their keys agree."""
    return i - rank


@dataclass(frozen=True)
class BubblingDiagram:
    n: int
    k: int
    squares: frozenset
    _at: dict = field(init=False, repr=False, compare=False, hash=False)

    def __post_init__(self):
        squares = frozenset(Square(*s) for s in self.squares)
        object.__setattr__(self, "squares", squares)
        at = {}
        for s in squares:
            if not (1 <= s.row <= self.n and 1 <= s.col <= self.k):
                raise ValueError(f"square {s} outside {self.n}x{self.k} grid")
            if s.rank < 0:
                raise ValueError(f"negative rank at {s}")
            if (s.row, s.col) in at:
                raise ValueError(f"two squares at {(s.row, s.col)}")
            at[s.row, s.col] = s
        object.__setattr__(self, "_at", at)
        problems = self.violations()
        if problems:
            raise ValueError("; ".join(problems))

    @classmethod
    def build(cls, n: int, k: int, live: dict, dead: dict | None = None) -> BubblingDiagram:
        """From ``{cell: rank}`` maps of live and dead squares."""
        sq = [Square(r, c, rk, False) for (r, c), rk in live.items()]
        sq += [Square(r, c, rk, True) for (r, c), rk in (dead or {}).items()]
        return cls(n, k, frozenset(sq))

    def violations(self) -> list[str]:
        out = []
        for s in self.squares:
            if not s.dead:
                continue
            above = [r for r in self.live_rows(s.col) if r < s.row]
            if not above:
                out.append(f"dead {s.row, s.col} has no live square above it")
                continue
            a = max(above)
            if s.rank - self._at[a, s.col].rank != s.row - a:
                out.append(f"dead {s.row, s.col} not linked to live {a, s.col}")
        rows: dict = {}
        for s in self.squares:
            if s.dead:
                if s.rank in rows.setdefault(s.row, set()):
                    out.append(f"two dead squares of rank {s.rank} in row {s.row}")
                rows[s.row].add(s.rank)
        return out

    # queries

    def __contains__(self, cell) -> bool:
        return tuple(cell) in self._at

    def square(self, i: int, j: int) -> Square:
        return self._at[i, j]

    def rank(self, i: int, j: int) -> int:
        return self._at[i, j].rank

    def is_live(self, i: int, j: int) -> bool:
        s = self._at.get((i, j))
        return s is not None and not s.dead

    def is_dead(self, i: int, j: int) -> bool:
        s = self._at.get((i, j))
        return s is not None and s.dead

    def cells(self) -> frozenset:
        return frozenset(self._at)

    def live_cells(self) -> frozenset:
        return frozenset(c for c, s in self._at.items() if not s.dead)

    def dead_cells(self) -> frozenset:
        return frozenset(c for c, s in self._at.items() if s.dead)

    def live_rows(self, j: int) -> list[int]:
        return sorted(r for (r, c), s in self._at.items() if c == j and not s.dead)

    def dead_rows(self, j: int) -> list[int]:
        return sorted(r for (r, c), s in self._at.items() if c == j and s.dead)

    def diagram(self) -> Diagram:
        return Diagram(self.n, self.k, self.cells())

    def dead_diagram(self) -> Diagram:
        return Diagram(self.n, self.k, self.dead_cells())

    def weight(self) -> tuple[int, ...]:
        wt = [0] * self.n
        for r, _ in self._at:
            wt[r - 1] += 1
        return tuple(wt)

    def sorted_squares(self) -> list[Square]:
        return sorted(self.squares)

    def to_json(self) -> dict:
        return {
            "n": self.n,
            "k": self.k,
            "squares": [
                {"r": s.row, "c": s.col, "rank": s.rank, "dead": s.dead}
                for s in self.sorted_squares()
            ],
        }

    @classmethod
    def from_json(cls, data: dict) -> BubblingDiagram:
        return cls(
            data["n"],
            data["k"],
            frozenset(Square(q["r"], q["c"], q["rank"], bool(q["dead"])) for q in data["squares"]),
        )

    def render(self) -> str:
        """Text grid: ``L<rank>`` for live, ``d<rank>`` for dead, ``.`` for empty."""
        lines = []
        for i in range(1, self.n + 1):
            row = []
            for j in range(1, self.k + 1):
                s = self._at.get((i, j))
                row.append(" . " if s is None else f"{'d' if s.dead else 'L'}{s.rank:<2d}")
            lines.append(" ".join(row))
        return "\n".join(lines)


def rothe_bubbling(w: Permutation) -> BubblingDiagram:
    D, ranks = rothe_diagram(w)
    return BubblingDiagram.build(w.n, w.n, ranks)


def _check_move(d: BubblingDiagram, i: int, j: int):
    s = d._at.get((i, j))
    if s is None:
        raise IllegalMove(f"no square at {(i, j)}")
    if s.dead:
        raise IllegalMove(f"square {(i, j)} is dead")
    if i < 2:
        raise IllegalMove(f"square {(i, j)} is in the top row")
    if (i - 1, j) in d._at:
        raise IllegalMove(f"target {(i - 1, j)} is occupied")
    if s.rank < 1:
        raise IllegalMove(f"square {(i, j)} has rank 0")
    return s


def bubble(d: BubblingDiagram, i: int, j: int) -> BubblingDiagram:
    s = _check_move(d, i, j)
    squares = set(d.squares)
    squares.remove(s)
    squares.add(Square(i - 1, j, s.rank - 1, False))
    return BubblingDiagram(d.n, d.k, frozenset(squares))


def k_bubble_legal(d: BubblingDiagram, i: int, j: int) -> bool:
    try:
        _check_k(d, i, j)
    except IllegalMove:
        return False
    return True


def _check_k(d: BubblingDiagram, i: int, j: int) -> Square:
    s = _check_move(d, i, j)
    for (r, c), t in d._at.items():
        if r == i and t.dead and t.rank == s.rank:
            raise IllegalMove(f"dead square {(r, c)} in row {i} has equal rank {s.rank}")
    return s


def k_bubble(d: BubblingDiagram, i: int, j: int) -> BubblingDiagram:
    s = _check_k(d, i, j)
    squares = set(d.squares)
    squares.remove(s)
    squares.add(Square(i, j, s.rank, True))
    squares.add(Square(i - 1, j, s.rank - 1, False))
    return BubblingDiagram(d.n, d.k, frozenset(squares))


def successors(d: BubblingDiagram, columns: Iterable[int] | None = None):
    """All ``(kind, cell, result)`` one move away from ``d``."""
    cols = None if columns is None else set(columns)
    for (i, j), s in sorted(d._at.items()):
        if s.dead or i < 2 or (i - 1, j) in d._at or s.rank < 1:
            continue
        if cols is not None and j not in cols:
            continue
        yield "bubble", (i, j), bubble(d, i, j)
        if k_bubble_legal(d, i, j):
            yield "k_bubble", (i, j), k_bubble(d, i, j)


def enumerate_bd(seed: BubblingDiagram, max_states: int | None = None) -> set[BubblingDiagram]:
    """Closure of ``seed`` under bubbling and K-bubbling moves."""
    seen = {seed}
    queue = deque([seed])
    while queue:
        d = queue.popleft()
        for _, _, nxt in successors(d):
            if nxt not in seen:
                seen.add(nxt)
                if max_states is not None and len(seen) > max_states:
                    raise BoundExceeded(f"more than {max_states} bubbling diagrams")
                queue.append(nxt)
    return seen


def bd(w: Permutation, max_states: int | None = None) -> set[BubblingDiagram]:
    return enumerate_bd(rothe_bubbling(w), max_states)


def linking_classes(d: BubblingDiagram) -> dict[int, frozenset]:
    classes: dict = {}
    for s in d.squares:
        classes.setdefault(linking_key(s.row, s.rank), set()).add((s.row, s.col))
    return {key: frozenset(v) for key, v in classes.items()}


# admissibility and canonical sequences


class Admissibility(NamedTuple):
    ok: bool
    condition: int | None = None
    detail: str = ""

    def __bool__(self):
        return self.ok


def _cells(x) -> frozenset:
    if isinstance(x, Diagram):
        return x.cells
    return frozenset(tuple(c) for c in x)


def _col(cells: frozenset, j: int) -> list[int]:
    return sorted(r for r, c in cells if c == j)


def _nearest_above(rows: list[int], i: int):
    """(1-based index, row) of the nearest entry of ``rows`` strictly above ``i``."""
    best = None
    for idx, r in enumerate(rows, start=1):
        if r < i:
            best = (idx, r)
    return best


def is_admissible(seed: BubblingDiagram, Dp, Fp) -> Admissibility:
    """Evaluate the five admissibility conditions for the target ``(Dp, Fp)``."""
    Dp, Fp = _cells(Dp), _cells(Fp)
    if not Fp <= Dp:
        return Admissibility(False, 0, "Fp is not contained in Dp")
    for r, c in Dp:
        if not (1 <= r <= seed.n and 1 <= c <= seed.k):
            return Admissibility(False, 0, f"cell {(r, c)} outside the grid")
    Lp = Dp - Fp
    F = seed.dead_cells()
    cols = range(1, seed.k + 1)
    live = {j: seed.live_rows(j) for j in cols}
    live_p = {j: _col(Lp, j) for j in cols}

    if not F <= Fp:
        return Admissibility(False, 1, f"old dead squares {sorted(F - Fp)} missing")

    for j in cols:
        if not subset_leq(live_p[j], live[j]):
            return Admissibility(False, 2, f"live squares of column {j} not dominated")

    for i, j in sorted(Fp - F):
        near = _nearest_above(live_p[j], i)
        if near is None:
            return Admissibility(False, 3, f"new dead {(i, j)} has no live square above")
        m = near[0]
        # weak: a single K-bubble leaves the dead copy exactly where the seed square was
        if live[j][m - 1] < i:
            return Admissibility(False, 3, f"new dead {(i, j)}: seed live #{m} above row {i}")

    for i, j in sorted(F):
        a = sum(1 for r in live[j] if r < i)
        b = sum(1 for r in live[j] if r > i)
        ap = sum(1 for r in live_p[j] if r < i)
        bp = sum(1 for r in live_p[j] if r > i)
        if (a, b) != (ap, bp):
            return Admissibility(False, 4, f"live counts around old dead {(i, j)} changed")

    by_row: dict = {}
    for i, j in Fp:
        by_row.setdefault(i, []).append(j)
    for i, js in sorted(by_row.items()):
        keys = {}
        for j in sorted(js):
            near = _nearest_above(live_p[j], i)
            if near is None:
                return Admissibility(False, 3, f"dead {(i, j)} has no live square above")
            r0 = live[j][near[0] - 1]
            key = linking_key(r0, seed.rank(r0, j))
            if key in keys:
                return Admissibility(
                    False, 5, f"dead {(i, keys[key])} and {(i, j)} governed by linked squares"
                )
            keys[key] = j
    return Admissibility(True)


def _column_targets(seed: BubblingDiagram, j: int) -> list[tuple[frozenset, frozenset]]:
    col_seed = BubblingDiagram(
        seed.n, seed.k, frozenset(q for q in seed.squares if q.col == j)
    )
    live, dead = seed.live_rows(j), seed.dead_rows(j)
    if not live:
        return [(frozenset(), frozenset())]
    out = []
    for Lp in dominated_subsets(live, seed.n):
        if any(r in Lp for r in dead):
            continue
        rest = [r for r in range(1, seed.n + 1) if r not in Lp and r not in dead]
        for size in range(len(rest) + 1):
            for extra in itertools.combinations(rest, size):
                Fp = frozenset((r, j) for r in (*dead, *extra))
                Dp = Fp | frozenset((r, j) for r in Lp)
                if is_admissible(col_seed, Dp, Fp):
                    out.append((Dp, Fp))
    return out


def admissible_targets(seed: BubblingDiagram) -> set[tuple[frozenset, frozenset]]:
    """Every admissible ``(Dp, Fp)``, found without using any moves.

    Columns are screened independently (conditions 1-4 are columnwise), then
    the product is filtered by the full test.
    """
    per_column = [_column_targets(seed, j) for j in range(1, seed.k + 1)]
    out = set()
    for combo in itertools.product(*per_column):
        Dp = frozenset().union(*(c[0] for c in combo))
        Fp = frozenset().union(*(c[1] for c in combo))
        if is_admissible(seed, Dp, Fp):
            out.add((Dp, Fp))
    return out


def infer_ranks(seed: BubblingDiagram, Dp, Fp) -> BubblingDiagram:
    """The unique rank function making ``(Dp, r, Fp)`` a descendant of ``seed``.

    Live squares keep the linking key of the seed's live square with the same
    height in the column; dead squares take the key of the live square above.
    """
    Dp, Fp = _cells(Dp), _cells(Fp)
    Lp = Dp - Fp
    live_sq, dead_sq = {}, {}
    for j in range(1, seed.k + 1):
        seed_rows = seed.live_rows(j)
        rows = _col(Lp, j)
        for idx, r in enumerate(rows):
            key = linking_key(seed_rows[idx], seed.rank(seed_rows[idx], j))
            live_sq[r, j] = r - key
    for i, j in Fp:
        if (i, j) in seed and seed.is_dead(i, j):
            dead_sq[i, j] = seed.rank(i, j)
            continue
        a = max(r for r, c in Lp if c == j and r < i)
        dead_sq[i, j] = live_sq[a, j] + (i - a)
    return BubblingDiagram.build(seed.n, seed.k, live_sq, dead_sq)


def agreement_row(cur: BubblingDiagram, j: int, Dp: frozenset, Fp: frozenset) -> int:
    """Minimal ``s`` such that column ``j`` of ``cur`` and the target agree in rows ``>= s``."""
    s = cur.n + 1
    while s > 1:
        r = s - 1
        if ((r, j) in cur) != ((r, j) in Dp) or cur.is_dead(r, j) != ((r, j) in Fp):
            break
        s -= 1
    return s


def canonical_sequence(seed: BubblingDiagram, Dp, Fp) -> list[BubblingDiagram]:
    """Row-sweep sequence of moves from ``seed`` to the admissible target ``(Dp, Fp)``.

    Returns ``[D^n, ..., D^0]`` with ``D^n = seed``.
    """
    Dp, Fp = _cells(Dp), _cells(Fp)
    adm = is_admissible(seed, Dp, Fp)
    if not adm:
        raise ContractViolation(f"target not admissible (condition {adm.condition}): {adm.detail}")
    seq = [seed]
    cur = seed
    for m in range(seed.n, 0, -1):
        nxt = cur
        for j in range(1, seed.k + 1):
            if (m, j) in cur or not cur.is_live(m + 1, j):
                continue
            kj = agreement_row(cur, j, Dp, Fp)
            if kj <= m + 1:
                continue
            if (kj - 1, j) not in Dp:
                for r in range(m + 1, kj):
                    nxt = bubble(nxt, r, j)
            elif (kj - 1, j) in Fp:
                for r in range(m + 1, kj - 1):
                    nxt = bubble(nxt, r, j)
                nxt = k_bubble(nxt, kj - 1, j)
        cur = nxt
        seq.append(cur)
    return seq


# distinguished squares and the top diagram


class Distinguished(NamedTuple):
    row: int
    col: int
    height: int  # position from the top among the column's squares of D(w)
    key: int


@dataclass(frozen=True)
class DistinguishedSet:
    entries: tuple

    def __post_init__(self):
        cols = [e.col for e in self.entries]
        keys = [e.key for e in self.entries]
        if len(set(cols)) != len(cols) or len(set(keys)) != len(keys):
            raise ValueError("distinguished squares must have distinct columns and keys")

    def cells(self) -> list[Cell]:
        return [(e.row, e.col) for e in self.entries]

    def by_column(self) -> dict[int, Distinguished]:
        return {e.col: e for e in self.entries}

    def __len__(self):
        return len(self.entries)

    def __iter__(self):
        return iter(self.entries)


def _require_vexillary(w: Permutation):
    if not is_vexillary(w):
        raise NotVexillary(f"{w} is not vexillary")


def prec_order(w: Permutation) -> list[Cell]:
    """Cells of D(w) sorted by the order used to pick distinguished squares."""
    D, _ = rothe_diagram(w)

    def below(cell):
        i, j = cell
        return sum(1 for r, c in D.cells if c == j and r > i)

    return sorted(D.cells, key=lambda c: (-c[0], below(c), c[1]))


def distinguished_squares(w: Permutation) -> DistinguishedSet:
    _require_vexillary(w)
    D, ranks = rothe_diagram(w)
    chosen = []
    cols, keys = set(), set()
    for i, j in prec_order(w):
        key = linking_key(i, ranks[i, j])
        if j in cols or key in keys:
            continue
        height = sum(1 for r, c in D.cells if c == j and r <= i)
        chosen.append(Distinguished(i, j, height, key))
        cols.add(j)
        keys.add(key)
    return DistinguishedSet(tuple(chosen))


def distinguished_live(d: BubblingDiagram, A: DistinguishedSet) -> list[Cell]:
    """A(d): the square at the same live height as each entry of A(w)."""
    out = []
    for e in A:
        rows = d.live_rows(e.col)
        out.append((rows[e.height - 1], e.col))
    return out


def d_top(w: Permutation) -> BubblingDiagram:
    _require_vexillary(w)
    d = rothe_bubbling(w)
    A = distinguished_squares(w)
    changed = True
    while changed:
        changed = False
        for e in A:
            target = d.live_rows(e.col)[e.height - 1]
            for r in d.live_rows(e.col):
                if r < target and r >= 2 and (r - 1, e.col) not in d:
                    d = bubble(d, r, e.col)
                    changed = True
    changed = True
    while changed:
        changed = False
        for e in A:
            r = d.live_rows(e.col)[e.height - 1]
            if r >= 2 and (r - 1, e.col) not in d and k_bubble_legal(d, r, e.col):
                d = k_bubble(d, r, e.col)
                changed = True
    return d


def f_top(w: Permutation) -> tuple[int, ...]:
    """Number of dead squares of the top diagram in each column."""
    top = d_top(w)
    return tuple(len(top.dead_rows(j)) for j in range(1, w.n + 1))


def d_f(w: Permutation, f) -> Diagram:
    """Columns of D(w), each filled upward ``f_k`` times at its distinguished row."""
    ft = f_top(w)
    f = tuple(f)
    if len(f) != w.n or any(a < 0 or a > b for a, b in zip(f, ft)):
        raise ContractViolation(f"f={f} is not below f_top={ft}")
    D, _ = rothe_diagram(w)
    A = distinguished_squares(w).by_column()
    cols = []
    for k, col in enumerate(D.columns(), start=1):
        if k in A:
            cols.append(column_fill(col, A[k].row, f[k - 1]))
        else:
            cols.append(col)
    return Diagram.from_columns(w.n, cols)


def _column_states(seed: BubblingDiagram, j: int, dist: Distinguished | None) -> list[frozenset]:
    """Reachable states of column ``j`` under bubbling any live square and
    K-bubbling only the distinguished live square."""
    start = BubblingDiagram(seed.n, seed.k, frozenset(s for s in seed.squares if s.col == j))
    seen = {start}
    queue = deque([start])
    while queue:
        d = queue.popleft()
        rows = d.live_rows(j)
        special = rows[dist.height - 1] if dist else None
        for kind, (i, _), nxt in successors(d, columns=[j]):
            if kind == "k_bubble" and i != special:
                continue
            if nxt not in seen:
                seen.add(nxt)
                queue.append(nxt)
    return [d.squares for d in seen]


def enumerate_sbd(w: Permutation) -> set[BubblingDiagram]:
    """Bubbling diagrams whose dead squares all hang below distinguished squares,
    built as a product of independent per-column state sets."""
    _require_vexillary(w)
    seed = rothe_bubbling(w)
    A = distinguished_squares(w).by_column()
    per_column = [
        _column_states(seed, j, A.get(j)) for j in range(1, seed.k + 1) if seed.live_rows(j)
    ]
    out = set()
    for combo in itertools.product(*per_column):
        out.add(BubblingDiagram(seed.n, seed.k, frozenset().union(*combo)))
    return out


def is_sbd_member(d: BubblingDiagram, A: DistinguishedSet) -> bool:
    """Every dead square is linked to the distinguished live square of its column."""
    cols = A.by_column()
    for i, j in d.dead_cells():
        if j not in cols:
            return False
        r = d.live_rows(j)[cols[j].height - 1]
        if linking_key(r, d.rank(r, j)) != linking_key(i, d.rank(i, j)):
            return False
    return True


# witness searches


def _leq(a, b) -> bool:
    return all(x <= y for x, y in zip(a, b))


def remove_dead_check(
    w: Permutation,
    d: BubblingDiagram,
    i: int,
    family: Iterable[BubblingDiagram] | None = None,
    support: set | None = None,
) -> BubblingDiagram:
    """Find a diagram of weight ``wt(d) - e_i`` whose dead squares form a proper
    subset of those of ``d`` with the same ranks."""
    from .poly import grothendieck

    wt = list(d.weight())
    wt[i - 1] -= 1
    wt = tuple(wt)
    if support is None:
        support = grothendieck(w).support()
    if wt not in support:
        raise ContractViolation(f"{wt} is not in the support of G_{w}")
    if family is None:
        family = bd(w)
    dead = {c: d.rank(*c) for c in d.dead_cells()}
    for cand in sorted(family, key=lambda x: x.sorted_squares()):
        if cand.weight() != wt:
            continue
        cd = cand.dead_cells()
        if cd < dead.keys() and all(cand.rank(*c) == dead[c] for c in cd):
            return cand
    raise NoWitness(f"no dead-square removal witness for {w}, row {i}")


def top_witness(
    w: Permutation, d: BubblingDiagram, family: Iterable[BubblingDiagram] | None = None
) -> BubblingDiagram:
    """A diagram with the top dead set whose weight dominates ``wt(d)``."""
    if family is None:
        family = bd(w)
    target = d_top(w).dead_cells()
    for cand in sorted(family, key=lambda x: x.sorted_squares()):
        if cand.dead_cells() == target and _leq(d.weight(), cand.weight()):
            return cand
    raise NoWitness(f"no top-diagram witness for {w}")
