"""Schubert matroids, parenthesis-matching ranks, Schubitope supports and
dual characters of flagged Weyl modules."""

from __future__ import annotations

import itertools
from collections import defaultdict
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, NamedTuple

from .core import BoundExceeded, Diagram, Permutation, dominated_subsets
from .poly import MultiPoly

DEFAULT_CHAR_BOUND = 6


@dataclass(frozen=True)
class SchubertMatroid:
    n: int
    gens: tuple[int, ...]

    def __post_init__(self):
        gens = tuple(sorted(set(int(g) for g in self.gens)))
        object.__setattr__(self, "gens", gens)
        if not gens:
            raise ValueError("a Schubert matroid needs a nonempty generating set")
        if gens[0] < 1 or gens[-1] > self.n:
            raise ValueError(f"generators {gens} outside [1, {self.n}]")


def bases(M: SchubertMatroid) -> set[frozenset]:
    return set(dominated_subsets(M.gens, M.n))


def rank_bruteforce(M: SchubertMatroid, J: Iterable[int]) -> int:
    J = frozenset(J)
    return max(len(J & B) for B in bases(M))


def word(I: Iterable[int], J: Iterable[int], n: int) -> str:
    I, J = set(I), set(J)
    out = []
    for k in range(1, n + 1):
        if k in I:
            out.append("★" if k in J else ")")
        else:
            out.append("(" if k in J else "_")
    return "".join(out)


def theta(I: Iterable[int], J: Iterable[int], n: int) -> int:
    """Matched parenthesis pairs plus stars in ``word(I, J, n)``.

    Equals the rank of ``J`` in the Schubert matroid generated by ``I``.
    """
    open_count = matched = stars = 0
    for ch in word(I, J, n):
        if ch == "(":
            open_count += 1
        elif ch == ")" and open_count:
            open_count -= 1
            matched += 1
        elif ch == "★":
            stars += 1
    return matched + stars


def theta_mask(I: int, J: int, n: int) -> int:
    """``theta`` on bitmask-encoded sets (element ``k`` is bit ``k - 1``)."""
    open_count = total = 0
    for k in range(n):
        bit = 1 << k
        if I & bit:
            if J & bit:
                total += 1
            elif open_count:
                open_count -= 1
                total += 1
        elif J & bit:
            open_count += 1
    return total


def schubitope_support(D: Diagram) -> set[tuple[int, ...]]:
    """``{wt(C) : C <= D}`` as a Minkowski sum of per-column indicator sets."""
    total = {(0,) * D.n}
    for col in D.columns():
        if not col:
            continue
        vecs = [tuple(1 if i in B else 0 for i in range(1, D.n + 1)) for B in dominated_subsets(col, D.n)]
        total = {tuple(a + b for a, b in zip(p, v)) for p in total for v in vecs}
    return total


# polynomials in the upper-triangular indeterminates y_ij

YMonomial = tuple  # sorted tuple of (i, j) pairs, repeated by multiplicity


class YPolynomial:
    __slots__ = ("terms",)

    def __init__(self, terms: dict | None = None):
        clean = {}
        for mono, c in (terms or {}).items():
            for i, j in mono:
                if i > j:
                    raise ValueError(f"y_{i}{j} is not upper triangular")
            if c:
                clean[tuple(sorted(mono))] = Fraction(c)
        self.terms = clean

    @classmethod
    def one(cls) -> YPolynomial:
        return cls({(): 1})

    def __mul__(self, other: YPolynomial) -> YPolynomial:
        out: dict = defaultdict(Fraction)
        for m1, c1 in self.terms.items():
            for m2, c2 in other.terms.items():
                out[tuple(sorted(m1 + m2))] += c1 * c2
        return YPolynomial(out)

    def __eq__(self, other):
        return isinstance(other, YPolynomial) and self.terms == other.terms

    def __bool__(self):
        return bool(self.terms)

    def __repr__(self):
        return f"YPolynomial({len(self.terms)} terms)"


def _sign(perm: tuple[int, ...]) -> int:
    s = 1
    for a, b in itertools.combinations(range(len(perm)), 2):
        if perm[a] > perm[b]:
            s = -s
    return s


def upper_minor(rows: Iterable[int], cols: Iterable[int]) -> YPolynomial:
    """Determinant of the generic upper-triangular matrix restricted to ``rows x cols``."""
    rows, cols = sorted(rows), sorted(cols)
    if len(rows) != len(cols):
        raise ValueError("minor needs as many rows as columns")
    terms: dict = defaultdict(int)
    for perm in itertools.permutations(range(len(cols))):
        pairs = [(rows[a], cols[perm[a]]) for a in range(len(rows))]
        if all(i <= j for i, j in pairs):
            terms[tuple(sorted(pairs))] += _sign(perm)
    return YPolynomial(terms)


def span_rank(vectors: list[dict]) -> int:
    """Rank over Q of sparse vectors given as ``{coordinate: Fraction}``."""
    pivots: dict = {}  # pivot coordinate -> reduced row
    for v in vectors:
        row = dict(v)
        while row:
            lead = min(row)
            if lead not in pivots:
                pivots[lead] = row
                break
            p = pivots[lead]
            f = row[lead] / p[lead]
            for key, val in p.items():
                nv = row.get(key, 0) - f * val
                if nv:
                    row[key] = nv
                else:
                    row.pop(key, None)
    return len(pivots)


def dual_character(D: Diagram, bound: int = DEFAULT_CHAR_BOUND) -> MultiPoly:
    """Weight-space dimensions of the span of products of minors over ``C <= D``."""
    if D.n > bound:
        raise BoundExceeded(f"n={D.n} exceeds dual character bound {bound}")
    cols = [(j, col) for j, col in enumerate(D.columns(), start=1) if col]
    choices = []
    for j, col in cols:
        choices.append([(B, upper_minor(B, col)) for B in dominated_subsets(col, D.n)])
    by_weight: dict = defaultdict(list)
    for combo in itertools.product(*choices):
        wt = [0] * D.n
        prod = YPolynomial.one()
        for B, minor in combo:
            for i in B:
                wt[i - 1] += 1
            prod = prod * minor
        by_weight[tuple(wt)].append(prod.terms)
    return MultiPoly(D.n, {wt: span_rank(vs) for wt, vs in by_weight.items()})


class Conjecture1Result(NamedTuple):
    multiple: int | None  # signed; the top component has sign (-1)**(deg - length)
    counterexample: dict | None

    @property
    def ok(self) -> bool:
        return self.multiple is not None


def conjecture1_check(w: Permutation, bound: int = DEFAULT_CHAR_BOUND) -> Conjecture1Result:
    """Test whether the top component of G_w is a nonzero integer multiple of
    the dual character of the top diagram, and report the multiple."""
    from .bubbling import d_top
    from .poly import grothendieck, top_component

    top = top_component(grothendieck(w))
    chi = dual_character(d_top(w).diagram(), bound)
    ratio = None
    for wt in sorted(set(top.terms) | set(chi.terms)):
        a, b = top.terms.get(wt, 0), chi.terms.get(wt, 0)
        if b == 0 or a == 0:
            return Conjecture1Result(None, {"weight": list(wt), "top": a, "chi": b})
        r = Fraction(a, b)
        if ratio is None:
            ratio = r
        if r != ratio or r.denominator != 1:
            return Conjecture1Result(
                None, {"weight": list(wt), "top": a, "chi": b, "ratio": str(ratio)}
            )
    return Conjecture1Result(int(ratio), None)
