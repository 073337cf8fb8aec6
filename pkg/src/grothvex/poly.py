"""Sparse multivariate integer polynomials and divided-difference operators.

Polynomials are dictionaries from exponent tuples to nonzero ``int``
coefficients. Grothendieck and Schubert polynomials are computed by the
(isobaric) divided-difference recursion down from the longest word.
"""

from __future__ import annotations

import threading
from collections import defaultdict
from dataclasses import dataclass, field
from typing import Iterable, Mapping

from .core import Permutation

Exponent = tuple[int, ...]


class RemainderError(ArithmeticError):
    """Exact division by ``x_j - x_{j+1}`` left a nonzero remainder."""


@dataclass(frozen=True)
class MultiPoly:
    nvars: int
    terms: Mapping[Exponent, int] = field(default_factory=dict)

    def __post_init__(self):
        clean = {}
        for e, c in self.terms.items():
            e = tuple(e)
            if len(e) != self.nvars:
                raise ValueError(f"exponent {e} has length != {self.nvars}")
            if c:
                clean[e] = int(c)
        object.__setattr__(self, "terms", clean)

    # constructors

    @classmethod
    def zero(cls, nvars: int) -> MultiPoly:
        return cls(nvars, {})

    @classmethod
    def one(cls, nvars: int) -> MultiPoly:
        return cls(nvars, {(0,) * nvars: 1})

    @classmethod
    def monomial(cls, exponent: Iterable[int], coeff: int = 1) -> MultiPoly:
        exponent = tuple(exponent)
        return cls(len(exponent), {exponent: coeff})

    @classmethod
    def var(cls, i: int, nvars: int) -> MultiPoly:
        """The variable ``x_i`` (1-indexed)."""
        e = [0] * nvars
        e[i - 1] = 1
        return cls(nvars, {tuple(e): 1})

    # ring structure

    def _check(self, other: MultiPoly):
        if self.nvars != other.nvars:
            raise ValueError(f"nvars mismatch: {self.nvars} vs {other.nvars}")

    def __add__(self, other: MultiPoly) -> MultiPoly:
        self._check(other)
        out = dict(self.terms)
        for e, c in other.terms.items():
            out[e] = out.get(e, 0) + c
        return MultiPoly(self.nvars, out)

    def __neg__(self) -> MultiPoly:
        return MultiPoly(self.nvars, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other: MultiPoly) -> MultiPoly:
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, int):
            return self.scale(other)
        self._check(other)
        out: dict = defaultdict(int)
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                out[tuple(a + b for a, b in zip(e1, e2))] += c1 * c2
        return MultiPoly(self.nvars, out)

    __rmul__ = __mul__

    def scale(self, c: int) -> MultiPoly:
        return MultiPoly(self.nvars, {e: c * v for e, v in self.terms.items()})

    def __eq__(self, other):
        if not isinstance(other, MultiPoly):
            return NotImplemented
        return self.nvars == other.nvars and self.terms == other.terms

    def __hash__(self):
        return hash((self.nvars, frozenset(self.terms.items())))

    def __bool__(self):
        return bool(self.terms)

    def __len__(self):
        return len(self.terms)

    # inspection

    def support(self) -> set[Exponent]:
        return set(self.terms)

    def degree(self) -> int:
        if not self.terms:
            raise ValueError("degree of the zero polynomial")
        return max(sum(e) for e in self.terms)

    def min_degree(self) -> int:
        if not self.terms:
            raise ValueError("min degree of the zero polynomial")
        return min(sum(e) for e in self.terms)

    def sorted_terms(self) -> list[tuple[Exponent, int]]:
        """Terms in graded-lex order (total degree, then exponent tuple)."""
        return sorted(self.terms.items(), key=lambda t: (sum(t[0]), t[0]))

    def swap_vars(self, j: int) -> MultiPoly:
        """``s_j . f``: exchange ``x_j`` and ``x_{j+1}``."""
        out = {}
        for e, c in self.terms.items():
            e = list(e)
            e[j - 1], e[j] = e[j], e[j - 1]
            out[tuple(e)] = c
        return MultiPoly(self.nvars, out)

    def __str__(self):
        if not self.terms:
            return "0"
        parts = []
        for e, c in self.sorted_terms():
            mono = "*".join(
                f"x{i}" if a == 1 else f"x{i}^{a}" for i, a in enumerate(e, start=1) if a
            )
            if not mono:
                parts.append(str(c))
            elif c == 1:
                parts.append(mono)
            elif c == -1:
                parts.append("-" + mono)
            else:
                parts.append(f"{c}*{mono}")
        return " + ".join(parts).replace("+ -", "- ")

    def __repr__(self):
        return f"MultiPoly({self.nvars}, {str(self)})"

    def to_json(self) -> dict:
        return {
            "nvars": self.nvars,
            "terms": [{"e": list(e), "c": str(c)} for e, c in self.sorted_terms()],
        }

    @classmethod
    def from_json(cls, data: Mapping) -> MultiPoly:
        return cls(data["nvars"], {tuple(t["e"]): int(t["c"]) for t in data["terms"]})


def _check_index(f: MultiPoly, j: int):
    if not 1 <= j <= f.nvars - 1:
        raise ValueError(f"index j={j} out of range 1..{f.nvars - 1}")


def divide_by_difference(g: MultiPoly, j: int) -> MultiPoly:
    """Exact quotient ``g / (x_j - x_{j+1})`` by synthetic division in ``x_j``.

    Raises RemainderError when the division is not exact.
    """
    _check_index(g, j)
    a, b = j - 1, j
    # group by the exponent vector with x_j removed; coefficient lists indexed by deg in x_j
    rows: dict[Exponent, dict[int, int]] = defaultdict(dict)
    for e, c in g.terms.items():
        rest = e[:a] + (0,) + e[a + 1:]
        rows[rest][e[a]] = c
    # synthetic division by (x_j - c), c = x_{j+1}: q_{k-1} = g_k + c*q_k
    # carries move between "rest" vectors because c shifts the x_{j+1} exponent
    quotient: dict[Exponent, int] = {}
    top = max((max(d) for d in rows.values()), default=0)
    carry: dict[Exponent, int] = {}
    for k in range(top, 0, -1):
        level: dict[Exponent, int] = defaultdict(int)
        for rest, coeffs in rows.items():
            if k in coeffs:
                level[rest] += coeffs[k]
        for rest, c in carry.items():
            shifted = list(rest)
            shifted[b] += 1
            level[tuple(shifted)] += c
        carry = {r: c for r, c in level.items() if c}
        for rest, c in carry.items():
            e = list(rest)
            e[a] = k - 1
            quotient[tuple(e)] = c
    remainder: dict[Exponent, int] = defaultdict(int)
    for rest, coeffs in rows.items():
        if 0 in coeffs:
            remainder[rest] += coeffs[0]
    for rest, c in carry.items():
        shifted = list(rest)
        shifted[b] += 1
        remainder[tuple(shifted)] += c
    if any(remainder.values()):
        raise RemainderError(f"nonzero remainder dividing by x{j} - x{j + 1}")
    return MultiPoly(g.nvars, quotient)


def divided_difference(f: MultiPoly, j: int) -> MultiPoly:
    """``(f - s_j f) / (x_j - x_{j+1})``."""
    _check_index(f, j)
    return divide_by_difference(f - f.swap_vars(j), j)


def _dd_into(out: dict, e: Exponent, c: int, a: int):
    # closed form of the divided difference of one monomial, accumulated into out
    p, q = e[a], e[a + 1]
    if p == q:
        return
    if p < q:
        p, q, c = q, p, -c
    e = list(e)
    for t in range(p - q):
        e[a] = p - 1 - t
        e[a + 1] = q + t
        key = tuple(e)
        out[key] = out.get(key, 0) + c


def isobaric_dd(f: MultiPoly, j: int) -> MultiPoly:
    """``d_j(f - x_{j+1} f)``, computed monomial by monomial."""
    _check_index(f, j)
    a = j - 1
    out: dict = {}
    for e, c in f.terms.items():
        _dd_into(out, e, c, a)
        bumped = list(e)
        bumped[a + 1] += 1
        _dd_into(out, tuple(bumped), -c, a)
    return MultiPoly(f.nvars, out)


def chain_to_top(w: Permutation) -> tuple[list[Permutation], list[int]]:
    """Saturated chain ``w = u_0 < u_1 < ... < u_m = w0`` with ``u_{t+1} = u_t s_{j_t}``,
    always taking the smallest ascent."""
    perms, js = [w], []
    while True:
        asc = perms[-1].ascents()
        if not asc:
            return perms, js
        js.append(asc[0])
        perms.append(perms[-1].swap(asc[0]))


def staircase(n: int) -> MultiPoly:
    return MultiPoly.monomial(tuple(range(n - 1, -1, -1)))


class _Memo:
    """Process-wide memo table; concurrent writers store identical values."""

    def __init__(self):
        self._lock = threading.Lock()
        self._data: dict = {}

    def get(self, key):
        return self._data.get(key)

    def put(self, key, value):
        with self._lock:
            self._data[key] = value

    def clear(self):
        with self._lock:
            self._data.clear()


_GROTH = _Memo()
_SCHUB = _Memo()


def _descend(w: Permutation, memo: _Memo, op) -> MultiPoly:
    hit = memo.get(w.entries)
    if hit is not None:
        return hit
    perms, js = chain_to_top(w)
    top = len(perms) - 1
    cur = None
    for t, u in enumerate(perms):
        cur = memo.get(u.entries)
        if cur is not None:
            top = t
            break
    if cur is None:
        cur = staircase(w.n)
        memo.put(perms[top].entries, cur)
    for t in range(top - 1, -1, -1):
        cur = op(cur, js[t])
        memo.put(perms[t].entries, cur)
    return cur


def grothendieck(w: Permutation) -> MultiPoly:
    """Grothendieck polynomial of ``w`` in ``w.n`` variables."""
    return _descend(w, _GROTH, isobaric_dd)


def schubert(w: Permutation) -> MultiPoly:
    """Schubert polynomial of ``w`` by the ordinary divided-difference recursion."""
    return _descend(w, _SCHUB, divided_difference)


def seed_grothendieck(w: Permutation, poly: MultiPoly):
    """Insert a known value (e.g. loaded from a disk cache) into the memo table."""
    _GROTH.put(w.entries, poly)


def clear_memo():
    _GROTH.clear()
    _SCHUB.clear()


def homogeneous_component(f: MultiPoly, d: int) -> MultiPoly:
    return MultiPoly(f.nvars, {e: c for e, c in f.terms.items() if sum(e) == d})


def top_component(f: MultiPoly) -> MultiPoly:
    if not f:
        raise ValueError("top component of the zero polynomial")
    return homogeneous_component(f, f.degree())


def homogenize(f: MultiPoly) -> MultiPoly:
    """Append a variable ``z`` so every term has degree ``deg(f)``."""
    if not f:
        raise ValueError("cannot homogenize the zero polynomial")
    top = f.degree()
    return MultiPoly(f.nvars + 1, {e + (top - sum(e),): c for e, c in f.terms.items()})
