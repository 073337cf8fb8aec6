"""Set functions, generalized permutahedra, M-convexity and the Schubert
matroid rank basis.

Subsets of ``[n]`` are stored as bitmasks: element ``i`` is bit ``i - 1``.
"""

from __future__ import annotations

import csv
import functools
import io
from dataclasses import dataclass
from fractions import Fraction
from math import ceil, floor, lcm
from typing import Iterable, NamedTuple

import numpy as np

from .core import BoundExceeded, dominated_subsets
from .weyl import theta, theta_mask

A_MATRIX_MAX_N = 10
EXACT_SOLVE_MAX_N = 7


def to_mask(S: Iterable[int]) -> int:
    m = 0
    for i in S:
        m |= 1 << (i - 1)
    return m


def from_mask(m: int) -> frozenset:
    out, i = [], 1
    while m:
        if m & 1:
            out.append(i)
        m >>= 1
        i += 1
    return frozenset(out)


def subset_label(S: Iterable[int]) -> str:
    return "{" + ",".join(str(i) for i in sorted(S)) + "}"


@dataclass(frozen=True)
class SetFunction:
    n: int
    values: tuple

    def __post_init__(self):
        vals = tuple(Fraction(v) for v in self.values)
        if len(vals) != 1 << self.n:
            raise ValueError(f"need {1 << self.n} values, got {len(vals)}")
        if vals[0] != 0:
            raise ValueError("value at the empty set must be 0")
        object.__setattr__(self, "values", vals)

    @classmethod
    def from_callable(cls, n: int, f) -> SetFunction:
        return cls(n, tuple(f(from_mask(m)) for m in range(1 << n)))

    def __call__(self, S) -> Fraction:
        return self.values[S if isinstance(S, int) else to_mask(S)]

    def __add__(self, other: SetFunction) -> SetFunction:
        if self.n != other.n:
            raise ValueError("ground sets differ")
        return SetFunction(self.n, tuple(a + b for a, b in zip(self.values, other.values)))

    def scale(self, c) -> SetFunction:
        return SetFunction(self.n, tuple(c * v for v in self.values))

    def full(self) -> Fraction:
        return self.values[-1]

    def to_json(self) -> dict:
        return {"n": self.n, "values": [str(v) for v in self.values]}


def zero_function(n: int) -> SetFunction:
    return SetFunction(n, (0,) * (1 << n))


@dataclass(frozen=True)
class PointSet:
    dim: int
    points: frozenset

    def __post_init__(self):
        pts = frozenset(tuple(int(x) for x in p) for p in self.points)
        if any(len(p) != self.dim for p in pts):
            raise ValueError(f"all points must have dimension {self.dim}")
        object.__setattr__(self, "points", pts)

    @classmethod
    def of(cls, points: Iterable) -> PointSet:
        pts = frozenset(tuple(p) for p in points)
        if not pts:
            raise ValueError("empty point set; use PointSet(dim, frozenset()) explicitly")
        return cls(len(next(iter(pts))), pts)

    def __len__(self):
        return len(self.points)

    def __iter__(self):
        return iter(sorted(self.points))

    def __contains__(self, p):
        return tuple(p) in self.points


def _points(P) -> PointSet:
    return P if isinstance(P, PointSet) else PointSet.of(P)


# submodularity


def is_submodular(z: SetFunction) -> bool:
    """Local criterion: ``z(I+a) + z(I+b) >= z(I+a+b) + z(I)`` for ``a, b`` outside ``I``."""
    v = z.values
    n = z.n
    for m in range(1 << n):
        free = [1 << i for i in range(n) if not m & (1 << i)]
        for x in range(len(free)):
            for y in range(x + 1, len(free)):
                a, b = free[x], free[y]
                if v[m | a] + v[m | b] < v[m | a | b] + v[m]:
                    return False
    return True


def is_submodular_bruteforce(z: SetFunction) -> bool:
    v = z.values
    N = 1 << z.n
    return all(v[I] + v[J] >= v[I | J] + v[I & J] for I in range(N) for J in range(N))


def _indicator_matrix(n: int) -> np.ndarray:
    masks = np.arange(1 << n)
    return ((masks[:, None] >> np.arange(n)[None, :]) & 1).astype(np.int64)


def z_from_points(P) -> SetFunction:
    """``z(I) = max_p sum_{i in I} p_i``."""
    P = _points(P)
    if not P.points:
        raise ValueError("z_from_points needs a nonempty point set")
    arr = np.array(sorted(P.points), dtype=np.int64)
    sums = _indicator_matrix(P.dim) @ arr.T
    return SetFunction(P.dim, tuple(int(x) for x in sums.max(axis=1)))


class MConvexResult(NamedTuple):
    ok: bool
    witness: tuple | None = None  # (x, y, i) with no valid exchange partner

    def __bool__(self):
        return self.ok


def m_convex_check(P) -> MConvexResult:
    """Symmetric exchange axiom, checked pair by pair."""
    P = _points(P)
    pts = P.points
    sums = {sum(p) for p in pts}
    if len(sums) > 1:
        return MConvexResult(False, ("coordinate sums differ", sorted(sums)))
    for x in pts:
        for y in pts:
            if x == y:
                continue
            for i in range(P.dim):
                if x[i] <= y[i]:
                    continue
                found = False
                for j in range(P.dim):
                    if x[j] >= y[j]:
                        continue
                    a = list(x)
                    a[i] -= 1
                    a[j] += 1
                    b = list(y)
                    b[j] -= 1
                    b[i] += 1
                    if tuple(a) in pts and tuple(b) in pts:
                        found = True
                        break
                if not found:
                    return MConvexResult(False, (x, y, i + 1))
    return MConvexResult(True)


def lattice_points(z: SetFunction) -> PointSet:
    """Integer points of ``{t : sum_I t <= z(I), sum t = z([n])}``."""
    if not is_submodular(z):
        raise ValueError("lattice_points needs a submodular function")
    n = z.n
    v = z.values
    full_mask = (1 << n) - 1
    total = v[full_mask]
    if total.denominator != 1:
        return PointSet(n, frozenset())
    total = int(total)
    lo = [ceil(total - v[full_mask ^ (1 << i)]) for i in range(n)]
    hi = [floor(v[1 << i]) for i in range(n)]
    out = []
    t = [0] * n

    def rec(i: int, partial: int):
        if i == n:
            if partial == total:
                out.append(tuple(t))
            return
        rest_lo = sum(lo[i + 1:])
        rest_hi = sum(hi[i + 1:])
        bit = 1 << i
        for val in range(lo[i], hi[i] + 1):
            s = partial + val
            if s + rest_lo > total or s + rest_hi < total:
                continue
            t[i] = val
            # every subset whose largest element is i + 1
            ok = True
            for sub in range(1 << i):
                acc = val
                m = sub
                k = 0
                while m:
                    if m & 1:
                        acc += t[k]
                    m >>= 1
                    k += 1
                if acc > v[sub | bit]:
                    ok = False
                    break
            if ok:
                rec(i + 1, s)
        t[i] = 0

    rec(0, 0)
    return PointSet(n, frozenset(out))


# the V_n order and the rank matrix


def _vn_cmp(I: frozenset, J: frozenset) -> int:
    if I == J:
        return 0
    a = max(I - J, default=0)
    b = max(J - I, default=0)
    return -1 if a <= b else 1


def vn_order(n: int) -> list[frozenset]:
    subsets = [from_mask(m) for m in range(1, 1 << n)]
    return sorted(subsets, key=functools.cmp_to_key(_vn_cmp))


def _check_n(n: int):
    if n < 1 or n > A_MATRIX_MAX_N:
        raise BoundExceeded(f"n={n} outside 1..{A_MATRIX_MAX_N}")


def a_matrix(n: int) -> list[list[int]]:
    """Rows ``I`` and columns ``J`` in V_n order; entry is the rank of ``J`` in SM_n(I)."""
    _check_n(n)
    masks = [to_mask(S) for S in vn_order(n)]
    return _theta_table(masks, n).tolist()


def _theta_table(masks: list[int], n: int) -> np.ndarray:
    # parenthesis matching run on all (I, J) pairs at once
    m = np.array(masks, dtype=np.int64)
    I, J = m[:, None], m[None, :]
    opened = np.zeros((len(masks), len(masks)), dtype=np.int64)
    total = np.zeros_like(opened)
    for k in range(n):
        i_bit = (I >> k) & 1
        j_bit = (J >> k) & 1
        star = i_bit & j_bit
        close = i_bit & (1 - j_bit) & (opened > 0)
        total += star + close
        opened += (1 - i_bit) * j_bit - close
    return total


def a_matrix_csv(n: int) -> str:
    order = vn_order(n)
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow([""] + [subset_label(J) for J in order])
    for I, row in zip(order, a_matrix(n)):
        writer.writerow([subset_label(I)] + row)
    return buf.getvalue()


def rank_function(I: Iterable[int], n: int) -> SetFunction:
    I = to_mask(I)
    return SetFunction(n, tuple(theta_mask(I, m, n) for m in range(1 << n)))


def bareiss_det(M: list[list[int]]) -> int:
    A = [list(map(int, row)) for row in M]
    N = len(A)
    sign, prev = 1, 1
    for k in range(N - 1):
        if A[k][k] == 0:
            swap = next((r for r in range(k + 1, N) if A[r][k] != 0), None)
            if swap is None:
                return 0
            A[k], A[swap] = A[swap], A[k]
            sign = -sign
        piv = A[k][k]
        for i in range(k + 1, N):
            aik = A[i][k]
            row_i, row_k = A[i], A[k]
            for j in range(k + 1, N):
                row_i[j] = (row_i[j] * piv - aik * row_k[j]) // prev
        prev = piv
    return sign * A[N - 1][N - 1] if N else 1


def bareiss_solve(M: list[list[int]], b: list[int]) -> list[Fraction]:
    """Exact solution of ``M x = b`` by fraction-free elimination."""
    N = len(M)
    A = [list(map(int, row)) + [int(bi)] for row, bi in zip(M, b)]
    prev = 1
    for k in range(N):
        if A[k][k] == 0:
            swap = next((r for r in range(k + 1, N) if A[r][k] != 0), None)
            if swap is None:
                raise ArithmeticError("singular system")
            A[k], A[swap] = A[swap], A[k]
        piv = A[k][k]
        for i in range(k + 1, N):
            aik = A[i][k]
            row_i, row_k = A[i], A[k]
            for j in range(k + 1, N + 1):
                row_i[j] = (row_i[j] * piv - aik * row_k[j]) // prev
            row_i[k] = 0
        prev = piv
    x = [Fraction(0)] * N
    for i in range(N - 1, -1, -1):
        s = Fraction(A[i][N]) - sum(A[i][j] * x[j] for j in range(i + 1, N))
        x[i] = s / A[i][i]
    return x


@functools.lru_cache(maxsize=None)
def _a_matrix_cached(n: int) -> tuple:
    return tuple(tuple(r) for r in a_matrix(n))


def _rhs(z: SetFunction, order) -> tuple[list[int], int]:
    vals = [z(J) for J in order]
    den = lcm(*(v.denominator for v in vals)) if vals else 1
    return [int(v * den) for v in vals], den


def _exact_residual_zero(A: np.ndarray, x: list[int], b: list[int]) -> bool:
    """``A x == b`` in exact integer arithmetic (int64 when overflow is impossible)."""
    limit = 2**62
    row_sum = int(np.abs(A).sum(axis=1).max(initial=0))
    if max(map(abs, x), default=0) * row_sum < limit and max(map(abs, b), default=0) < limit:
        return bool((A @ np.array(x, dtype=np.int64) == np.array(b, dtype=np.int64)).all())
    lhs = A.astype(object) @ np.array(x, dtype=object)
    return all(int(u) == v for u, v in zip(lhs, b))


def basis_expansion(z: SetFunction) -> dict[frozenset, Fraction]:
    """Coefficients ``c`` with ``sum_I c_I r_{SM_n(I)} = z`` on nonempty sets.

    Small ``n`` is solved by exact elimination. Larger systems are solved in
    floating point, rounded, and accepted only if the exact integer residual is
    zero; otherwise they fall back to exact elimination.
    """
    n = z.n
    _check_n(n)
    order = vn_order(n)
    A = _a_matrix_cached(n)
    b, den = _rhs(z, order)
    At = np.array(A, dtype=np.int64).T
    coeffs = None
    if n > EXACT_SOLVE_MAX_N:
        guess = np.linalg.solve(At.astype(float), np.array(b, dtype=float))
        cand = [int(round(g)) for g in guess]
        if _exact_residual_zero(At, cand, b):
            coeffs = [Fraction(c) for c in cand]
    if coeffs is None:
        coeffs = bareiss_solve(At.tolist(), b)
        # det(A_n) = 1, so integer right-hand sides must give integer solutions
        if any(c.denominator != 1 for c in coeffs):
            raise ArithmeticError("non-integral solution of a unimodular system")
        if not _exact_residual_zero(At, [int(c) for c in coeffs], b):
            raise ArithmeticError("basis expansion residual is nonzero")
    return {I: c / den for I, c in zip(order, coeffs) if c}


def reconstruct(n: int, coeffs: dict) -> SetFunction:
    total = zero_function(n)
    for I, c in coeffs.items():
        total = total + rank_function(I, n).scale(c)
    return total


def expansion_to_json(coeffs: dict) -> list[dict]:
    order = {I: k for k, I in enumerate(vn_order(max((max(I) for I in coeffs), default=1)))}
    items = sorted(coeffs.items(), key=lambda t: (order.get(t[0], 0), sorted(t[0])))
    return [{"I": sorted(I), "c": str(c)} for I, c in items if c]


class SchubitopeResult(NamedTuple):
    ok: bool
    expansion: dict

    def __bool__(self):
        return self.ok


def is_schubitope(z: SetFunction) -> SchubitopeResult:
    """Nonnegative integer expansion in the rank basis.

    The all-zero function counts as a Schubitope (the empty diagram).
    """
    if not is_submodular(z):
        raise ValueError("is_schubitope needs a submodular function")
    c = basis_expansion(z)
    ok = all(v >= 0 and v.denominator == 1 for v in c.values())
    return SchubitopeResult(ok, c)


# one-column fills and lifted polytopes


def fill_depth(S: Iterable[int], s: int) -> int:
    S = set(S)
    if s not in S:
        raise ValueError(f"{s} is not in {sorted(S)}")
    return s - sum(1 for i in S if i <= s)


def column_fill(S: Iterable[int], s: int, k: int) -> frozenset:
    """Add, ``k`` times, the largest row above ``s`` not yet in the column."""
    S = set(S)
    d = fill_depth(S, s)
    if k < 0 or k > d:
        raise ValueError(f"fill count {k} outside 0..{d}")
    for _ in range(k):
        S.add(max(i for i in range(1, s) if i not in S))
    return frozenset(S)


def lifted_column_points(S: Iterable[int], s: int, n: int) -> PointSet:
    S = frozenset(S)
    d = fill_depth(S, s)
    pts = set()
    for k in range(d + 1):
        for B in dominated_subsets(column_fill(S, s, k), n):
            pts.add(tuple(1 if i in B else 0 for i in range(1, n + 1)) + (d - k,))
    return PointSet(n + 1, frozenset(pts))


def one_column_function(S: Iterable[int], s: int, n: int) -> SetFunction:
    """Rank of the fully filled column on sets avoiding ``n+1``; otherwise the
    rank of ``S`` plus the fill depth."""
    S = frozenset(S)
    d = fill_depth(S, s)
    top = column_fill(S, s, d)
    last = n + 1

    def z(I: frozenset):
        if last in I:
            return theta(S, I - {last}, n) + d
        return theta(top, I, n)

    return SetFunction.from_callable(n + 1, z)
