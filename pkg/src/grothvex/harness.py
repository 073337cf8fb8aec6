"""Verification suites: each runs one family of checks over a parameter range
and produces a single report."""

from __future__ import annotations

import itertools
import json
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from importlib import resources

from . import bubbling as bb
from . import polyhedra as ph
from .core import Permutation, dominated_subsets, rothe_diagram, vexillary_permutations
from .poly import grothendieck, homogeneous_component, homogenize, top_component
from .weyl import conjecture1_check, schubitope_support, theta


@dataclass
class VerificationReport:
    check: str
    range: str
    passed: bool
    counterexample: object = None
    ms: float = 0.0

    def __post_init__(self):
        if not self.passed and self.counterexample is None:
            raise ValueError("a failing report needs a counterexample")

    def to_json(self) -> dict:
        return {
            "check": self.check,
            "range": self.range,
            "pass": self.passed,
            "counterexample": self.counterexample,
            "ms": round(self.ms, 1),
        }

    def line(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        out = f"{status} {self.check} [{self.range}] {self.ms / 1000:.2f}s"
        if not self.passed:
            out += " counterexample=" + json.dumps(self.counterexample)
        return out


def load_golden(name: str):
    return json.loads(resources.files("grothvex").joinpath("golden", name).read_text())


def _vex_range(nmax: int) -> list[Permutation]:
    return [w for n in range(1, nmax + 1) for w in vexillary_permutations(n)]


def _sample(s, k=5):
    return [list(x) for x in sorted(s)[:k]]


# per-item checks: return None on success, a JSON-able dict otherwise


def check_bd_support(w: Permutation):
    weights = {d.weight() for d in bb.bd(w)}
    supp = grothendieck(w).support()
    if weights != supp:
        return {"w": str(w), "missing": _sample(supp - weights), "extra": _sample(weights - supp)}
    return None


def check_top_support(w: Permutation):
    lhs = top_component(grothendieck(w)).support()
    rhs = schubitope_support(bb.d_top(w).diagram())
    if lhs != rhs:
        return {"w": str(w), "missing": _sample(lhs - rhs), "extra": _sample(rhs - lhs)}
    return None


def _snp_and_mconvex(points) -> str | None:
    mc = ph.m_convex_check(points)
    if not mc:
        return f"exchange fails: {mc.witness}"
    lp = ph.lattice_points(ph.z_from_points(points)).points
    if lp != frozenset(points):
        return "support is not saturated"
    return None


def column_decomposition(w: Permutation) -> set:
    """Minkowski sum over columns of lifted one-column point sets."""
    D, _ = rothe_diagram(w)
    A = bb.distinguished_squares(w).by_column()
    n = w.n
    total = {(0,) * (n + 1)}
    for j, col in enumerate(D.columns(), start=1):
        if not col:
            continue
        if j in A:
            pts = ph.lifted_column_points(col, A[j].row, n).points
        else:
            pts = {tuple(1 if i in B else 0 for i in range(1, n + 1)) + (0,) for B in dominated_subsets(col, n)}
        total = {tuple(a + b for a, b in zip(p, q)) for p in total for q in pts}
    return total


def check_mconvex_supports(w: Permutation):
    G = grothendieck(w)
    H = homogenize(G).support()
    problem = _snp_and_mconvex(H)
    if problem:
        return {"w": str(w), "polynomial": "homogenized", "problem": problem}
    if column_decomposition(w) != H:
        return {"w": str(w), "problem": "support differs from the sum of lifted columns"}
    for d in range(G.min_degree(), G.degree() + 1):
        problem = _snp_and_mconvex(homogeneous_component(G, d).support())
        if problem:
            return {"w": str(w), "degree": d, "problem": problem}
    return None


def check_sbd(w: Permutation):
    supp = grothendieck(w).support()
    sbd = bb.enumerate_sbd(w)
    if {d.weight() for d in sbd} != supp:
        return {"w": str(w), "problem": "SBD weights differ from the support"}
    explicit = set()
    for f in itertools.product(*(range(x + 1) for x in bb.f_top(w))):
        cols = [dominated_subsets(c, w.n) if c else [frozenset()] for c in bb.d_f(w, f).columns()]
        for combo in itertools.product(*cols):
            explicit.add(frozenset((r, j) for j, c in enumerate(combo, start=1) for r in c))
    if explicit != {d.cells() for d in sbd}:
        return {"w": str(w), "problem": "SBD cell sets differ from the fill description"}
    return None


def check_removedead(w: Permutation):
    family = bb.bd(w)
    supp = grothendieck(w).support()
    for d in sorted(family, key=lambda x: x.sorted_squares()):
        for i in range(1, w.n + 1):
            wt = list(d.weight())
            wt[i - 1] -= 1
            if wt[i - 1] < 0 or tuple(wt) not in supp:
                continue
            try:
                bb.remove_dead_check(w, d, i, family=family, support=supp)
            except bb.NoWitness:
                return {"w": str(w), "row": i, "diagram": d.to_json()}
        try:
            bb.top_witness(w, d, family=family)
        except bb.NoWitness:
            return {"w": str(w), "problem": "no top witness", "diagram": d.to_json()}
    return None


def check_bdchar(w: Permutation):
    seed = bb.rothe_bubbling(w)
    family = bb.enumerate_bd(seed)
    for d in family:
        adm = bb.is_admissible(seed, d.cells(), d.dead_cells())
        if not adm:
            return {"w": str(w), "problem": f"reachable but fails condition {adm.condition}", "diagram": d.to_json()}
        if bb.infer_ranks(seed, d.cells(), d.dead_cells()) != d:
            return {"w": str(w), "problem": "inferred ranks differ", "diagram": d.to_json()}
    reach = {(d.cells(), d.dead_cells()) for d in family}
    targets = bb.admissible_targets(seed)
    if targets != reach:
        extra = sorted(targets - reach, key=lambda t: sorted(t[0]))
        return {"w": str(w), "problem": "admissible but unreachable", "example": [sorted(x) for x in extra[0]] if extra else None}
    for Dp, Fp in targets:
        last = bb.canonical_sequence(seed, Dp, Fp)[-1]
        if (last.cells(), last.dead_cells()) != (Dp, Fp):
            return {"w": str(w), "problem": "canonical sequence misses target", "target": [sorted(Dp), sorted(Fp)]}
    return None


def check_top_multiple(w: Permutation):
    res = conjecture1_check(w)
    if not res.ok:
        return {"w": str(w), **res.counterexample}
    return None


def check_matrices(n: int):
    A = ph.a_matrix(n)
    if n in (3, 4):
        if A != load_golden(f"a{n}.json")["rows"]:
            return {"n": n, "problem": "differs from golden matrix"}
    if n > 1:
        prev = ph.a_matrix(n - 1)
        m = len(prev)
        if [row[:m] for row in A[:m]] != prev:
            return {"n": n, "problem": "upper-left block differs from the previous matrix"}
    det = ph.bareiss_det(A)
    if det != 1:
        return {"n": n, "det": det}
    return None


def check_rank_basis(n: int):
    for I in ph.vn_order(n):
        c = ph.basis_expansion(ph.rank_function(I, n))
        if c != {I: 1}:
            return {"n": n, "I": sorted(I), "expansion": ph.expansion_to_json(c)}
    for w in vexillary_permutations(n):
        D, _ = rothe_diagram(w)
        cols = [c for c in D.columns() if c]
        z = ph.zero_function(n)
        for c in cols:
            z = z + ph.rank_function(c, n)
        if cols and ph.z_from_points(schubitope_support(D)) != z:
            return {"w": str(w), "problem": "Schubitope function is not the sum of column ranks"}
        res = ph.is_schubitope(z)
        want: dict = {}
        for c in cols:
            want[c] = want.get(c, 0) + 1
        if not res.ok or res.expansion != want:
            return {"w": str(w), "expansion": ph.expansion_to_json(res.expansion)}
    return None


def check_onecolumn(n: int):
    universe = range(1, n + 1)
    for size in range(1, n + 1):
        for S in itertools.combinations(universe, size):
            for s in S:
                problem = _one_column(frozenset(S), s, n)
                if problem:
                    return {"n": n, "S": list(S), "s": s, "problem": problem}
    return None


def _one_column(S: frozenset, s: int, n: int) -> str | None:
    d = ph.fill_depth(S, s)
    fills = [ph.column_fill(S, s, k) for k in range(d + 1)]
    if not set(range(1, s + 1)) <= fills[-1]:
        return "full fill does not contain [s]"
    for mask in range(1 << n):
        J = ph.from_mask(mask)
        ranks = [theta(F, J, n) for F in fills]
        steps = [b - a for a, b in zip(ranks, ranks[1:])]
        if any(x not in (0, 1) for x in steps):
            return f"rank step outside {{0,1}} at J={sorted(J)}"
        if 0 in steps and any(steps[steps.index(0):]):
            return f"rank grows again after a zero step at J={sorted(J)}"
        for k, r in enumerate(ranks):
            if r != min(ranks[-1], ranks[0] + k):
                return f"min-formula fails at k={k}, J={sorted(J)}"
        for k in range(d):
            if steps[k] == 0:
                for sub in range(mask):
                    if sub & mask == sub and theta(fills[k + 1], ph.from_mask(sub), n) != theta(fills[k], ph.from_mask(sub), n):
                        return f"zero step not inherited by subset {sorted(ph.from_mask(sub))}"
    z = ph.one_column_function(S, s, n)
    if not ph.is_submodular(z):
        return "lifted function not submodular"
    pts = ph.lifted_column_points(S, s, n)
    if ph.lattice_points(z).points != pts.points:
        return "lattice points differ from lifted points"
    if not ph.m_convex_check(pts):
        return "lifted points not M-convex"
    return None


def counterexample_expansion(key: str, cache_dir=None) -> dict:
    from .cache import cached_grothendieck
    from .core import length

    entry = load_golden("counterexamples.json")[key]
    w = Permutation.parse(entry["w"])
    G = cached_grothendieck(w, cache_dir)
    if entry["component"] == "top":
        comp = top_component(G)
    else:
        comp = homogeneous_component(G, length(w) + 1)
    z = ph.z_from_points(comp.support())
    return {"w": w, "z": z, "golden": entry["expansion"]}


def check_counterexample(key: str, cache_dir=None):
    data = counterexample_expansion(key, cache_dir)
    z = data["z"]
    if not ph.is_submodular(z):
        return {"w": key, "problem": "z is not submodular"}
    res = ph.is_schubitope(z)
    got = ph.expansion_to_json(res.expansion)
    want = sorted(data["golden"], key=lambda t: (len(t["I"]), t["I"]))
    if sorted(got, key=lambda t: (len(t["I"]), t["I"])) != want:
        return {"w": key, "got": got, "want": data["golden"]}
    if res.ok:
        return {"w": key, "problem": "unexpectedly a Schubitope"}
    if not any(Fraction(t["c"]) < 0 for t in got):
        return {"w": key, "problem": "no negative coefficient"}
    return None


SUITES = {
    "theorem1": (check_bd_support, "vex", 5),
    "theorem2": (check_top_support, "vex", 6),
    "theorem3": (check_mconvex_supports, "vex", 6),
    "theorem4": (check_rank_basis, "n", 4),
    "sbd": (check_sbd, "vex", 5),
    "removedead": (check_removedead, "vex", 5),
    "bdchar": (check_bdchar, "vex", 5),
    "matrices": (check_matrices, "n", 8),
    "onecolumn": (check_onecolumn, "n", 5),
    "counterexamples": (check_counterexample, "cx", None),
    "conjecture1": (check_top_multiple, "vex", 5),
}

NMAX_LIMITS = {"vex": 7, "n": 10}


def _items(kind: str, nmax):
    if kind == "vex":
        return _vex_range(nmax), f"vexillary S_1..S_{nmax}"
    if kind == "n":
        return list(range(1, nmax + 1)), f"n=1..{nmax}"
    keys = list(load_golden("counterexamples.json"))
    return keys, ", ".join(keys)


def run_suite(name: str, nmax: int | None = None, jobs: int = 1, cache_dir=None) -> VerificationReport:
    fn, kind, default = SUITES[name]
    if nmax is None:
        nmax = default
    if kind in NMAX_LIMITS and nmax > NMAX_LIMITS[kind]:
        from .core import BoundExceeded

        raise BoundExceeded(f"--nmax {nmax} above the limit {NMAX_LIMITS[kind]} for {name}")
    items, label = _items(kind, nmax)
    start = time.perf_counter()
    if kind == "cx":
        results = [fn(k, cache_dir) for k in items]
    elif jobs > 1 and len(items) > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            results = list(pool.map(fn, items, chunksize=max(1, len(items) // (4 * jobs))))
    else:
        results = [fn(x) for x in items]
    ms = (time.perf_counter() - start) * 1000
    failure = next((r for r in results if r is not None), None)
    return VerificationReport(name, label, failure is None, failure, ms)
