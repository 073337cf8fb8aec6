"""Command-line interface.

Exit codes: 0 success, 1 verification failure, 2 usage or parse error,
3 resource bound exceeded.
"""

from __future__ import annotations

import argparse
import json
import logging
import os
import sys
from collections import Counter
from pathlib import Path

from . import bubbling as bb
from . import polyhedra as ph
from .bpd import DEFAULT_MAX_N, bpds, enumerate_mbpds, mbpd_weight
from .cache import cached_grothendieck, clear, resolve_dir
from .core import BoundExceeded, Permutation, length
from .harness import SUITES, run_suite
from .poly import MultiPoly, homogeneous_component, homogenize, top_component
from .render import bpd_svg, bubbling_svg, svg_from_json

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_BOUND = 0, 1, 2, 3
BD_MAX_STATES = 500_000


class UsageError(Exception):
    pass


def _perm(text: str) -> Permutation:
    try:
        return Permutation.parse(text)
    except ValueError as exc:
        raise UsageError(str(exc)) from exc


def _emit_poly(p: MultiPoly, args):
    if args.json:
        print(json.dumps(p.to_json()))
    elif args.terms:
        rows = p.sorted_terms()
        width = max((len(str(c)) for _, c in rows), default=1)
        for e, c in rows:
            print(f"{c:>{width}}  {MultiPoly.monomial(e)}")
    else:
        print(p)


def _groth(args) -> MultiPoly:
    return cached_grothendieck(_perm(args.w), args.cache_dir)


def cmd_groth(args):
    _emit_poly(_groth(args), args)


def cmd_top(args):
    _emit_poly(top_component(_groth(args)), args)


def cmd_component(args):
    _emit_poly(homogeneous_component(_groth(args), args.d), args)


def cmd_homogenize(args):
    _emit_poly(homogenize(_groth(args)), args)


def _weights_table(weights: Counter) -> list[tuple]:
    return sorted(weights.items())


def _emit_family(w: Permutation, family, args):
    family = sorted(family, key=lambda d: d.sorted_squares())
    weights = Counter(d.weight() for d in family)
    if args.json:
        print(
            json.dumps(
                {
                    "w": str(w),
                    "count": len(family),
                    "weights": [{"wt": list(k), "count": v} for k, v in _weights_table(weights)],
                    "diagrams": [d.to_json() for d in family] if args.show else None,
                }
            )
        )
        return
    print(f"count: {len(family)}")
    print(f"distinct weights: {len(weights)}")
    for wt, c in _weights_table(weights):
        print(f"  {wt}  x{c}")
    if args.show:
        for d in family:
            print()
            print(d.render())


def _require_vex(w: Permutation):
    from .core import is_vexillary

    if not is_vexillary(w):
        raise bb.NotVexillary(f"{w} is not vexillary (contains 2143)")


def cmd_bd(args):
    w = _perm(args.w)
    _require_vex(w)
    _emit_family(w, bb.bd(w, max_states=args.max_states), args)


def cmd_sbd(args):
    w = _perm(args.w)
    _emit_family(w, bb.enumerate_sbd(w), args)


def cmd_dtop(args):
    w = _perm(args.w)
    top = bb.d_top(w)
    if args.svg:
        Path(args.svg).write_text(bubbling_svg(top))
    if args.json:
        print(json.dumps(top.to_json()))
    else:
        print(top.render())
        print(f"weight: {top.weight()}  f_top: {bb.f_top(w)}")


def cmd_bpd(args):
    w = _perm(args.w)
    family = bpds(w, bound=args.bound)
    if args.marked:
        weights = Counter(mbpd_weight(m) for m in enumerate_mbpds(w, bound=args.bound))
        if args.json:
            print(json.dumps([{"wt": list(k), "count": v} for k, v in sorted(weights.items())]))
        else:
            for wt, c in sorted(weights.items()):
                print(f"  {wt}  x{c}")
        return
    if args.json:
        print(json.dumps({"w": str(w), "count": len(family), "bpds": [P.to_json() for P in family]}))
        return
    print(f"count: {len(family)}")
    for P in family:
        print()
        print(P.render())
    if args.svg and family:
        Path(args.svg).write_text(bpd_svg(family[0]))


def cmd_render(args):
    data = json.loads(Path(args.input).read_text())
    Path(args.svg).write_text(svg_from_json(data))


def cmd_verify(args):
    names = list(SUITES) if args.suite == "all" else [args.suite]
    ok = True
    for name in names:
        report = run_suite(name, nmax=args.nmax, jobs=args.jobs, cache_dir=args.cache_dir)
        ok &= report.passed
        print(json.dumps(report.to_json()) if args.json else report.line(), flush=True)
    return EXIT_OK if ok else EXIT_FAIL


def cmd_amatrix(args):
    if args.csv:
        sys.stdout.write(ph.a_matrix_csv(args.n))
    else:
        for row in ph.a_matrix(args.n):
            print(" ".join(str(x) for x in row))


def cmd_expand(args):
    w = _perm(args.w)
    G = _groth(args)
    comp = top_component(G) if args.degree is None else homogeneous_component(G, args.degree)
    if not comp:
        raise UsageError(f"G_{w} has no terms in degree {args.degree}")
    z = ph.z_from_points(comp.support())
    res = ph.is_schubitope(z)
    out = {
        "w": str(w),
        "degree": sum(next(iter(comp.terms))),
        "length": length(w),
        "schubitope": res.ok,
        "expansion": ph.expansion_to_json(res.expansion),
    }
    print(json.dumps(out) if args.json else json.dumps(out, indent=1))


def cmd_cache(args):
    removed = clear(args.cache_dir)
    where = resolve_dir(args.cache_dir)
    print(f"removed {removed} entries from {where}" if where else "no cache directory configured")


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="grothvex", description=__doc__.splitlines()[0])
    p.add_argument("--cache-dir", default=None, help="polynomial cache directory; GROTH_CACHE_DIR overrides it")
    p.add_argument("-v", "--verbose", action="store_true")
    sub = p.add_subparsers(dest="command", required=True)

    def poly_cmd(name, fn, helptext, extra=None):
        sp = sub.add_parser(name, help=helptext)
        sp.add_argument("w")
        if extra:
            extra(sp)
        fmt = sp.add_mutually_exclusive_group()
        fmt.add_argument("--json", action="store_true")
        fmt.add_argument("--text", action="store_true", help="one-line expression (default)")
        fmt.add_argument("--terms", action="store_true", help="one aligned term per line")
        sp.set_defaults(fn=fn)

    poly_cmd("groth", cmd_groth, "Grothendieck polynomial")
    poly_cmd("top", cmd_top, "top-degree component")
    poly_cmd("component", cmd_component, "homogeneous component of degree d",
             lambda sp: sp.add_argument("d", type=int))
    poly_cmd("homogenize", cmd_homogenize, "homogenized polynomial (last variable is z)")

    for name, fn, helptext in (("bd", cmd_bd, "bubbling diagrams of w"), ("sbd", cmd_sbd, "distinguished-dead bubbling diagrams")):
        sp = sub.add_parser(name, help=helptext)
        sp.add_argument("w")
        sp.add_argument("--json", action="store_true")
        sp.add_argument("--show", action="store_true", help="print every diagram")
        sp.add_argument("--max-states", type=int, default=BD_MAX_STATES)
        sp.set_defaults(fn=fn)

    sp = sub.add_parser("dtop", help="top bubbling diagram")
    sp.add_argument("w")
    sp.add_argument("--json", action="store_true")
    sp.add_argument("--svg")
    sp.set_defaults(fn=cmd_dtop)

    sp = sub.add_parser("bpd", help="bumpless pipe dreams of w")
    sp.add_argument("w")
    sp.add_argument("--json", action="store_true")
    sp.add_argument("--marked", action="store_true", help="weights of marked BPDs")
    sp.add_argument("--bound", type=int, default=DEFAULT_MAX_N)
    sp.add_argument("--svg", help="draw the first BPD")
    sp.set_defaults(fn=cmd_bpd)

    sp = sub.add_parser("render", help="SVG from a JSON diagram, bubbling diagram or BPD")
    sp.add_argument("input")
    sp.add_argument("--svg", required=True)
    sp.set_defaults(fn=cmd_render)

    sp = sub.add_parser("verify", help="run a verification suite")
    sp.add_argument("suite", choices=[*SUITES, "all"])
    sp.add_argument("--nmax", type=int)
    sp.add_argument("--jobs", type=int, default=os.cpu_count() or 1)
    sp.add_argument("--json", action="store_true")
    sp.set_defaults(fn=cmd_verify)

    sp = sub.add_parser("amatrix", help="Schubert matroid rank matrix in V_n order")
    sp.add_argument("n", type=int)
    sp.add_argument("--csv", action="store_true")
    sp.set_defaults(fn=cmd_amatrix)

    sp = sub.add_parser("expand", help="rank-basis expansion of a component's Newton polytope")
    sp.add_argument("w")
    sp.add_argument("--degree", type=int, help="default: top degree")
    sp.add_argument("--json", action="store_true")
    sp.set_defaults(fn=cmd_expand)

    sp = sub.add_parser("cache", help="cache management")
    sp.add_argument("action", choices=["clear"])
    sp.set_defaults(fn=cmd_cache)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING, format="%(levelname)s: %(message)s")
    try:
        code = args.fn(args)
    except (UsageError, bb.NotVexillary, bb.ContractViolation) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except BoundExceeded as exc:
        print(f"bound exceeded: {exc}", file=sys.stderr)
        return EXIT_BOUND
    return code or EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
