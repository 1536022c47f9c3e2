"""Command-line front end.

Commands:
  decompose <file> [--trace out.json] [--verify]      characteristic decomposition
  min-order <file> --h-max N                          least prolongation order
  bound <file> [--bit-cap B]                          bound calculus report
  dickson check <seq.json>                            antichain test
  dickson pad <seq.json> --growth 2,3 --extra-dims 2  padding construction
  dickson search --tuple-len N --growth 1,3 --coord-cap C
  ackermann M N [--bit-cap B]

Exit codes: 0 success; 1 min-order not found within --h-max; 2 parse error;
3 resource cap exceeded; 4 internal error.  JSON reports (--json PATH, '-'
for stdout) are byte-identical across runs for identical inputs and caps;
wall-clock timing appears only with --timing.
"""

from __future__ import annotations

import argparse
import json
import sys
import time
from typing import List, Optional

from . import bounds as bnd
from .decompose import DecomposeLimits, decompose, verify_trace
from .dickson import GrowthFn, SearchResult, is_dicksonian, pad_construction, search_max_length
from .groebner import CappedResourceError, ResourceCaps
from .nullstellensatz import NotFoundBy, minimal_order
from .problemfile import ParseError, parse_problem, render_problem

SCHEMA = "diffnull.report/1"

EXIT_OK = 0
EXIT_NOT_FOUND = 1
EXIT_PARSE = 2
EXIT_CAPPED = 3
EXIT_INTERNAL = 4


def _emit(report: dict, args, t0: float) -> None:
    if getattr(args, "timing", False):
        report["timing_ms"] = round((time.monotonic() - t0) * 1000, 3)
    path = getattr(args, "json", None)
    if path:
        text = json.dumps(report, indent=2) + "\n"
        if path == "-":
            sys.stdout.write(text)
        else:
            with open(path, "w") as fh:
                fh.write(text)


def _load_problem(path: str):
    with open(path) as fh:
        text = fh.read()
    system = parse_problem(text)
    return system, render_problem(system)


def _caps_from(args) -> ResourceCaps:
    return ResourceCaps(
        max_basis_size=args.max_basis,
        max_poly_terms=args.max_terms,
        wall_seconds=args.wall_seconds,
    )


def _add_cap_flags(p: argparse.ArgumentParser):
    p.add_argument("--max-basis", type=int, default=5000, help="basis-size cap")
    p.add_argument("--max-terms", type=int, default=500_000, help="per-poly term cap")
    p.add_argument("--wall-seconds", type=float, default=None, help="wall-time cap")


def _add_common(p: argparse.ArgumentParser):
    p.add_argument("--json", metavar="PATH", help="write a JSON report ('-' = stdout)")
    p.add_argument("--timing", action="store_true", help="include wall time in the JSON report")


def cmd_decompose(args) -> int:
    t0 = time.monotonic()
    system, echo = _load_problem(args.file)
    limits = DecomposeLimits(max_iterations=args.max_iterations, wall_seconds=args.wall_seconds)
    result = decompose(system, limits)
    print(f"decomposition of {len(system.generators)} generator(s):")
    for c in result.components:
        polys = ", ".join(str(p) for p in c.polys)
        print(f"  [{c.kind}] ({c.reason}) {{{polys}}}")
    report = {
        "schema": SCHEMA,
        "command": "decompose",
        "inputs": {"problem": echo},
        "caps": {"max_iterations": limits.max_iterations, "wall_seconds": limits.wall_seconds},
        "results": {
            "iterations": result.iterations,
            "components": [
                {"kind": c.kind, "reason": c.reason, "polynomials": [str(p) for p in c.polys]}
                for c in result.components
            ],
        },
    }
    if args.verify:
        rep = verify_trace(result, system)
        print(
            f"trace: antichains {'ok' if rep.antichain_ok else 'VIOLATED'}, "
            f"degree growth {'ok' if rep.degree_growth_ok else 'VIOLATED'}, "
            f"iteration bound {rep.iteration_bound}"
        )
        report["results"]["trace_verification"] = {
            "antichain_ok": rep.antichain_ok,
            "degree_growth_ok": rep.degree_growth_ok,
            "iteration_bound": rep.iteration_bound,
            "failures": rep.failures,
        }
    if args.trace:
        with open(args.trace, "w") as fh:
            fh.write(json.dumps(result.to_json(), indent=2) + "\n")
        print(f"trace written to {args.trace}")
    _emit(report, args, t0)
    return EXIT_OK


def cmd_min_order(args) -> int:
    t0 = time.monotonic()
    system, echo = _load_problem(args.file)
    caps = _caps_from(args)
    answer = minimal_order(system, args.h_max, caps)
    found = not isinstance(answer, NotFoundBy)
    if found:
        print(f"minimal order: {answer}")
    else:
        print(f"not found within h <= {args.h_max}")
    report = {
        "schema": SCHEMA,
        "command": "min-order",
        "inputs": {"problem": echo, "h_max": args.h_max},
        "caps": {
            "max_basis": caps.max_basis_size,
            "max_terms": caps.max_poly_terms,
            "wall_seconds": caps.wall_seconds,
        },
        "results": {"found": found, "minimal_order": answer if found else None},
    }
    _emit(report, args, t0)
    return EXIT_OK if found else EXIT_NOT_FOUND


def cmd_bound(args) -> int:
    t0 = time.monotonic()
    system, echo = _load_problem(args.file)
    ring = system.ring
    stats = system.stats()
    cap = args.bit_cap
    seed = bnd.bound_seed(stats.H, stats.D, ring.n, cap)
    structural = bnd.structural_bounds(stats.H, stats.D, ring.m, ring.n, cap)
    lifting = bnd.lifting_bounds(
        stats.H,
        stats.D,
        ring.m,
        ring.n,
        stats.ord_f or 0,
        stats.D_f or 0,
        bit_cap=cap,
    )
    closed = bnd.closed_form_order_bound(
        stats.H_with_target, stats.D_with_target, ring.m, ring.n
    )
    rec = bnd.recurrence_check(max(stats.H, ring.m), max(stats.D, 1), ring.m, ring.n, 2)
    print(f"order/degree stats: H = {stats.H}, D = {stats.D}, "
          f"ord f = {stats.ord_f or 0}, deg f = {stats.D_f or 0}")
    print(f"seed: {bnd.to_text(seed)}")
    for e in structural.entries + lifting.entries:
        print(f"{e.name}: {bnd.to_text(bnd.simplify(e.expr, cap))}")
    print(f"closed-form order bound: {bnd.to_text(closed)}")
    report = {
        "schema": SCHEMA,
        "command": "bound",
        "inputs": {"problem": echo},
        "caps": {"bit_cap": cap},
        "results": {
            "stats": {
                "H": stats.H,
                "D": stats.D,
                "ord_f": stats.ord_f or 0,
                "deg_f": stats.D_f or 0,
            },
            "seed": bnd.to_text(seed),
            "structural": structural.to_json(cap),
            "lifting": lifting.to_json(cap),
            "closed_form": bnd.to_text(closed),
            "closed_form_json": bnd.to_json(closed),
            "recurrence_rows": [
                {"k": r.k, "H": r.H, "D": r.D, "u": r.u_repr,
                 "order_ok": r.order_ok, "degree_ok": r.degree_ok}
                for r in rec.rows
            ],
        },
    }
    _emit(report, args, t0)
    return EXIT_OK


def _parse_growth(args) -> GrowthFn:
    if args.affine:
        a, b = (int(s) for s in args.affine.split(","))
        return GrowthFn.from_affine(a, b)
    if not args.growth:
        raise ValueError("need --growth or --affine")
    return GrowthFn.from_table(int(s) for s in args.growth.split(","))


def _read_seq(path: str) -> list:
    with open(path) as fh:
        data = json.load(fh)
    return [tuple(int(x) for x in t) for t in data]


def cmd_dickson(args) -> int:
    t0 = time.monotonic()
    report = {"schema": SCHEMA, "command": f"dickson {args.action}", "inputs": {}, "caps": {}, "results": {}}
    if args.action == "check":
        seq = _read_seq(args.seq)
        ok = is_dicksonian(seq)
        print("dicksonian" if ok else "not dicksonian")
        report["inputs"]["sequence"] = [list(t) for t in seq]
        report["results"]["dicksonian"] = ok
        _emit(report, args, t0)
        return EXIT_OK
    if args.action == "pad":
        seq = _read_seq(args.seq)
        f = _parse_growth(args)
        padded = pad_construction(seq, f, args.extra_dims)
        print(json.dumps([list(t) for t in padded]))
        report["inputs"] = {
            "sequence": [list(t) for t in seq],
            "growth": args.growth or args.affine,
            "extra_dims": args.extra_dims,
        }
        report["results"]["padded"] = [list(t) for t in padded]
        _emit(report, args, t0)
        return EXIT_OK
    if args.action == "search":
        f = _parse_growth(args)
        res = search_max_length(args.tuple_len, f, args.coord_cap)
        flag = "" if res.conclusive else " (inconclusive: cap reached)"
        print(f"maximal length: {res.length}{flag}")
        print(f"witness: {json.dumps([list(t) for t in res.witness])}")
        report["inputs"] = {
            "tuple_len": args.tuple_len,
            "growth": args.growth or args.affine,
            "coord_cap": args.coord_cap,
        }
        report["results"] = {
            "length": res.length,
            "witness": [list(t) for t in res.witness],
            "conclusive": res.conclusive,
        }
        _emit(report, args, t0)
        return EXIT_OK
    raise ValueError(f"unknown dickson action {args.action!r}")


def cmd_ackermann(args) -> int:
    t0 = time.monotonic()
    expr = bnd.ackermann(args.m, args.n, args.bit_cap)
    print(bnd.to_text(expr))
    report = {
        "schema": SCHEMA,
        "command": "ackermann",
        "inputs": {"m": args.m, "n": args.n},
        "caps": {"bit_cap": args.bit_cap},
        "results": {"expression": bnd.to_text(expr), "json": bnd.to_json(expr)},
    }
    _emit(report, args, t0)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="diffnull", description=__doc__.splitlines()[0])
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("decompose", help="characteristic decomposition with trace")
    p.add_argument("file")
    p.add_argument("--trace", metavar="PATH", help="write the JSON trace")
    p.add_argument("--verify", action="store_true", help="verify the trace invariants")
    p.add_argument("--max-iterations", type=int, default=10_000)
    p.add_argument("--wall-seconds", type=float, default=None)
    _add_common(p)
    p.set_defaults(fn=cmd_decompose)

    p = sub.add_parser("min-order", help="least prolongation order for membership")
    p.add_argument("file")
    p.add_argument("--h-max", type=int, required=True)
    _add_cap_flags(p)
    _add_common(p)
    p.set_defaults(fn=cmd_min_order)

    p = sub.add_parser("bound", help="bound-calculus report for a problem file")
    p.add_argument("file")
    p.add_argument("--bit-cap", type=int, default=bnd.DEFAULT_BIT_CAP)
    _add_common(p)
    p.set_defaults(fn=cmd_bound)

    p = sub.add_parser("dickson", help="antichain sequence tools")
    p.add_argument("action", choices=["check", "pad", "search"])
    p.add_argument("seq", nargs="?", help="JSON file: array of integer arrays")
    p.add_argument("--growth", help="growth table, e.g. 2,3,5")
    p.add_argument("--affine", help="affine growth a,b meaning a*i+b")
    p.add_argument("--extra-dims", type=int, default=2, help="padding coordinates (pad)")
    p.add_argument("--tuple-len", type=int, default=2, help="tuple length (search)")
    p.add_argument("--coord-cap", type=int, default=32, help="coordinate cap (search)")
    _add_common(p)
    p.set_defaults(fn=cmd_dickson)

    p = sub.add_parser("ackermann", help="evaluate A(m, n) exactly or symbolically")
    p.add_argument("m", type=int)
    p.add_argument("n", type=int)
    p.add_argument("--bit-cap", type=int, default=bnd.DEFAULT_BIT_CAP)
    _add_common(p)
    p.set_defaults(fn=cmd_ackermann)

    return ap


def main(argv: Optional[List[str]] = None) -> int:
    ap = build_parser()
    args = ap.parse_args(argv)
    try:
        return args.fn(args)
    except ParseError as exc:
        print(f"parse error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except CappedResourceError as exc:
        print(f"resource cap exceeded: {exc}", file=sys.stderr)
        return EXIT_CAPPED
    except FileNotFoundError as exc:
        print(f"cannot read input: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except Exception as exc:  # noqa: BLE001 - surfaced with a distinct code
        print(f"internal error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_INTERNAL


if __name__ == "__main__":
    sys.exit(main())
