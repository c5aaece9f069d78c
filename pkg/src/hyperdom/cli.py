"""Command-line interface.

Exit codes: 0 success, 1 verification failure, 2 usage error or refused
request, 3 inconsistent input files.
"""

from __future__ import annotations

import argparse
import csv
import io
import logging
import math
import sys
import time
from pathlib import Path

from . import bounds, extremal
from .coloring import independence_number
from .domination import greedy_gpl, min_directed_dominating
from .formats import (
    InputMismatch,
    comment_block,
    dumps,
    hypergraph_to_text,
    load_hypergraph,
    load_orientation,
    make_manifest,
    orientation_to_text,
)
from .hypergraph import complete_hypergraph, random_hypergraph
from .orientation import Orientation, random_orientation
from .verify import SUITE_ARGS, SUITES

log = logging.getLogger("hyperdom")

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_MISMATCH = 0, 1, 2, 3


class UsageError(Exception):
    pass


def _emit(text: str, out: str | None) -> None:
    if out:
        Path(out).write_text(text)
    else:
        sys.stdout.write(text)


def _ms(t0: float) -> float:
    return round((time.perf_counter() - t0) * 1000, 3)


def cmd_gen(args) -> int:
    if args.kind == "complete":
        h = complete_hypergraph(args.n, args.r)
        params = {"kind": "complete", "n": args.n, "r": args.r}
        seed = None
    else:
        if args.m is None:
            raise UsageError("gen random needs -m")
        h = random_hypergraph(args.n, args.r, args.m, args.seed)
        params = {"kind": "random", "n": args.n, "r": args.r, "m": args.m}
        seed = args.seed
    manifest = make_manifest("gen", params, seed)
    if args.json:
        _emit(dumps(dict(h.to_json(), manifest=manifest)), args.out)
    else:
        _emit(hypergraph_to_text(h, manifest), args.out)
    return EXIT_OK


def cmd_orient(args) -> int:
    h = load_hypergraph(args.hypergraph)
    d = Orientation.increasing(h) if args.increasing else random_orientation(h, args.seed)
    params = {"hypergraph": str(args.hypergraph), "increasing": args.increasing}
    seed = None if args.increasing else args.seed
    _emit(orientation_to_text(d, make_manifest("orient", params, seed)), args.out)
    return EXIT_OK


def _orientation_arg(args, h):
    if args.orientation:
        return load_orientation(args.orientation, h), None
    return random_orientation(h, args.random), args.random


def cmd_solve(args) -> int:
    h = load_hypergraph(args.hypergraph)
    if args.orientation is None and args.random is None:
        raise UsageError("solve needs --orientation PATH or --random SEED")
    d, seed = _orientation_arg(args, h)
    t0 = time.perf_counter()
    if args.greedy:
        cert = greedy_gpl(d, args.p)
        nodes, optimal = 0, False
    else:
        cert, stats = min_directed_dominating(d, args.p, args.budget)
        nodes, optimal = stats.nodes_explored, stats.proven_optimal
    params = {"hypergraph": str(args.hypergraph), "orientation": args.orientation,
              "p": args.p, "method": "greedy" if args.greedy else "exact",
              "budget": args.budget}
    report = {
        "gamma": len(cert),
        "set": sorted(cert.dominating_set),
        "witnesses": {str(u): i for u, i in sorted(cert.witnesses.items())},
        "proven_optimal": optimal,
        "nodes_explored": nodes,
        "elapsed_ms": _ms(t0),
        "manifest": make_manifest("solve", params, seed),
    }
    _emit(dumps(report), args.out)
    return EXIT_OK


def _write_trace(path: str, rows, manifest: dict) -> None:
    buf = io.StringIO()
    buf.write(comment_block(manifest))
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["restart", "step", "value"])
    w.writerows(rows)
    Path(path).write_text(buf.getvalue())


def cmd_gamma_upper(args) -> int:
    h = load_hypergraph(args.hypergraph)
    t0 = time.perf_counter()
    params = {"hypergraph": str(args.hypergraph), "p": args.p}
    if args.search:
        cfg = extremal.SearchConfig(args.restarts, args.max_steps, args.seed, args.plateau_limit)
        params.update(method="search", restarts=cfg.restarts, max_steps=cfg.max_steps,
                      plateau_limit=cfg.plateau_limit, budget=args.budget)
        res = extremal.gamma_upper_search(h, args.p, cfg, threads=args.threads, budget=args.budget)
        seed = args.seed
    else:
        params.update(method="exact", cap=args.cap, fix_first_edge=args.fix_first_edge)
        seed = None
        try:
            res = extremal.gamma_upper_exact(h, args.p, args.cap, args.threads,
                                             args.fix_first_edge)
        except extremal.EnumerationRefused as exc:
            refusal = {"refused": True, "required": str(exc.required), "cap": exc.cap,
                       "manifest": make_manifest("gamma-upper", params, seed)}
            _emit(dumps(refusal), args.out)
            log.error("%s", exc)
            return EXIT_USAGE
    manifest = make_manifest("gamma-upper", params, seed)
    if args.witness_out:
        Path(args.witness_out).write_text(orientation_to_text(res.witness, manifest))
    if args.trace_out and res.trace:
        _write_trace(args.trace_out, res.trace, manifest)
    report = {
        "p": res.p,
        "value": res.value,
        "exact": res.exact,
        "certified": res.certified,
        "orientations_examined": res.orientations_examined,
        "witness": [list(o) for o in res.witness.orders],
        "elapsed_ms": _ms(t0),
        "manifest": manifest,
    }
    _emit(dumps(report), args.out)
    return EXIT_OK


BOUNDS_COLUMNS = ["n", "r", "p", "thm2i_upper", "gpl_closed", "t_star", "certified_lower",
                  "c_ln_n_informational"]


def bounds_table(r: int, ns, p: int) -> list[dict]:
    rows = []
    for n in ns:
        row = bounds.bounds_row(n, r)
        row["p"] = p
        if p != r - 1:
            # the first-moment certificate only speaks about p = r - 1
            row["t_star"] = row["certified_lower"] = None
        rows.append({k: row[k] for k in BOUNDS_COLUMNS})
    return rows


def _csv_text(rows: list[dict], columns: list[str], manifest: dict) -> str:
    buf = io.StringIO()
    buf.write(comment_block(manifest))
    w = csv.DictWriter(buf, fieldnames=columns, lineterminator="\n")
    w.writeheader()
    for row in rows:
        w.writerow({k: ("" if row[k] is None else row[k]) for k in columns})
    return buf.getvalue()


def cmd_bounds(args) -> int:
    p = args.r - 1 if args.p is None else args.p
    if not 1 <= p <= args.r - 1:
        raise UsageError(f"p={p} outside [1, {args.r - 1}]")
    if args.n_min < args.r:
        raise UsageError("n-min must be at least r")
    ns = range(args.n_min, args.n_max + 1, args.n_step)
    rows = bounds_table(args.r, ns, p)
    params = {"r": args.r, "p": p, "n_min": args.n_min, "n_max": args.n_max,
              "n_step": args.n_step}
    manifest = make_manifest("bounds", params, None)
    if args.format == "json":
        _emit(dumps({"columns": BOUNDS_COLUMNS, "rows": rows, "manifest": manifest}), args.out)
    else:
        _emit(_csv_text(rows, BOUNDS_COLUMNS, manifest), args.out)
    return EXIT_OK


def cmd_verify(args) -> int:
    names = list(SUITES) if args.suite == "all" else [args.suite]
    available = {"n": args.n, "r": args.r, "cap": args.cap, "threads": args.threads,
                 "budget": args.budget, "seed": args.seed}
    results = []
    for name in names:
        kwargs = {k: available[k] for k in SUITE_ARGS[name] if available[k] is not None}
        res = SUITES[name](**kwargs)
        results.append(res)
        print(res.line())
        for msg in res.failures[:10]:
            print("  " + msg)
    if args.out:
        payload = {
            "suites": [{"name": s.name, "passed": s.passed, "checked": s.checked,
                        "failures": s.failures} for s in results],
            "manifest": make_manifest("verify", {"suite": args.suite}, args.seed),
        }
        Path(args.out).write_text(dumps(payload))
    return EXIT_OK if all(s.passed for s in results) else EXIT_FAIL


def _upper_value(h, p, cap, cfg, threads):
    """Exact value when enumerable, otherwise a search lower bound."""
    try:
        res = extremal.gamma_upper_exact(h, p, cap, threads)
    except extremal.EnumerationRefused:
        res = extremal.gamma_upper_search(h, p, cfg, threads)
    return res


EXPLORE_COLUMNS = {
    "complete-growth": ["n", "r", "p", "value", "exact", "certified", "thm2i_upper"],
    "r3-p2-growth": ["n", "value", "exact", "certified", "sqrt_ln_n", "ratio"],
    "r3-p1-growth": ["n", "value", "exact", "certified", "ln_n", "ratio"],
    "alpha-ratio": ["n", "r", "m", "p", "alpha", "value", "exact", "certified", "ratio"],
}


def cmd_explore(args) -> int:
    """Empirical data points for the open problems; no asymptotic claims."""
    cfg = extremal.SearchConfig(args.restarts, args.max_steps, args.seed, args.plateau_limit)
    rows = []
    if args.preset == "complete-growth":
        for r in (2, 3):
            for n in range(r, args.n_max + 1):
                h = complete_hypergraph(n, r)
                for p in range(1, r):
                    res = _upper_value(h, p, args.cap, cfg, args.threads)
                    rows.append({"n": n, "r": r, "p": p, "value": res.value, "exact": res.exact,
                                 "certified": res.certified,
                                 "thm2i_upper": bounds.upper_bound_thm2i(n, r)})
    elif args.preset in ("r3-p2-growth", "r3-p1-growth"):
        p = 2 if args.preset == "r3-p2-growth" else 1
        for n in range(3, args.n_max + 1):
            res = _upper_value(complete_hypergraph(n, 3), p, args.cap, cfg, args.threads)
            scale = math.sqrt(math.log(n)) if p == 2 else math.log(n)
            key = "sqrt_ln_n" if p == 2 else "ln_n"
            rows.append({"n": n, "value": res.value, "exact": res.exact,
                         "certified": res.certified, key: scale, "ratio": res.value / scale})
    else:
        for k in range(args.instances):
            n = 4 + k % max(1, args.n_max - 3)
            r = 2 + k % 2
            m = min(2 * n, math.comb(n, r))
            h = random_hypergraph(n, r, m, args.seed * 1000 + k)
            alpha = independence_number(h)
            for p in range(1, r):
                res = _upper_value(h, p, args.cap, cfg, args.threads)
                rows.append({"n": n, "r": r, "m": m, "p": p, "alpha": alpha, "value": res.value,
                             "exact": res.exact, "certified": res.certified,
                             "ratio": res.value / (alpha * math.log(n))})
    params = {"preset": args.preset, "n_max": args.n_max, "cap": args.cap,
              "restarts": args.restarts, "max_steps": args.max_steps,
              "plateau_limit": args.plateau_limit, "instances": args.instances}
    manifest = make_manifest("explore", params, args.seed)
    _emit(_csv_text(rows, EXPLORE_COLUMNS[args.preset], manifest), args.out)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--seed", type=int, default=0, help="seed for all randomness")
    common.add_argument("--threads", type=int, default=1,
                        help="worker threads; results do not depend on it")
    common.add_argument("-o", "--out", help="output file (default: stdout)")

    parser = argparse.ArgumentParser(prog="hyperdom", description=__doc__.splitlines()[0])
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True)

    g = sub.add_parser("gen", parents=[common], help="generate a hypergraph")
    g.add_argument("kind", choices=["complete", "random"])
    g.add_argument("-n", type=int, required=True)
    g.add_argument("-r", type=int, required=True)
    g.add_argument("-m", type=int)
    g.add_argument("--json", action="store_true", help="write the JSON mirror format")
    g.set_defaults(func=cmd_gen)

    o = sub.add_parser("orient", parents=[common], help="write an orientation file")
    o.add_argument("hypergraph")
    o.add_argument("--increasing", action="store_true",
                   help="order every edge by vertex id instead of randomly")
    o.set_defaults(func=cmd_orient)

    s = sub.add_parser("solve", parents=[common], help="directed p-domination of one orientation")
    s.add_argument("hypergraph")
    src = s.add_mutually_exclusive_group()
    src.add_argument("--orientation")
    src.add_argument("--random", type=int, metavar="SEED")
    s.add_argument("-p", type=int, required=True)
    how = s.add_mutually_exclusive_group()
    how.add_argument("--exact", action="store_true", default=True)
    how.add_argument("--greedy", action="store_true")
    s.add_argument("--budget", type=int, default=2_000_000, help="node limit of the exact solver")
    s.set_defaults(func=cmd_solve)

    u = sub.add_parser("gamma-upper", parents=[common],
                       help="upper directed p-domination number")
    u.add_argument("hypergraph")
    u.add_argument("-p", type=int, required=True)
    how = u.add_mutually_exclusive_group()
    how.add_argument("--exact", action="store_true", default=True)
    how.add_argument("--search", action="store_true")
    u.add_argument("--cap", type=int, default=extremal.DEFAULT_CAP)
    u.add_argument("--fix-first-edge", action="store_true",
                   help="symmetry reduction, complete hypergraphs only")
    _search_flags(u)
    u.add_argument("--budget", type=int, default=100_000)
    u.add_argument("--witness-out")
    u.add_argument("--trace-out")
    u.set_defaults(func=cmd_gamma_upper)

    b = sub.add_parser("bounds", parents=[common], help="table of analytic bounds")
    b.add_argument("-r", type=int, required=True)
    b.add_argument("--n-min", type=int, required=True)
    b.add_argument("--n-max", type=int, required=True)
    b.add_argument("--n-step", type=int, default=1)
    b.add_argument("-p", type=int)
    b.add_argument("--format", choices=["csv", "json"], default="csv")
    b.set_defaults(func=cmd_bounds)

    v = sub.add_parser("verify", parents=[common], help="run an invariant suite")
    v.add_argument("suite", choices=sorted(SUITES) + ["all"])
    v.add_argument("--n", type=int)
    v.add_argument("--r", type=int)
    v.add_argument("--cap", type=int)
    v.add_argument("--budget", type=int)
    v.set_defaults(func=cmd_verify)

    e = sub.add_parser("explore", parents=[common], help="empirical points for open problems")
    e.add_argument("preset", choices=sorted(EXPLORE_COLUMNS))
    e.add_argument("--n-max", type=int, default=7)
    e.add_argument("--cap", type=int, default=10**6)
    e.add_argument("--instances", type=int, default=6)
    _search_flags(e)
    e.set_defaults(func=cmd_explore)
    return parser


def _search_flags(p: argparse.ArgumentParser) -> None:
    p.add_argument("--restarts", type=int, default=8)
    p.add_argument("--max-steps", type=int, default=200)
    p.add_argument("--plateau-limit", type=int, default=20)


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.DEBUG if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")
    if args.threads < 1:
        parser.error("--threads must be positive")
    try:
        return args.func(args)
    except InputMismatch as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_MISMATCH
    except (UsageError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
