"""Command line front end.

Exit codes: 0 on success, 1 when a verification or numeric evaluation fails,
2 for usage errors (argparse's own convention).
"""
from __future__ import annotations

import argparse
import sys

from .algebra import gen_text, render_json, render_text
from .couplings import count_terms, default_table, enumerate_mset
from .curve import (
    ConvergenceError,
    NoOneCutSolution,
    OnCutError,
    eval_expression,
    load_config,
    moment_value,
    solve_curve,
)
from .diagrams import ExcludedCase, WickBudgetError, catalog, catalog_dot, catalog_json, correlator
from .golden.lambda_terms import GOLDEN_LAMBDA, as_expression
from .oracle import w1_recursion
from .verify import run_all, shared_table


def _cmd_lambda(args: argparse.Namespace) -> int:
    e = default_table().lam(args.h)
    print(render_json(e) if args.json else render_text(e))
    return 0


def _cmd_lambda_verify(args: argparse.Namespace) -> int:
    table = default_table()
    bad = 0
    for h in sorted(GOLDEN_LAMBDA):
        if h > args.max_h:
            continue
        want = as_expression(GOLDEN_LAMBDA[h])
        got = table.lam(h)
        if got == want:
            print(f"order {h}: match ({len(want)} terms)")
        else:
            print(f"order {h}: MISMATCH")
            bad += 1
    return 1 if bad else 0


def _cmd_count_terms(args: argparse.Namespace) -> int:
    if args.grid:
        sep = "," if args.csv else "  "
        for k in range(args.max_k + 1):
            for h in range(args.max_h + 1):
                print(f"{k}{sep}{h}{sep}{count_terms(k, h)}")
        return 0
    table = default_table()
    sep = "," if args.csv else "  "
    for h in range(args.max_h + 1):
        count = "-" if h == 1 else str(len(table.lam(h)))
        print(f"{h}{sep}{count}")
    return 0


def _cmd_mset(args: argparse.Namespace) -> int:
    for alpha in enumerate_mset(args.k, args.h):
        print(",".join(str(a) for a in alpha))
    return 0


def _cmd_diagrams(args: argparse.Namespace) -> int:
    try:
        entries = catalog(args.k, args.h)
    except (ExcludedCase, WickBudgetError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    if args.json:
        print(catalog_json(args.k, args.h))
        return 0
    if args.dot is not None:
        with open(args.dot, "w", encoding="utf-8") as fh:
            fh.write(catalog_dot(args.k, args.h))
        print(f"wrote {args.dot}")
        return 0
    for idx, (diagram, sym) in enumerate(entries):
        verts = " ".join(f"(h={v.h},a={','.join(map(str, v.alpha))})" for v in diagram.vertices)
        print(f"{idx}: weight {sym.weight}  vertices {verts}  edges {len(diagram.edges)}"
              f"  externals {len(diagram.externals)}")
    print(f"count {len(entries)}")
    return 0


def _cmd_correlator(args: argparse.Namespace) -> int:
    try:
        e = correlator(args.k, args.h, args.s, table=shared_table())
    except (ExcludedCase, WickBudgetError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    print(render_json(e) if args.json else render_text(e))
    return 0


def _cmd_oracle(args: argparse.Namespace) -> int:
    e = w1_recursion(args.h, args.s, table=shared_table())
    print(render_json(e) if args.json else render_text(e))
    return 0


def _cmd_cross_check(args: argparse.Namespace) -> int:
    table = shared_table()
    rec = w1_recursion(args.h, args.s, table=table)
    direct = correlator(1, args.h, args.s, table=table)
    if rec == direct:
        print(f"EQUAL ({len(rec)} monomials)")
        return 0
    off = len(set(rec.items()) ^ set(direct.items()))
    print(f"DIFFER on {off} monomials")
    return 1


def _cmd_curve(args: argparse.Namespace) -> int:
    potential, s, quad = load_config(args.config)
    try:
        data = solve_curve(potential, quad)
        if args.moments is not None:
            print("generator,value_re,value_im")
            for i in (1, 2):
                for f in range(1, args.moments + 1):
                    v = moment_value(data, f, i)
                    print(f"y{f}_{i},{v.real!r},{v.imag!r}")
            return 0
        if args.free_energy is not None:
            k, h = 0, args.free_energy
            bindings = {}
        else:
            k, h = args.k, args.h
            points = [complex(x.strip()) for x in args.at.split(",")] if args.at else []
            if len(points) != k:
                print(f"error: --at needs {k} comma-separated values, got {len(points)}",
                      file=sys.stderr)
                return 2
            bindings = {f"p{n}": v for n, v in enumerate(points, start=1)}
        e = correlator(k, h, s, table=shared_table())
        v = eval_expression(data, e, bindings)
        print(f"{v.real!r},{v.imag!r}")
        return 0
    except (NoOneCutSolution, OnCutError, ConvergenceError, ExcludedCase, WickBudgetError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


def _cmd_verify_all(args: argparse.Namespace) -> int:
    rows = run_all()
    for number, ok, detail in rows:
        print(f"CRITERION {number} {'PASS' if ok else 'FAIL'}  {detail}")
    return 0 if all(ok for _, ok, _ in rows) else 1


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="loopeq", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("lambda", help="print one coupling order")
    p.add_argument("--h", type=int, required=True)
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=_cmd_lambda)

    p = sub.add_parser("lambda-verify", help="compare coupling orders to the frozen tables")
    p.add_argument("--max-h", type=int, default=5)
    p.set_defaults(func=_cmd_lambda_verify)

    p = sub.add_parser("count-terms", help="term counts per order, or the multi-index grid")
    p.add_argument("--max-h", type=int, default=10)
    p.add_argument("--csv", action="store_true")
    p.add_argument("--grid", action="store_true", help="print count_terms(k, h) rows instead")
    p.add_argument("--max-k", type=int, default=8)
    p.set_defaults(func=_cmd_count_terms)

    p = sub.add_parser("mset", help="list the admissible multi-indices at (k, h)")
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--h", type=int, required=True)
    p.set_defaults(func=_cmd_mset)

    p = sub.add_parser("diagrams", help="catalog at (k, h): text, DOT, or JSON")
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--h", type=int, required=True)
    p.add_argument("--dot", metavar="PATH", help="write the catalog as a DOT file")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=_cmd_diagrams)

    p = sub.add_parser("correlator", help="assembled expansion at (k, h, s)")
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--h", type=int, required=True)
    p.add_argument("--s", type=int, required=True)
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=_cmd_correlator)

    p = sub.add_parser("oracle", help="one-point function from the residue recursion")
    p.add_argument("--h", type=int, required=True)
    p.add_argument("--s", type=int, required=True)
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=_cmd_oracle)

    p = sub.add_parser("cross-check", help="recursion versus expansion at (h, s)")
    p.add_argument("--h", type=int, required=True)
    p.add_argument("--s", type=int, required=True)
    p.set_defaults(func=_cmd_cross_check)

    p = sub.add_parser("curve", help="numeric values on a configured one-cut curve")
    p.add_argument("--config", required=True, help="JSON file with t, s, quadrature")
    mode = p.add_mutually_exclusive_group(required=True)
    mode.add_argument("--moments", type=int, metavar="FMAX",
                      help="print moments up to order FMAX at both endpoints")
    mode.add_argument("--eval", action="store_true", help="evaluate the (k, h) expansion")
    mode.add_argument("--free-energy", type=int, metavar="H",
                      help="evaluate the closed expansion at order H")
    p.add_argument("--k", type=int)
    p.add_argument("--h", type=int)
    p.add_argument("--at", help="comma-separated external points, bound to p1..pk")
    p.set_defaults(func=_cmd_curve)

    p = sub.add_parser("verify-all", help="run the full acceptance battery")
    p.set_defaults(func=_cmd_verify_all)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.command == "curve" and args.eval and (args.k is None or args.h is None):
        parser.error("--eval needs --k and --h")
    return args.func(args)


if __name__ == "__main__":
    raise SystemExit(main())
