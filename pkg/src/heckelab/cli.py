"""Command-line entry point: ``heckelab run|split|selftest|bounds``."""

from __future__ import annotations

import argparse
import sys

from . import dsl
from .degree import InvariantViolation, bounds_report
from .interp import ExecError, dumps, execute, jsonable
from .selftest import run_all

EXIT_OK = 0
EXIT_FAIL = 1
EXIT_PARSE = 2
EXIT_EXEC = 3


def _emit(payload, out_path=None) -> None:
    text = dumps(payload)
    if out_path:
        with open(out_path, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _parse_error(exc: dsl.ParseError) -> int:
    sys.stderr.write(f"parse error: {exc}\n")
    return EXIT_PARSE


def cmd_run(args) -> int:
    try:
        with open(args.file, encoding="utf-8") as fh:
            text = fh.read()
    except OSError as exc:
        sys.stderr.write(f"cannot read {args.file}: {exc.strerror}\n")
        return EXIT_EXEC
    try:
        script = dsl.parse(text)
    except dsl.ParseError as exc:
        return _parse_error(exc)
    try:
        reports = execute(script, args.seed)
    except ExecError as exc:
        sys.stderr.write(f"execution error: {exc}\n")
        return EXIT_EXEC
    _emit(reports, args.json)
    return EXIT_OK


def cmd_split(args) -> int:
    try:
        expr = dsl.parse_expr(args.expr)
    except dsl.ParseError as exc:
        return _parse_error(exc)
    script = dsl.Script((dsl.Command("split", (expr,)),))
    try:
        reports = execute(script, 0)
    except ExecError as exc:
        sys.stderr.write(f"execution error: {exc}\n")
        return EXIT_EXEC
    _emit(reports[0])
    return EXIT_OK


def cmd_selftest(args) -> int:
    suites = run_all(args.cases, args.seed)
    ok = all(s.ok for s in suites)
    _emit({"schema": 1, "seed": args.seed, "cases": args.cases, "suites": [s.to_json() for s in suites], "ok": ok})
    return EXIT_OK if ok else EXIT_FAIL


def cmd_bounds(args) -> int:
    try:
        rep = bounds_report(args.g, args.n, args.delta, args.kind)
    except (InvariantViolation, ValueError) as exc:
        sys.stderr.write(f"execution error: {exc}\n")
        return EXIT_EXEC
    _emit({"schema": 1, "result": jsonable(rep)})
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="heckelab", description="Exact computations with paired bundles on P^1.")
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("run", help="execute a script and print JSON reports")
    p.add_argument("file")
    p.add_argument("--json", metavar="OUT", help="write the reports to OUT instead of stdout")
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(func=cmd_run)

    p = sub.add_parser("split", help="splitting type of a bundle expression")
    p.add_argument("--expr", required=True)
    p.set_defaults(func=cmd_split)

    p = sub.add_parser("selftest", help="run the randomized property suites")
    p.add_argument("--cases", type=int, default=50)
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(func=cmd_selftest)

    p = sub.add_parser("bounds", help="evaluate the numeric regions for (g, n, delta)")
    p.add_argument("--g", type=int, required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--delta", type=int, required=True)
    p.add_argument("--kind", choices=("sympl", "orth"), default="sympl")
    p.set_defaults(func=cmd_bounds)
    return ap


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())
