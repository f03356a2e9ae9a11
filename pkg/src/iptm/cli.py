"""Command-line front end.

Exit codes: 0 success, 1 a checked claim failed (or a counterexample was
found), 2 usage error.  Output goes to ``--output`` if given, else to a file
under ``$IPTM_OUTPUT_DIR`` if that is set, else to standard output.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import os
import re
import sys
from fractions import Fraction
from pathlib import Path

from . import analysis, fps, hankel, seqgen
from .automata import export_dot, figure1_dfao

OUTPUT_DIR_ENV = "IPTM_OUTPUT_DIR"

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2

SEQ_NAMES = ("t", "o", "e", "c", "a", "b", "d", "u", "z")

# check name -> callable(limit) returning a CheckReport
CHECKS = {
    "c-recurrences": analysis.verify_c_recurrences,
    "a-recurrences": analysis.verify_a_recurrences,
    "o-recurrences": analysis.verify_o_recurrences,
    "equations": analysis.verify_equations,
    "automaton": analysis.verify_automaton,
    "gaps": lambda limit: analysis.gap_spectrum(limit)[1],
    "t-a-identity": analysis.verify_t_a_identity,
    # the windows are fixed; the limit does not apply
    "z-window": lambda limit: analysis.z_window_check(2, 7),
    "z-char": analysis.verify_z_char,
    "convolution": analysis.convolution_check,
    "functional": analysis.verify_functional,
}

_MIN_LIMIT = {"c-recurrences": 4, "a-recurrences": 2, "convolution": 4}


class UsageError(Exception):
    pass


def fraction_arg(text: str) -> Fraction:
    """Parse "p/q" or an integer; decimals are rejected to keep inputs exact."""
    if not re.fullmatch(r"\s*-?\d+\s*(/\s*\d+\s*)?", text):
        raise argparse.ArgumentTypeError(f"{text!r} is not a fraction like 1/4")
    try:
        return Fraction(text.replace(" ", ""))
    except ZeroDivisionError:
        raise argparse.ArgumentTypeError("zero denominator") from None


def positive_int(text: str) -> int:
    try:
        value = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"{text!r} is not an integer") from None
    if value < 1:
        raise argparse.ArgumentTypeError("must be positive")
    return value


def _emit(text: str, args, default_name: str) -> None:
    path = args.output
    if path is None and os.environ.get(OUTPUT_DIR_ENV):
        path = str(Path(os.environ[OUTPUT_DIR_ENV]) / default_name)
    if path is None or path == "-":
        sys.stdout.write(text)
        sys.stdout.flush()
        return
    Path(path).parent.mkdir(parents=True, exist_ok=True)
    with open(path, "w", encoding="utf-8", newline="") as fh:
        fh.write(text)


def _rows_text(rows, fmt: str) -> str:
    if fmt == "json":
        return json.dumps([{"n": n, "value": str(v)} for n, v in rows], indent=2) + "\n"
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["n", "value"])
    w.writerows(rows)
    return buf.getvalue()


def _json(obj) -> str:
    return json.dumps(obj, indent=2, sort_keys=True) + "\n"


# ---------------------------------------------------------------------------
# commands


def cmd_seq(args) -> int:
    if args.prime is not None:
        if args.name != "c":
            raise UsageError("--prime only applies to --name c")
        if not fps.is_prime(args.prime):
            raise UsageError(f"{args.prime} is not prime")
        g = fps.series_reverse(fps.sp_series(args.prime, args.count - 1))
        rows = [(n, int(g[n])) for n in range(args.count)]
        tag = f"c{args.prime}"
    else:
        handle = seqgen.sequence(args.name)
        rows = list(zip(handle.indices(args.count), handle.batch(args.count)))
        tag = args.name
    _emit(_rows_text(rows, args.format), args, f"seq-{tag}.{args.format}")
    return EXIT_OK


def cmd_verify(args) -> int:
    names = sorted(CHECKS) if args.check == "all" else [args.check]
    reports = []
    for name in names:
        limit = max(args.limit, _MIN_LIMIT.get(name, 1))
        rep = CHECKS[name](limit)
        rep.check_name = name
        reports.append(rep)
    reports.sort(key=lambda r: r.check_name)
    _emit(_json([r.to_dict() for r in reports]), args, f"verify-{args.check}.json")
    return EXIT_OK if all(r.passed for r in reports) else EXIT_FAIL


def cmd_hankel(args) -> int:
    if args.p < 0:
        raise UsageError("--p must be non-negative")
    rep = hankel.conjecture_report(args.max_n, args.p, args.convention)
    _emit(_json(rep.to_dict()), args, f"hankel-{args.convention}.json")
    return EXIT_OK if rep.bounded else EXIT_FAIL


def cmd_automaton(args) -> int:
    if args.export:
        _emit(export_dot(figure1_dfao(), "iptm"), args, "automaton.dot")
        return EXIT_OK
    if args.limit < 1:
        raise UsageError("--limit must be positive")
    rep = analysis.verify_automaton(args.limit)
    _emit(_json(rep.to_dict()), args, "automaton-equiv.json")
    if not rep.passed:
        print(f"first mismatch at n = {rep.failures[0][0]}", file=sys.stderr)
    return EXIT_OK if rep.passed else EXIT_FAIL


def cmd_density(args) -> int:
    if args.scan is not None:
        if args.scan < 16:
            raise UsageError("--scan needs a limit of at least 16")
        summary = analysis.density_scan(args.scan)
        _emit(_json(summary.to_dict()), args, "density-scan.json")
        return EXIT_OK if summary.bound_check.passed else EXIT_FAIL
    if args.tol is None:
        raise UsageError("--target needs --tol")
    if not Fraction(1, 6) < args.target < Fraction(1, 2):
        raise UsageError("--target must lie strictly between 1/6 and 1/2")
    if args.tol <= 0:
        raise UsageError("--tol must be positive")
    try:
        res = analysis.density_greedy(args.target, args.tol, args.max_iter)
    except analysis.NoConvergenceError as exc:
        _emit(_json({"target": str(args.target), "tol": str(args.tol), "converged": False,
                     "best_n": exc.best_n, "best_ratio": str(exc.best)}), args, "density-target.json")
        return EXIT_FAIL
    _emit(_json({"target": str(args.target), "tol": str(args.tol), "converged": True,
                 "n": res.n, "ratio": str(res.ratio), "iterations": res.iterations,
                 "trace": list(res.trace)}), args, "density-target.json")
    return EXIT_OK


def cmd_iterate(args) -> int:
    if args.m == 0:
        raise UsageError("--m must be non-zero")
    order = args.terms - 1
    base = fps.ptm_series(order)
    if args.m < 0:
        base = fps.series_reverse(base)
    s = fps.iterate_compose(base, abs(args.m), order)
    rows = [(n, int(s[n])) for n in range(args.terms)]
    _emit(_rows_text(rows, args.format), args, f"iterate-{args.m}.{args.format}")
    return EXIT_OK


# ---------------------------------------------------------------------------
# parser


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="iptm",
        description="Inverse Thue-Morse series: sequences, checks, Hankel scans, automata.")
    sub = parser.add_subparsers(dest="command", required=True)

    def out(p, formats=False):
        p.add_argument("--output", "-o", help=f"output file ('-' for stdout; default ${OUTPUT_DIR_ENV} or stdout)")
        if formats:
            p.add_argument("--format", choices=("csv", "json"), default="csv")

    p = sub.add_parser("seq", help="emit terms of a sequence")
    p.add_argument("--name", required=True, choices=SEQ_NAMES)
    p.add_argument("--count", type=positive_int, default=32)
    p.add_argument("--prime", type=int, help="for c: reverse the base-p digit-sum series over F_p")
    out(p, formats=True)
    p.set_defaults(func=cmd_seq)

    p = sub.add_parser("verify", help="run verification checks")
    p.add_argument("--check", default="all", choices=("all", *sorted(CHECKS)))
    p.add_argument("--limit", type=positive_int, default=65536)
    out(p)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("hankel", help="Hankel determinant grid and classification")
    p.add_argument("--p", type=int, default=16, help="largest offset p (default 16)")
    p.add_argument("--max-n", type=positive_int, default=64)
    p.add_argument("--convention", choices=hankel.CONVENTIONS, default="offset")
    out(p)
    p.set_defaults(func=cmd_hankel)

    p = sub.add_parser("automaton", help="export or check the base-4 automaton")
    g = p.add_mutually_exclusive_group(required=True)
    g.add_argument("--export", choices=("dot",))
    g.add_argument("--equiv", action="store_true")
    p.add_argument("--limit", type=int, default=1 << 18)
    out(p)
    p.set_defaults(func=cmd_automaton)

    p = sub.add_parser("density", help="a_n / n^2 scan or greedy approximation")
    g = p.add_mutually_exclusive_group(required=True)
    g.add_argument("--scan", type=int, metavar="LIMIT")
    g.add_argument("--target", type=fraction_arg, metavar="P/Q")
    p.add_argument("--tol", type=fraction_arg, metavar="P/Q")
    p.add_argument("--max-iter", type=positive_int, default=60)
    out(p)
    p.set_defaults(func=cmd_density)

    p = sub.add_parser("iterate", help="coefficients of F composed |m| times (G if m < 0)")
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--terms", type=positive_int, default=32)
    out(p, formats=True)
    p.set_defaults(func=cmd_iterate)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return args.func(args)
    except UsageError as exc:
        print(f"iptm {args.command}: error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
