"""Command-line interface: ``adjtorsion torus|twist|check``.

Exit codes: 0 success, 2 usage or parameter error, 3 numerical comparison
failure beyond tolerance.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import math
import re
import sys

from .checks import DEFAULT_TOL, SUITES, run_suite, summarize
from .report import flatten, format_pretty, torus_report, twist_reports
from .representations import DEFAULT_CONJ_PARAM, RepresentationError

EXIT_OK, EXIT_USAGE, EXIT_MISMATCH = 0, 2, 3

_NUM = r"(?:\d+\.?\d*|\.\d+)(?:[eE][+-]?\d+)?"
_COMPLEX_RE = re.compile(rf"^[+-]?{_NUM}(?:[+-](?:{_NUM})?i)?$|^[+-]?(?:{_NUM})?i$")


def parse_complex(text: str) -> complex:
    """Parse "a+bi", "a-bi", "a", "bi" or "i" (exponents allowed); independent of locale."""
    s = text.strip().replace(" ", "")
    if not _COMPLEX_RE.match(s):
        raise ValueError(f"not a complex literal: {text!r}")
    if s.endswith("i") and not s[:-1][-1:].isdigit() and not s[:-1].endswith("."):
        s = s[:-1] + "1i"
    return complex(s.replace("i", "j"))


def _complex_arg(text: str) -> complex:
    try:
        return parse_complex(text)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


def _emit(reports: list[dict] | dict, fmt: str, out) -> None:
    """A dict is written as one JSON object, a list as a JSON array."""
    payload = reports
    reports = [reports] if isinstance(reports, dict) else reports
    if fmt == "json":
        out.write(json.dumps(payload, indent=2, allow_nan=False) + "\n")
    elif fmt == "csv":
        rows = [flatten(r) for r in reports]
        fields = list(dict.fromkeys(k for r in rows for k in r))
        buf = io.StringIO()
        writer = csv.DictWriter(buf, fieldnames=fields, lineterminator="\n")
        writer.writeheader()
        writer.writerows(rows)
        out.write(buf.getvalue())
    else:
        out.write("\n\n".join(format_pretty(r) for r in reports) + "\n")


def _cmd_torus(args) -> int:
    report = torus_report(args.p, args.q, args.k, args.l, args.conj_param, args.column, args.tol)
    _emit(report, args.out, sys.stdout)
    return EXIT_OK if report["passed"] else EXIT_MISMATCH


def _cmd_twist(args) -> int:
    root = None if args.root == "all" else int(args.root)
    reports = twist_reports(args.n, args.s, root, args.column, args.tol)
    _emit(reports, args.out, sys.stdout)
    return EXIT_OK if all(r["passed"] for r in reports) else EXIT_MISMATCH


def _json_float(x: float) -> float | None:
    return x if math.isfinite(x) else None


def _cmd_check(args) -> int:
    rows = run_suite(args.suite, args.tol, args.perturb)
    summary = summarize(rows)
    if args.out == "json":
        payload = {
            "suite": args.suite,
            "tol": args.tol,
            "summary": {k: {**v, "max_residual": _json_float(v["max_residual"])} for k, v in summary.items()},
            "failures": [{**r.__dict__, "residual": _json_float(r.residual)} for r in rows if r.status == "fail"],
        }
        print(json.dumps(payload, indent=2, allow_nan=False))
    else:
        if args.verbose:
            for r in rows:
                print(f"{r.status.upper():4s} {r.suite:9s} {r.label}  residual={r.residual:.3e} tol={r.tol:.0e} {r.note}")
        for name, entry in summary.items():
            state = "FAIL" if entry["failed"] else "PASS"
            print(
                f"{state} {name}: {entry['checks']} checks, {entry['failed']} failed, "
                f"{entry['skipped']} skipped, max residual {entry['max_residual']:.3e}"
            )
    return EXIT_MISMATCH if any(r.status == "fail" for r in rows) else EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="adjtorsion",
        description="Twisted Alexander polynomial with the adjoint action and non-abelian torsion "
        "for torus and twist knots, cross-checked against closed forms.",
    )
    parser.add_argument("-v", "--verbose", action="store_true", help="with check: print every row, not just the per-suite summary")
    sub = parser.add_subparsers(dest="command", required=True)

    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--tol", type=float, default=DEFAULT_TOL, help="comparison tolerance (default 1e-8)")
    common.add_argument("--column", type=int, default=None, help="removed generator column j (1-based)")
    common.add_argument("--out", choices=("json", "csv", "pretty"), default="pretty")

    t = sub.add_parser("torus", parents=[common], help="(p, q)-torus knot on component (k, l)")
    t.add_argument("--p", type=int, required=True)
    t.add_argument("--q", type=int, required=True)
    t.add_argument("--k", type=int, required=True)
    t.add_argument("--l", type=int, required=True)
    t.add_argument("--conj-param", type=_complex_arg, default=DEFAULT_CONJ_PARAM,
                   help="conjugation parameter v, e.g. 0.5+0.333i")
    t.set_defaults(func=_cmd_torus)

    w = sub.add_parser("twist", parents=[common], help="twist knot J(2, 2n) at Riley parameter s")
    w.add_argument("--n", type=int, required=True)
    w.add_argument("--s", type=_complex_arg, required=True, help="Riley parameter s, e.g. 2+0i (use --s=-1+0i for a leading minus)")
    w.add_argument("--root", default="all", help="'all' or a 0-based Riley root index")
    w.set_defaults(func=_cmd_twist)

    c = sub.add_parser("check", help="run the comparison grids")
    c.add_argument("--suite", choices=("all", *SUITES), default="all")
    c.add_argument("--tol", type=float, default=DEFAULT_TOL)
    c.add_argument("--out", choices=("json", "pretty"), default="pretty")
    c.add_argument("--perturb", type=float, default=0.0,
                   help="negative control: perturb rho(c) angle (torus) or u (twist) by this amount")
    c.set_defaults(func=_cmd_check)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.command == "twist" and args.root != "all" and not args.root.lstrip("-").isdigit():
        parser.error("--root must be 'all' or an integer")
    try:
        return args.func(args)
    except (ValueError, IndexError, RepresentationError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
