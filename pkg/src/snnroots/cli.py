"""Command-line entry point: ``snnroots <subcommand> [options]``.

Exit codes: 0 success, 2 invalid input, 3 numerical failure (including a
failed golden check), 4 I/O error. Output files are written atomically.
"""

from __future__ import annotations

import argparse
import json
import sys

from . import lab
from .extremal import NoDependenceError, ehrhart_screen, growth_csv, growth_table
from .hstar import HStarVector
from .lattice import CountGuardError, count_dilate, hstar_of, read_simplices
from .regions import trace_boundary

EXIT_OK, EXIT_INVALID, EXIT_NUMERIC, EXIT_IO = 0, 2, 3, 4


class UsageError(ValueError):
    pass


def _common() -> argparse.ArgumentParser:
    # SUPPRESS keeps a flag given before the subcommand from being reset after it
    p = argparse.ArgumentParser(add_help=False)
    p.add_argument("--seed", type=int, default=argparse.SUPPRESS, help="64-bit RNG seed (default 1)")
    p.add_argument("--tol", type=float, default=argparse.SUPPRESS, help="residual / solver tolerance")
    p.add_argument("--out", default=argparse.SUPPRESS, help="output file (default: stdout)")
    p.add_argument("--format", choices=("csv", "json", "svg"), default=argparse.SUPPRESS)
    return p


def build_parser() -> argparse.ArgumentParser:
    common = _common()
    parser = argparse.ArgumentParser(prog="snnroots", parents=[common], description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("sample-roots", parents=[common], help="roots of random SNN polynomials")
    p.add_argument("--degree", type=int, default=7)
    p.add_argument("--count", type=int, default=1000)
    p.add_argument("--coeff-max", type=int, default=9)
    p.add_argument("--workers", type=int, default=1)
    p.add_argument("--summary", help="summary JSON path (default: <out>.summary.json, or stderr)")

    p = sub.add_parser("trace", parents=[common], help="sample the curve sum A(j) = pi")
    p.add_argument("--degree", type=int, required=True)
    p.add_argument("--rays", type=int, default=64)

    p = sub.add_parser("growth", parents=[common], help="b_d and extremal root growth table")
    p.add_argument("--d-min", type=int, default=2)
    p.add_argument("--d-max", type=int, default=20)

    sub.add_parser("verify-examples", parents=[common], help="run the golden-value checks")

    p = sub.add_parser("screen", parents=[common], help="Ehrhart necessary conditions for h*-vectors")
    p.add_argument("file", help="JSON lines, one h*-vector per line")
    p.add_argument("--no-extrapolated", action="store_true", help="skip h_d <= h_0 + h_1 for d != 5")

    p = sub.add_parser("count", parents=[common], help="lattice points in a dilate of a simplex")
    p.add_argument("file", help="simplex JSON or JSON lines")
    p.add_argument("--t", type=int, required=True)

    p = sub.add_parser("hstar", parents=[common], help="h*-vector of a lattice simplex")
    p.add_argument("file", help="simplex JSON or JSON lines")
    return parser


def _emit(text: str, out: str | None) -> None:
    if out is None:
        sys.stdout.write(text)
    else:
        lab.atomic_write(out, text)


def _read_hstar_lines(path: str) -> list[HStarVector]:
    vectors = []
    with open(path) as fh:
        for lineno, line in enumerate(fh, 1):
            if not line.strip():
                continue
            try:
                vectors.append(HStarVector.from_dict(json.loads(line)))
            except (json.JSONDecodeError, KeyError, TypeError, ValueError) as exc:
                raise UsageError(f"{path}:{lineno}: {exc}") from exc
    return vectors


def cmd_sample_roots(args) -> int:
    cfg = lab.ExperimentConfig(
        seed=args.seed,
        degree=args.degree,
        sample_count=args.count,
        coeff_max=args.coeff_max,
        tol=args.tol,
        output_path=args.out,
        format=args.fmt,
        workers=args.workers,
    )
    try:
        result = lab.sample_roots(cfg)
    except lab.SampleNonConvergence as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_NUMERIC
    body = {"csv": result.to_csv, "json": result.to_json, "svg": lambda: lab.roots_svg(result)}[cfg.format]()
    summary = json.dumps(result.summary(), indent=2) + "\n"
    summary_path = args.summary or (args.out + ".summary.json" if args.out else None)
    if args.out is None:
        sys.stdout.write(body)
        if summary_path:
            lab.atomic_write(summary_path, summary)
        else:
            sys.stderr.write(summary)
    else:
        files = {args.out: body}
        if summary_path:
            files[summary_path] = summary
        lab.atomic_write_many(files)
    return EXIT_OK


def cmd_trace(args) -> int:
    curve = trace_boundary(args.degree, args.rays, args.tol if args.tol_given else 1e-12)
    if curve.missed:
        print(f"note: {len(curve.missed)} rays without a crossing", file=sys.stderr)
    if args.fmt == "svg":
        text = lab.boundary_svg(curve)
    elif args.fmt == "json":
        text = json.dumps(curve.to_dict()) + "\n"
    else:
        text = curve.to_csv()
    _emit(text, args.out)
    return EXIT_OK


def cmd_growth(args) -> int:
    rows = growth_table(args.d_min, args.d_max, args.tol)
    text = lab.growth_rows_json(rows) + "\n" if args.fmt == "json" else growth_csv(rows)
    _emit(text, args.out)
    return EXIT_OK


def cmd_verify_examples(args) -> int:
    results = lab.verify_examples()
    lines = [f"{'PASS' if r.passed else 'FAIL'}  {r.name}: {r.detail}" for r in results]
    text = "\n".join(lines) + "\n"
    if args.fmt == "json":
        text = json.dumps([{"name": r.name, "pass": r.passed, "detail": r.detail} for r in results]) + "\n"
    _emit(text, args.out)
    return EXIT_OK if all(r.passed for r in results) else EXIT_NUMERIC


def cmd_screen(args) -> int:
    vectors = _read_hstar_lines(args.file)
    reports = [ehrhart_screen(h, include_extrapolated=not args.no_extrapolated).to_dict() for h in vectors]
    _emit(json.dumps(reports, indent=2) + "\n", args.out)
    return EXIT_OK


def cmd_count(args) -> int:
    simplices = read_simplices(args.file)
    out = [{"simplex": s.to_dict(), "t": args.t, "count": count_dilate(s, args.t)} for s in simplices]
    _emit(json.dumps(out if len(out) != 1 else out[0]) + "\n", args.out)
    return EXIT_OK


def cmd_hstar(args) -> int:
    simplices = read_simplices(args.file)
    out = [hstar_of(s).to_dict() for s in simplices]
    _emit(json.dumps(out if len(out) != 1 else out[0]) + "\n", args.out)
    return EXIT_OK


COMMANDS = {
    "sample-roots": cmd_sample_roots,
    "trace": cmd_trace,
    "growth": cmd_growth,
    "verify-examples": cmd_verify_examples,
    "screen": cmd_screen,
    "count": cmd_count,
    "hstar": cmd_hstar,
}


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_OK if exc.code == 0 else EXIT_INVALID
    args.tol_given = hasattr(args, "tol")
    args.seed = getattr(args, "seed", 1)
    args.tol = getattr(args, "tol", 1e-10)
    args.out = getattr(args, "out", None)
    args.fmt = getattr(args, "format", "csv")
    try:
        return COMMANDS[args.command](args)
    except (UsageError, NoDependenceError, CountGuardError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INVALID
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_IO
    except ArithmeticError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_NUMERIC
    except (ValueError, KeyError, TypeError, json.JSONDecodeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INVALID


if __name__ == "__main__":
    sys.exit(main())
