"""Command-line front end.

Exit codes: 0 success, 2 usage, 3 resource budget, 4 mathematical assertion failed.
"""
from __future__ import annotations

import argparse
import csv
import json
import sys
from fractions import Fraction

from . import __version__, _kernels
from .closedform import theorem_lower_bound, theorem_upper_bound
from .errors import BudgetExceeded, TheoremViolation
from .extract import SEQUENCES_HEADER, d_rows, extract_d, extract_g, g_rows, write_sequences
from .heatflow import Variant, dump_matrix_rows, run
from .numerics import PolyX, format_rational, parse_rational
from .perm import WalkSpec, enumerate_total_inversions, monte_carlo_E

EXIT_USAGE, EXIT_BUDGET, EXIT_MATH = 2, 3, 4


class UsageError(Exception):
    pass


def _cell(v) -> str:
    if isinstance(v, Fraction):
        return format_rational(v)
    if isinstance(v, PolyX):
        return str(v)
    return str(v)


def _json_cell(v):
    if isinstance(v, (Fraction, PolyX)):
        return _cell(v)
    return v


def emit(rows, header, fmt, out):
    """Write rows as header+CSV or one JSON object per line."""
    if fmt == "jsonl":
        for row in rows:
            out.write(json.dumps({k: _json_cell(v) for k, v in zip(header, row)}) + "\n")
        return
    w = csv.writer(out, lineterminator="\n", quoting=csv.QUOTE_NONE, escapechar="\\")
    w.writerow(header)
    for row in rows:
        w.writerow([_cell(v) for v in row])


def parse_range(text: str) -> range:
    """``a:b`` inclusive, or a single integer."""
    try:
        if ":" in text:
            a, b = text.split(":", 1)
            lo, hi = int(a), int(b)
        else:
            lo = hi = int(text)
    except ValueError:
        raise UsageError(f"bad range {text!r}; expected a:b") from None
    if hi < lo:
        raise UsageError(f"empty range {text!r}")
    return range(lo, hi + 1)


def resolve_x(spec: str | None, n: int, mode: str):
    """Conductivity for one run: the literal ``1/n`` or an exact rational string."""
    if mode == "poly":
        if spec not in (None, "1/n"):
            raise UsageError("--x has no effect in poly mode (x stays symbolic)")
        return PolyX.x()
    if spec is None or spec == "1/n":
        value = Fraction(1, n)
    else:
        try:
            value = parse_rational(spec)
        except (ValueError, ZeroDivisionError) as exc:
            raise UsageError(f"--x must be an exact rational p/q or '1/n': {exc}") from None
    return float(value) if mode == "float" else value


def _positive(name, v, minimum=1):
    if v < minimum:
        raise UsageError(f"--{name} must be >= {minimum}, got {v}")


def cmd_exact(args, out):
    _positive("n", args.n)
    _positive("t", args.t, 0)
    x = resolve_x(args.x, args.n, args.mode)
    try:
        report = run(args.n, args.t, x, Variant(args.variant), kind=args.mode)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    E = report.E
    label = "E(x)" if args.mode == "poly" else "E"
    if args.format == "text":
        out.write(f"{label}={_cell(E)}\n")
    else:
        x_text = "x" if args.mode == "poly" else _cell(x)
        emit([(args.n, args.t, x_text, args.mode, E)], ("n", "t", "x", "mode", "E"), args.format, out)
    if args.dump_matrix:
        fmt = "csv" if args.format == "text" else args.format
        emit(dump_matrix_rows(report.final), ("i", "j", "value"), fmt, out)


def cmd_simulate(args, out):
    try:
        spec = WalkSpec(args.n, args.t, args.seed, args.samples, args.shards)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    est = monte_carlo_E(spec, workers=args.workers)
    emit(
        [(spec.n, spec.t, est.mean, est.stderr, est.samples, est.seed, spec.shards)],
        ("n", "t", "mean", "stderr", "samples", "seed", "shards"),
        args.format,
        out,
    )


def cmd_bounds(args, out):
    _positive("n", args.n)
    _positive("t", args.t, 0)
    lower = theorem_lower_bound(args.n, args.t)
    upper = theorem_upper_bound(args.n, args.t)
    exact = run(args.n, args.t).E
    if not lower <= exact <= upper:
        raise TheoremViolation(
            f"bound sandwich violated at n={args.n}, t={args.t}: "
            f"{format_rational(lower)} <= {format_rational(exact)} <= {format_rational(upper)} is false"
            + (" (outside the n >= t premise)" if args.n < args.t else "")
        )
    emit([(args.n, args.t, lower, exact, upper)], ("n", "t", "lower", "exact", "upper"), args.format, out)


def _parse_n_set(text, t):
    if text is None:
        return [t, t + 1, t + 2]
    try:
        return [int(v) for v in text.split(",") if v.strip()]
    except ValueError:
        raise UsageError(f"bad --n-set {text!r}; expected comma-separated integers") from None


def cmd_extract(args, out):
    try:
        if args.kind == "d":
            rows = d_rows(extract_d(args.t))
        else:
            rows = g_rows(extract_g(args.t, _parse_n_set(args.n_set, args.t)))
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    emit(rows, SEQUENCES_HEADER, args.format, out)


def cmd_sequences(args, out):
    provenance = [
        f"generated by invwalk {__version__} (kernels: {_kernels.BACKEND})",
        f"command: invwalk sequences --d-t {args.d_t} --g-t {args.g_t}",
        "d_r: exact 1/n expansion of E_nt from heat-flow DP at x=1/n, n in source_n_set",
        "g_r: triangle E_nt(x) minus semi-infinite total, identical across source_n_set",
    ]
    if args.d_t < 2 or args.g_t < 2:
        raise UsageError("--d-t and --g-t must be >= 2")
    rows = write_sequences(args.path, args.d_t, args.g_t, provenance)
    out.write(f"wrote {len(rows)} rows to {args.path}\n")


def cmd_table(args, out):
    ns, ts = parse_range(args.n), parse_range(args.t)
    if ns.start < 1 or ts.start < 0:
        raise UsageError("need n >= 1 and t >= 0")
    rows = []
    for n in ns:
        x = resolve_x(args.x, n, args.mode)
        try:
            report = run(n, ts.stop - 1, x, Variant.TRIANGLE, kind=args.mode)
        except ValueError as exc:
            raise UsageError(str(exc)) from None
        zero = 0.0 if args.mode == "float" else (PolyX() if args.mode == "poly" else Fraction(0))
        series = (zero,) + report.energies
        rows.extend((n, t, series[t]) for t in ts)
    emit(rows, ("n", "t", "E"), args.format, out)


def cmd_enumerate(args, out):
    _positive("n", args.n)
    _positive("t", args.t, 0)
    total = enumerate_total_inversions(args.n, args.t, args.budget)
    emit(
        [(args.n, args.t, total, Fraction(total, args.n**args.t))],
        ("n", "t", "total", "E"),
        args.format,
        out,
    )


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(
        prog="invwalk",
        description="Expected number of inversions after t random adjacent transpositions in S_{n+1}.",
    )
    p.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = p.add_subparsers(dest="command", required=True)

    def common(sp, default_format="csv", choices=("csv", "jsonl")):
        sp.add_argument("--format", choices=choices, default=default_format, help=f"output format (default {default_format})")
        sp.add_argument("--output", "-o", help="write to this file instead of standard output")

    sp = sub.add_parser("exact", help="heat-flow DP value of E_nt")
    sp.add_argument("--n", type=int, required=True, help="number of generators (permutations of n+1 symbols)")
    sp.add_argument("--t", type=int, required=True, help="number of steps")
    sp.add_argument("--x", default=None, help="conductivity: exact rational p/q or '1/n' (default 1/n)")
    sp.add_argument("--mode", choices=("rational", "float", "poly"), default="rational", help="scalar kind (default rational)")
    sp.add_argument("--variant", choices=[v.value for v in Variant if v is not Variant.SEMI_INFINITE],
                    default=Variant.TRIANGLE.value, help="heat-flow model (default triangle-hot-boundary)")
    sp.add_argument("--dump-matrix", action="store_true", help="also emit the final p_ij matrix as i,j,value rows")
    common(sp, "text", ("text", "csv", "jsonl"))
    sp.set_defaults(func=cmd_exact)

    sp = sub.add_parser("simulate", help="Monte Carlo estimate of E_nt")
    sp.add_argument("--n", type=int, required=True)
    sp.add_argument("--t", type=int, required=True)
    sp.add_argument("--samples", type=int, default=100_000, help="number of walks (default 100000)")
    sp.add_argument("--seed", type=int, default=0, help="64-bit seed (default 0)")
    sp.add_argument("--shards", type=int, default=1, help="independent RNG streams (default 1)")
    sp.add_argument("--workers", type=int, default=1, help="processes; does not change the result (default 1)")
    common(sp)
    sp.set_defaults(func=cmd_simulate)

    sp = sub.add_parser("bounds", help="lower, exact and upper value at x=1/n")
    sp.add_argument("--n", type=int, required=True)
    sp.add_argument("--t", type=int, required=True)
    common(sp)
    sp.set_defaults(func=cmd_bounds)

    sp = sub.add_parser("extract", help="recover d_r or g_r exactly")
    sp.add_argument("--kind", choices=("d", "g"), required=True)
    sp.add_argument("--t", type=int, required=True)
    sp.add_argument("--n-set", default=None, help="comma-separated n values for --kind g (default t,t+1,t+2)")
    common(sp)
    sp.set_defaults(func=cmd_extract)

    sp = sub.add_parser("sequences", help="regenerate the d/g data file")
    sp.add_argument("--d-t", type=int, default=10, help="largest t for d_r (default 10)")
    sp.add_argument("--g-t", type=int, default=8, help="largest t for g_r (default 8)")
    sp.add_argument("--path", default="data/sequences.csv", help="destination (default data/sequences.csv)")
    sp.set_defaults(func=cmd_sequences, format="csv", output=None)

    sp = sub.add_parser("table", help="E_nt over a grid of n and t")
    sp.add_argument("--n", required=True, help="range a:b (inclusive)")
    sp.add_argument("--t", required=True, help="range a:b (inclusive)")
    sp.add_argument("--x", default="1/n", help="'1/n' (default) or an exact rational applied to every n")
    sp.add_argument("--mode", choices=("rational", "float", "poly"), default="rational")
    common(sp)
    sp.set_defaults(func=cmd_table)

    sp = sub.add_parser("enumerate", help="exhaustive sum of inv over all n^t words")
    sp.add_argument("--n", type=int, required=True)
    sp.add_argument("--t", type=int, required=True)
    sp.add_argument("--budget", type=int, default=None, help="max words (default $INVWALK_ENUM_BUDGET or 1e8)")
    common(sp)
    sp.set_defaults(func=cmd_enumerate)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)  # exits 2 on bad usage
    out = open(args.output, "w", encoding="utf-8", newline="") if args.output else sys.stdout
    try:
        args.func(args, out)
    except UsageError as exc:
        print(f"invwalk {args.command}: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except BudgetExceeded as exc:
        print(f"invwalk {args.command}: budget exceeded: {exc}", file=sys.stderr)
        return EXIT_BUDGET
    except TheoremViolation as exc:
        print(f"invwalk {args.command}: assertion failed: {exc}", file=sys.stderr)
        return EXIT_MATH
    finally:
        if out is not sys.stdout:
            out.close()
    return 0


if __name__ == "__main__":
    sys.exit(main())
