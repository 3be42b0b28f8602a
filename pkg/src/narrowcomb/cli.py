"""Command-line interface.

Exit codes: 0 success, 1 an inequality or validation failed, 2 usage,
3 precondition failure (e.g. a non-trivial word), 4 internal guard
(ball budget, recursion depth).
"""

from __future__ import annotations

import argparse
import csv
import math
import sys
from pathlib import Path

from . import analysis, combing, diagram, metric
from .group import GroupParams, format_normal_form, normalize, normalize_traced
from .words import Word, WordSyntaxError, format_word, parse_word

EXIT_OK, EXIT_VIOLATION, EXIT_USAGE, EXIT_PRECONDITION, EXIT_GUARD = 0, 1, 2, 3, 4

MAX_LENGTH_CEILING = 2000
MAX_RADIUS_CEILING = 16
BUDGET_CEILING = 10 ** 7


class _Precondition(Exception):
    pass


def _word(args) -> Word:
    w = parse_word(args.word)
    if len(w) > args.max_length:
        raise _Precondition(f"word length {len(w)} exceeds --max-length {args.max_length}")
    return w


def _write_rows(path: str | None, header: list[str], rows) -> None:
    if not path:
        return
    with open(path, "w", newline="") as fh:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(header)
        writer.writerows(rows)


def cmd_normalize(args, params: GroupParams) -> int:
    w = _word(args)
    if args.trace:
        nf, trace = normalize_traced(w, params)
        print(format_normal_form(nf))
        print(f"({trace.c1},{trace.c2},{trace.c3})")
    else:
        print(format_normal_form(normalize(w, params)))
    return EXIT_OK


def cmd_ball(args, params: GroupParams) -> int:
    ball = metric.build_ball(params, args.radius, args.budget)
    rows = ball.sphere_sizes()
    print("distance,count")
    for d, c in rows:
        print(f"{d},{c}")
    _write_rows(args.csv, ["distance", "count"], rows)
    return EXIT_OK


def _report(report: metric.ViolationReport, what: str) -> int:
    for v in report.violations:
        print(v)
    status = "holds" if report.ok else f"{len(report.violations)} violations"
    print(f"# {what}: {status} ({report.checked} checks)", file=sys.stderr)
    return EXIT_OK if report.ok else EXIT_VIOLATION


def cmd_check_recursive(args, params: GroupParams) -> int:
    ball = metric.build_ball(params, args.radius, args.budget)
    return _report(metric.check_recursive(params, args.radius, ball), "recursivity")


def cmd_check_geodesic(args, params: GroupParams) -> int:
    return _report(metric.check_geodesic_two_sided(params, args.radius), "geodesic two-sided bound")


def cmd_check_narrow(args, params: GroupParams) -> int:
    ball = metric.build_ball(params, args.radius, args.budget)
    report = combing.check_narrow_shape(params, args.radius, ball)
    rows = []
    for (a, b), (h, t, d, bound) in sorted(report.witnesses.items()):
        rows.append([format_normal_form(h), _step_name(a), _step_name(b), t, d, bound])
    _write_rows(args.csv, ["h", "a", "b", "t", "distance", "allowance"], rows)
    for v in report.violations:
        h, a, b, t, d, bound = v.fields
        print(f"{format_normal_form(h)},{_step_name(a)},{_step_name(b)},{t},{d},{bound}")
    status = "holds" if report.ok else f"{len(report.violations)} violations"
    print(f"# narrow shape (M={params.M}, k={params.k}): {status} ({report.checked} checks)",
          file=sys.stderr)
    return EXIT_OK if report.ok else EXIT_VIOLATION


def _step_name(a: int) -> str:
    return format_word((a,)) if a else "1"


def cmd_diagram(args, params: GroupParams) -> int:
    w = _word(args)
    try:
        d = diagram.build_diagram(w, params)
    except ValueError as exc:
        if isinstance(exc, diagram.NotTrivial):
            print(f"not trivial in G_{params.q}: {exc}", file=sys.stderr)
            return EXIT_PRECONDITION
        print(str(exc), file=sys.stderr)
        return EXIT_PRECONDITION
    except diagram.DepthExceeded as exc:
        print(str(exc), file=sys.stderr)
        return EXIT_GUARD
    report = diagram.validate_diagram(d, params)
    if args.out:
        Path(args.out).write_text(d.to_json(indent=1 if args.format == "json" else None))
    print(f"area={diagram.area(d)} diameter={diagram.diameter(d)} depth_used={d.max_depth_used} "
          f"valid={report.ok}")
    for problem in report.problems:
        print(problem, file=sys.stderr)
    return EXIT_OK if report.ok else EXIT_VIOLATION


def cmd_survey(args, params: GroupParams) -> int:
    n_list = range(args.n_min, args.n_max + 1)
    rows = analysis.survey(params, n_list, args.random, args.seed, args.timing)
    text = analysis.rows_to_csv(rows)
    if args.csv:
        Path(args.csv).write_text(text)
    else:
        sys.stdout.write(text)
    return EXIT_OK if all(r.within_bounds for r in rows) else EXIT_VIOLATION


def cmd_lowerbound(args, params: GroupParams) -> int:
    ok = True
    print("n,trace_c2,n_cubed,area_built,log_area_over_log_n")
    for n in range(1, args.n_max + 1):
        res = analysis.lower_bound_check(n, params)
        ratio = f"{math.log(res.area_built) / math.log(n):.3f}" if n > 1 else ""
        print(f"{n},{res.trace.c2},{n ** 3},{res.area_built},{ratio}")
        ok &= res.holds
    return EXIT_OK if ok else EXIT_VIOLATION


def cmd_fuzz(args, params: GroupParams) -> int:
    w = _word(args)
    if args.iterations > analysis.MAX_FUZZ_ITERATIONS:
        raise _Precondition(f"--iterations is capped at {analysis.MAX_FUZZ_ITERATIONS}")
    report = analysis.invariance_fuzz(w, args.iterations, args.seed, params)
    print(f"reference=({','.join(map(str, report.reference.as_tuple()))}) "
          f"iterations={report.iterations} distinct_traces={len(report.traces)}")
    for v, route, trace in report.mismatches[:10]:
        print(f"mismatch route={route} trace={trace.as_tuple()} word={format_word(v)}")
    return EXIT_OK if report.ok else EXIT_VIOLATION


def _bounded(ceiling: int):
    def parse(text: str) -> int:
        value = int(text)
        if not 0 <= value <= ceiling:
            raise argparse.ArgumentTypeError(f"must be between 0 and {ceiling}")
        return value
    return parse


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--q", type=int, default=1, help="group parameter q >= 1")
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--csv", default=None, help="write CSV output to this path")
    common.add_argument("--max-length", type=_bounded(MAX_LENGTH_CEILING), default=200)
    common.add_argument("--budget", type=_bounded(BUDGET_CEILING), default=metric.DEFAULT_BUDGET,
                        help="maximum number of ball elements")

    parser = argparse.ArgumentParser(prog="narrowcomb", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("normalize", parents=[common], help="normal form of a word")
    p.add_argument("--word", required=True)
    p.add_argument("--trace", action="store_true", help="also print relator counts (c1,c2,c3)")
    p.set_defaults(func=cmd_normalize)

    radius = _bounded(MAX_RADIUS_CEILING)
    for name, func, text in (
        ("ball", cmd_ball, "sphere sizes of the word-metric ball"),
        ("check-recursive", cmd_check_recursive, "normal-form length against f(distance)"),
        ("check-geodesic", cmd_check_geodesic, "two-sided bound for geodesic combings"),
        ("check-narrow", cmd_check_narrow, "narrow-shape inequality of the normal-form combing"),
    ):
        p = sub.add_parser(name, parents=[common], help=text)
        p.add_argument("--radius", type=radius, required=True)
        p.set_defaults(func=func)

    p = sub.add_parser("diagram", parents=[common], help="build and validate a van Kampen diagram")
    p.add_argument("--word", required=True)
    p.add_argument("--out", default=None)
    p.add_argument("--format", choices=["json"], default="json")
    p.set_defaults(func=cmd_diagram)

    p = sub.add_parser("survey", parents=[common], help="area/diameter table for w_n")
    p.add_argument("--n-min", type=int, default=1)
    p.add_argument("--n-max", type=int, default=3)
    p.add_argument("--random", type=int, default=0, help="random trivial words per n")
    p.add_argument("--timing", action="store_true", help="fill wall_time_ms (breaks byte-identity)")
    p.set_defaults(func=cmd_survey)

    p = sub.add_parser("lowerbound", parents=[common], help="signed [x,z] counts for w_n")
    p.add_argument("--n-max", type=int, default=3)
    p.set_defaults(func=cmd_lowerbound)

    p = sub.add_parser("fuzz", parents=[common], help="trace invariance under random rewriting")
    p.add_argument("--word", required=True)
    p.add_argument("--iterations", type=int, default=1000)
    p.set_defaults(func=cmd_fuzz)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        params = GroupParams(args.q)
        return args.func(args, params)
    except (WordSyntaxError, ValueError) as exc:
        if isinstance(exc, diagram.NotTrivial):
            print(f"not trivial: {exc}", file=sys.stderr)
            return EXIT_PRECONDITION
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except _Precondition as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PRECONDITION
    except (metric.BallBudgetExceeded, diagram.DepthExceeded) as exc:
        print(f"guard: {exc}", file=sys.stderr)
        return EXIT_GUARD


if __name__ == "__main__":
    sys.exit(main())
