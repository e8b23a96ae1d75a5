"""Command-line front end.

Exit codes: 0 success, 1 domain failure (not a dynamo, conditions rejected,
prediction mismatch), 2 usage, file or parse errors. Grids printed to stdout
are valid grid files; extra key=value lines are emitted as ``#`` comments.
"""

from __future__ import annotations

import argparse
import sys

from . import blocks, bounds, engine, search, windows
from .grid import GridError, bounding_rect, format_matrix, k_set, read_grid, serialize_grid


class _Usage(Exception):
    pass


def _rule(name: str) -> engine.Rule:
    try:
        return engine.Rule.from_name(name)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


def _profile(text: str) -> tuple[int, ...]:
    try:
        return tuple(int(t) for t in text.split(","))
    except ValueError:
        raise argparse.ArgumentTypeError(f"bad profile {text!r}") from None


def cmd_run(args) -> int:
    g = read_grid(args.grid, args.k)
    trace = engine.run(g, args.rule, args.max_rounds)
    v = engine.classify(trace)
    if args.trace:
        with open(args.trace, "w", encoding="ascii") as fh:
            fh.write(engine.format_trace(trace))
    print(f"outcome={v.outcome.value} rounds={trace.num_rounds} changed_total={trace.changed_total}")
    print(format_matrix(trace.final.cells))
    return 0


def cmd_verify(args) -> int:
    g = read_grid(args.grid, args.k)
    v = engine.verdict(g)
    s = k_set(g)
    rect = bounding_rect(g, s)
    print(f"{v.outcome.value} rounds={v.rounds_to_fixpoint}")
    print(f"# k_size={len(s)} rect={rect.rows}x{rect.cols} necessary={blocks.necessary_condition(g)}")
    if args.expect_dynamo and not v.is_dynamo:
        return 1
    return 0


def cmd_blocks(args) -> int:
    g = read_grid(args.grid, args.k)
    if args.h is not None:
        if not 1 <= args.h <= g.k:
            raise _Usage(f"--h must lie in 1..{g.k}")
        report = blocks.block_report(g, colors=[args.h], non_k=False)
    else:
        report = blocks.block_report(g)
    lines = report.lines()
    for line in lines:
        print(line)
    print(f"# blocks={len(lines)}")
    return 0


def cmd_bounds(args) -> int:
    m, n = args.m, args.n
    print(
        f"lower={bounds.lower_bound_size(m, n)} upper={bounds.upper_bound_size(m, n)} "
        f"propnew={bounds.propnew_bound(m, n)}"
    )
    if args.k is not None:
        print(f"# k={args.k} rowcol={bounds.rowcol_size(m, n)}")
    return 0


def _generate(args):
    if args.pattern == "fig6":
        return bounds.gen_fig6(), None
    if args.pattern == "fig7":
        if args.m is None or args.n is None:
            raise _Usage("fig7 needs --m and --n")
        return bounds.gen_fig7(args.m, args.n), None
    if args.k is None or args.n is None or args.profile is None:
        raise _Usage("rowcol needs --k, --n and --profile")
    profile = bounds.RowProfile(args.k, args.profile)
    if args.m is not None and args.m != profile.m:
        raise _Usage(f"--m {args.m} disagrees with a profile of {profile.m - 1} rows")
    return bounds.gen_rowcol(profile, args.n), profile


def cmd_generate(args) -> int:
    g, profile = _generate(args)
    status = 0
    notes = [f"pattern={args.pattern} m={g.m} n={g.n} k={g.k} k_size={len(k_set(g))}"]
    if args.check_conditions:
        if profile is not None:
            report = bounds.check_theorem_conditions(profile)
            notes.append(f"conditions={'OK' if report.ok else 'FAILED'}")
            notes += [f"failure={f}" for f in report.failures]
            ok = report.ok
        elif args.pattern == "fig6":
            ok = engine.is_monotone_dynamo(g, engine.Rule.SIMPLE_REVERSIBLE)
            notes.append(f"monotone_dynamo={str(ok).lower()} rule=simple-rev")
        else:
            ok = engine.verdict(g, engine.Rule.STRONG_IRREVERSIBLE).is_dynamo
            notes.append(f"dynamo={str(ok).lower()} rule=strong-irr")
        status = 0 if ok else 1
    for note in notes:
        print(f"# {note}")
    sys.stdout.write(serialize_grid(g))
    return status


def cmd_mtable(args) -> int:
    g = read_grid(args.grid, args.k)
    try:
        win = windows.CornerWindow(windows.Corner(args.corner), args.istar, args.jstar, g)
    except windows.WindowError as exc:
        raise _Usage(str(exc)) from None
    hyp = windows.check_window_hypotheses(win)
    if not hyp.ok:
        print("# hypotheses=FAILED")
        for f in hyp.failures:
            print(f"# failure={f}")
        return 1
    table = windows.m_table(win)
    print(
        f"# corner={args.corner} istar={args.istar} jstar={args.jstar} "
        f"rows={','.join(map(str, table.rows))} cols={','.join(map(str, table.cols))}"
    )
    sys.stdout.write(table.format())
    if args.verify:
        check = windows.verify_window_prediction(win)
        print(f"# match={str(check.match).lower()}")
        if not check.match:
            print("# simulated:")
            for line in format_matrix(check.simulated.values).splitlines():
                print(f"# {line}")
            return 1
    return 0


def cmd_search(args) -> int:
    try:
        spec = search.SearchSpec(args.m, args.n, args.k, args.budget, args.filter)
    except search.SearchError as exc:
        raise _Usage(str(exc)) from None
    result = search.min_dynamo(spec, workers=args.workers)
    sys.stdout.write(result.format())
    lower = bounds.lower_bound_size(args.m, args.n)
    print(f"# filter={args.filter or 'none'} considered={result.considered} lower={lower}")
    return 0


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="torusdyn", description="Multicolored majority dynamics on tori.")
    sub = p.add_subparsers(dest="command", required=True)

    def grid_args(sp):
        sp.add_argument("--grid", required=True, help="grid file")
        sp.add_argument("--k", type=int, required=True, help="number of colors")

    sp = sub.add_parser("run", help="simulate a grid and optionally write its trace")
    grid_args(sp)
    sp.add_argument("--rule", type=_rule, default=engine.Rule.STUB_SM, help="stub, simple-rev or strong-irr")
    sp.add_argument("--max-rounds", type=int, default=None)
    sp.add_argument("--trace", help="write the trace file here")
    sp.set_defaults(func=cmd_run)

    sp = sub.add_parser("verify", help="decide whether the k-set is a dynamo")
    grid_args(sp)
    sp.add_argument("--expect-dynamo", action="store_true", help="exit 1 unless the grid is a dynamo")
    sp.set_defaults(func=cmd_verify)

    sp = sub.add_parser("blocks", help="list maximal h-blocks and non-k-blocks")
    grid_args(sp)
    sp.add_argument("--h", type=int, help="only blocks of this color")
    sp.set_defaults(func=cmd_blocks)

    sp = sub.add_parser("bounds", help="evaluate the size bounds")
    sp.add_argument("--m", type=int, required=True)
    sp.add_argument("--n", type=int, required=True)
    sp.add_argument("--k", type=int)
    sp.set_defaults(func=cmd_bounds)

    sp = sub.add_parser("generate", help="print a construction")
    sp.add_argument("--pattern", choices=("fig6", "fig7", "rowcol"), required=True)
    sp.add_argument("--m", type=int)
    sp.add_argument("--n", type=int)
    sp.add_argument("--k", type=int)
    sp.add_argument("--profile", type=_profile, help="row colors r1,r2,... below the k row")
    sp.add_argument("--check-conditions", action="store_true")
    sp.set_defaults(func=cmd_generate)

    sp = sub.add_parser("mtable", help="predicted rounds-to-k for a corner window")
    grid_args(sp)
    sp.add_argument("--corner", choices=[c.value for c in windows.Corner], required=True)
    sp.add_argument("--istar", type=int, required=True)
    sp.add_argument("--jstar", type=int, required=True)
    sp.add_argument("--verify", action="store_true", help="compare with a simulation of the window")
    sp.set_defaults(func=cmd_mtable)

    sp = sub.add_parser("search", help="smallest dynamo by exhaustive enumeration")
    sp.add_argument("--m", type=int, required=True)
    sp.add_argument("--n", type=int, required=True)
    sp.add_argument("--k", type=int, required=True)
    sp.add_argument("--budget", type=int, default=search.DEFAULT_BUDGET)
    sp.add_argument("--filter", choices=search.FILTERS)
    sp.add_argument("--workers", type=int, default=1, help=argparse.SUPPRESS)
    sp.set_defaults(func=cmd_search)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return args.func(args)
    except (_Usage, GridError, ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
