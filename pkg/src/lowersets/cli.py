"""Batch front-end for counting, enumeration, bounds and discretization.

Exit codes: 0 success, 1 usage error, 2 node budget exceeded, 3 targets
unmet (a bound flag failed, certification missed its targets, or the
minimal-m search was exhausted).  Outputs carry no timestamps and all
randomness is seeded, so identical configurations write byte-identical
files.  The LOWERSET_BUDGET environment variable overrides the default
DFS node budget.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from dataclasses import dataclass

from . import bounds as bnd
from . import core, discretization as disc

BUDGET_ENV = "LOWERSET_BUDGET"


class _UsageError(Exception):
    pass


@dataclass(frozen=True)
class RunConfig:
    """Validated invocation parameters shared by the subcommands."""

    command: str
    d_range: range
    n_range: range
    method: str = "auto"
    fmt: str = "csv"
    out: str | None = None
    seed: int | None = None
    trials: int = 10
    c1: float = disc.DEFAULT_C1
    c2: float = disc.DEFAULT_C2
    m: int | None = None
    m_max: int | None = None
    search: bool = False
    grid: bool = False
    points_out: str | None = None
    budget: int = core.DEFAULT_NODE_BUDGET


def _parse_range(text: str) -> range:
    try:
        if ".." in text:
            a, b = text.split("..", 1)
            lo, hi = int(a), int(b)
        else:
            lo = hi = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError("expected INT or INT..INT: %r" % text)
    if lo > hi:
        raise argparse.ArgumentTypeError("empty range: %r" % text)
    return range(lo, hi + 1)


class _Parser(argparse.ArgumentParser):
    def error(self, message: str) -> None:  # exit 1, not argparse's 2
        self.print_usage(sys.stderr)
        raise SystemExit(1)


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="lowersets", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    count = sub.add_parser("count", help="tabulate p_d(n)")
    count.add_argument("--d", type=_parse_range, required=True)
    count.add_argument("--n", type=_parse_range, required=True)
    count.add_argument("--method", choices=["dfs", "auto"], default="auto")
    count.add_argument("--format", choices=["csv", "json", "jsonl"], default="csv")
    count.add_argument("--out")

    enum = sub.add_parser("enumerate", help="list lower sets, one JSON line each")
    enum.add_argument("--d", type=int, required=True)
    enum.add_argument("--n", type=int, required=True)
    enum.add_argument("--out")

    bounds_p = sub.add_parser("bounds", help="verify growth bounds on a grid")
    bounds_p.add_argument("--d", type=_parse_range, required=True)
    bounds_p.add_argument("--n", type=_parse_range, required=True)
    bounds_p.add_argument("--format", choices=["csv", "json", "jsonl"], default="csv")
    bounds_p.add_argument("--out")

    d_p = sub.add_parser("discretize", help="certify or search sample sizes")
    d_p.add_argument("--d", type=int, required=True)
    d_p.add_argument("--n", type=int, required=True)
    d_p.add_argument("--m", type=int)
    d_p.add_argument("--search", action="store_true")
    d_p.add_argument("--grid", action="store_true")
    d_p.add_argument("--seed", type=int)
    d_p.add_argument("--trials", type=int, default=10)
    d_p.add_argument("--c1", type=float, default=disc.DEFAULT_C1)
    d_p.add_argument("--c2", type=float, default=disc.DEFAULT_C2)
    d_p.add_argument("--m-max", type=int, dest="m_max")
    d_p.add_argument("--format", choices=["json"], default="json")
    d_p.add_argument("--out")
    d_p.add_argument("--points-out", dest="points_out")
    return parser


def _budget_from_env() -> int:
    raw = os.environ.get(BUDGET_ENV)
    if raw is None:
        return core.DEFAULT_NODE_BUDGET
    try:
        value = int(raw)
        if value < 1:
            raise ValueError
    except ValueError:
        raise _UsageError("%s must be a positive integer" % BUDGET_ENV)
    return value


def _config(args: argparse.Namespace) -> RunConfig:
    budget = _budget_from_env()
    if args.command == "count":
        return RunConfig("count", args.d, args.n, method=args.method,
                         fmt=args.format, out=args.out, budget=budget)
    if args.command == "enumerate":
        if args.d < 1 or args.n < 0:
            raise _UsageError("need --d >= 1 and --n >= 0")
        return RunConfig("enumerate", range(args.d, args.d + 1),
                         range(args.n, args.n + 1), out=args.out, budget=budget)
    if args.command == "bounds":
        if args.d.start < 2 or args.n.start < 1:
            raise _UsageError("bounds needs d >= 2 and n >= 1")
        return RunConfig("bounds", args.d, args.n, fmt=args.format,
                         out=args.out, budget=budget)
    if args.m is None and not args.search:
        raise _UsageError("discretize needs --m or --search")
    if args.m is not None and args.search:
        raise _UsageError("--m and --search are mutually exclusive")
    if args.grid and args.search:
        raise _UsageError("--grid applies only to --m certification")
    randomized = args.search or (args.m is not None and not args.grid)
    if randomized and args.seed is None:
        raise _UsageError("randomized runs require --seed")
    if args.d < 1 or args.n < 1:
        raise _UsageError("need --d >= 1 and --n >= 1")
    if args.m is not None and args.m < 1:
        raise _UsageError("--m must be positive")
    if not 0.0 < args.c1 <= 1.0 <= args.c2:
        raise _UsageError("targets must satisfy 0 < c1 <= 1 <= c2")
    return RunConfig("discretize", range(args.d, args.d + 1),
                     range(args.n, args.n + 1), fmt=args.format, out=args.out,
                     seed=args.seed, trials=args.trials, c1=args.c1, c2=args.c2,
                     m=args.m, m_max=args.m_max, search=args.search,
                     grid=args.grid, points_out=args.points_out, budget=budget)


def _emit(text: str, out: str | None) -> None:
    if out is None:
        sys.stdout.write(text)
    else:
        with open(out, "w", encoding="utf-8") as fh:
            fh.write(text)


def run_count(cfg: RunConfig) -> int:
    rows = []
    try:
        for d in cfg.d_range:
            for n in cfg.n_range:
                rows.append((d, n, core.count_lower_sets(
                    d, n, method=cfg.method, budget=cfg.budget)))
    except core.BudgetExceededError as exc:
        print("error: %s" % exc, file=sys.stderr)
        return 2
    if cfg.fmt == "csv":
        lines = ["d,n,p_d_n"] + ["%d,%d,%d" % r for r in rows]
        _emit("\n".join(lines) + "\n", cfg.out)
    else:
        objs = [{"d": d, "n": n, "p_d_n": p} for d, n, p in rows]
        _emit(_json_text(objs, cfg.fmt), cfg.out)
    return 0


def run_enumerate(cfg: RunConfig) -> int:
    d, n = cfg.d_range.start, cfg.n_range.start
    try:
        lines = [core.to_json_line(q)
                 for q in core.enumerate_lower_sets(d, n, budget=cfg.budget)]
    except core.BudgetExceededError as exc:
        print("error: %s" % exc, file=sys.stderr)
        return 2
    _emit("\n".join(lines) + "\n", cfg.out)
    return 0


def run_bounds(cfg: RunConfig) -> int:
    reports = []
    try:
        for d in cfg.d_range:
            for n in cfg.n_range:
                exact = core.count_lower_sets(d, n, budget=cfg.budget)
                reports.append(bnd.verify_bounds(d, n, exact))
    except core.BudgetExceededError as exc:
        print("error: %s" % exc, file=sys.stderr)
        return 2
    if cfg.fmt == "csv":
        lines = [bnd.BOUNDS_CSV_HEADER] + [bnd.bounds_csv_row(r) for r in reports]
        _emit("\n".join(lines) + "\n", cfg.out)
    else:
        objs = []
        for r in reports:
            obj = dict(zip(bnd.BOUNDS_CSV_HEADER.split(","), [
                r.d, r.n, r.ln_p, r.power_lo, r.power_hi, r.uniform,
                r.hr, r.c_prime, r.c_upper, r.staircase_lo, ";".join(r.flags)]))
            objs.append(obj)
        _emit(_json_text(objs, cfg.fmt), cfg.out)
    failed = any(f.endswith(":fail") for r in reports for f in r.flags)
    return 3 if failed else 0


def _grid_side(d: int, m: int) -> int:
    side = max(1, round(m ** (1.0 / d)))
    while side**d < m:
        side += 1
    return side


def run_discretize(cfg: RunConfig) -> int:
    d, n = cfg.d_range.start, cfg.n_range.start
    try:
        if cfg.search:
            assert cfg.seed is not None
            try:
                result = disc.search_minimal_m(
                    d, n, c1_target=cfg.c1, c2_target=cfg.c2,
                    trials_per_m=cfg.trials, seed=cfg.seed, m_max=cfg.m_max)
            except disc.SearchExhausted as exc:
                print("error: %s" % exc, file=sys.stderr)
                return 3
            report, xs = result.report, result.witness
            extra = {"search": {"m_found": result.m, "seed": cfg.seed,
                                "trials_per_m": cfg.trials,
                                "targets": [cfg.c1, cfg.c2]}}
        else:
            assert cfg.m is not None
            if cfg.grid:
                side = _grid_side(d, cfg.m)
                xs = disc.tensor_grid(d, [side] * d)
            else:
                assert cfg.seed is not None
                xs = disc.sample_points(d, cfg.m, cfg.seed)
            report = disc.universal_constants(d, n, xs, budget=cfg.budget)
            extra = {"targets": [cfg.c1, cfg.c2]}
    except core.BudgetExceededError as exc:
        print("error: %s" % exc, file=sys.stderr)
        return 2
    _emit(disc.report_json(report, extra) + "\n", cfg.out)
    if cfg.points_out:
        _emit(disc.points_csv(xs), cfg.points_out)
    met = report.c1 >= cfg.c1 and report.c2 <= cfg.c2
    return 0 if met else 3


def _json_text(objs: list[dict], fmt: str) -> str:
    if fmt == "json":
        return json.dumps(objs, indent=2) + "\n"
    return "\n".join(json.dumps(o) for o in objs) + "\n"


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        cfg = _config(args)
    except _UsageError as exc:
        parser.print_usage(sys.stderr)
        print("error: %s" % exc, file=sys.stderr)
        return 1
    runners = {"count": run_count, "enumerate": run_enumerate,
               "bounds": run_bounds, "discretize": run_discretize}
    try:
        return runners[cfg.command](cfg)
    except _UsageError as exc:
        print("error: %s" % exc, file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
