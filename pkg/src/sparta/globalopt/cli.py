#!/usr/bin/env python
# -*- coding: utf-8 -*-
"""cli.py: Command-line entry point.

Sub-commands:

* ``solve``: run the solver on a formula and box (or a registered instance) and write a JSON report,
* ``bench``: run registered instances and write a CSV table,
* ``plot``: draw the subdivision stored in a two-dimensional report as SVG,
* ``list``: print the registered instance names.

Exit codes are 0 on success, 2 on user errors (bad input, unknown names, missing files) and 1 on internal errors.

Examples:
    From a shell::

        sparta-globalopt solve --function "x1^2+x2^2" --box "[-1,1]x[-1,1]" --out report.json
        sparta-globalopt bench --instance Rastrigin,Himmelblau --workers 2 --out table.csv
        sparta-globalopt plot --report report.json --out report.svg
"""
import argparse
import logging
import sys
from typing import Any, Dict, List, Optional

from pydantic import ValidationError

from sparta.globalopt import constants
from sparta.globalopt.bench.registry import get_instance, names
from sparta.globalopt.bench.suite import run_suite, select_instances, write_csv
from sparta.globalopt.bench.svg import emit_subdivision_svg
from sparta.globalopt.bnb import solve
from sparta.globalopt.errors import OptimizationError
from sparta.globalopt.expression import parse
from sparta.globalopt.geometry import parse_box
from sparta.globalopt.models import RunReport, SolverConfig

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_INTERNAL = 1
EXIT_USAGE = 2

# (flag, SolverConfig field, type, default shown in --help)
CONFIG_FLAGS = (
    ("--eps", "epsilon", float, constants.EPSILON),
    ("--discard-margin", "discard_margin", float, constants.DISCARD_MARGIN),
    ("--inner-tol", "inner_tol", float, constants.INNER_TOL),
    ("--inner-max-iters", "inner_max_iters", int, constants.INNER_MAX_ITERS),
    ("--filter-tol", "filter_tol", float, constants.FILTER_TOL),
    ("--cluster-delta", "cluster_delta", float, constants.CLUSTER_DELTA),
    ("--max-outer-iters", "max_outer_iters", int, constants.MAX_OUTER_ITERS),
    ("--interval-slack", "interval_slack", float, 0.0),
)


def _add_config_flags(parser: argparse.ArgumentParser) -> None:
    group = parser.add_argument_group("solver settings")
    for flag, field, kind, default in CONFIG_FLAGS:
        group.add_argument(flag, dest=field, type=kind, default=None, help=f"default: {default}")


def config_from_args(args: argparse.Namespace) -> SolverConfig:
    """Builds a config holding only the flags given on the command line, so per-instance settings still apply to the rest."""
    values: Dict[str, Any] = {field: getattr(args, field) for _, field, _, _ in CONFIG_FLAGS if getattr(args, field, None) is not None}
    return SolverConfig(**values)


def cmd_solve(args: argparse.Namespace) -> int:
    cfg = config_from_args(args)
    if args.instance:
        instance = get_instance(args.instance)
        f, box, cfg = instance.expression(), instance.box, instance.solver_config(cfg)
    elif args.function and args.box:
        box = parse_box(args.box)
        f = parse(args.function, box.dimension)
    else:
        logger.error("solve needs either --instance or both --function and --box")
        return EXIT_USAGE
    report = solve(f, box, cfg.epsilon, cfg)
    report.save(args.out)
    print(report.summary())
    return EXIT_OK


def cmd_bench(args: argparse.Namespace) -> int:
    rows = run_suite(select_instances(args.instance), cfg=config_from_args(args), workers=args.workers)
    write_csv(rows, args.out)
    for row in rows:
        print(f"{row.name}: iter={row.iter} n_eps={row.n_eps} f_min={row.f_min} flag_ter={row.flag_ter} wall_ms={row.wall_ms:.0f}")
    return EXIT_OK


def cmd_plot(args: argparse.Namespace) -> int:
    emit_subdivision_svg(RunReport.load(args.report), None, args.out)
    return EXIT_OK


def cmd_list(args: argparse.Namespace) -> int:
    for name in names():
        print(name)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="sparta-globalopt", description="Approximate the set of global minimisers of a box-constrained function.")
    parser.add_argument("--log-level", default="WARNING", choices=["DEBUG", "INFO", "WARNING", "ERROR"], help="default: WARNING")
    commands = parser.add_subparsers(dest="command", required=True)

    solve_parser = commands.add_parser("solve", help="solve one problem and write a JSON report")
    solve_parser.add_argument("--function", help='objective, e.g. "x1^2 + x2^2"')
    solve_parser.add_argument("--box", help='domain, e.g. "[-1,1]x[-1,1]"')
    solve_parser.add_argument("--instance", help="registered instance name instead of --function/--box")
    solve_parser.add_argument("--out", default="report.json", help="report file (default: report.json)")
    _add_config_flags(solve_parser)
    solve_parser.set_defaults(handler=cmd_solve)

    bench_parser = commands.add_parser("bench", help="run registered instances and write a CSV table")
    bench_parser.add_argument("--instance", default="all", help="name, comma-separated names, all, finite or infinite (default: all)")
    bench_parser.add_argument("--workers", type=int, default=1, help="worker processes (default: 1)")
    bench_parser.add_argument("--out", default="bench.csv", help="CSV file (default: bench.csv)")
    _add_config_flags(bench_parser)
    bench_parser.set_defaults(handler=cmd_bench)

    plot_parser = commands.add_parser("plot", help="draw the subdivision of a two-dimensional report as SVG")
    plot_parser.add_argument("--report", required=True, help="report file written by solve")
    plot_parser.add_argument("--out", required=True, help="SVG file")
    plot_parser.set_defaults(handler=cmd_plot)

    list_parser = commands.add_parser("list", help="print registered instance names")
    list_parser.set_defaults(handler=cmd_list)
    return parser


def main(argv: Optional[List[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=args.log_level, format="%(asctime)s %(levelname)s %(name)s: %(message)s", stream=sys.stderr)
    try:
        return int(args.handler(args))
    except (OptimizationError, ValidationError, OSError) as e:
        logger.error(f"{e}")
        return EXIT_USAGE
    except Exception:
        logger.exception(f"Internal error while running {args.command}")
        return EXIT_INTERNAL


if __name__ == "__main__":
    sys.exit(main())
