#!/usr/bin/env python
# -*- coding: utf-8 -*-
"""suite.py: Batch runs over registered instances.

Examples:
    Stream rows as instances finish::

        async for row in run_suite_async(["Rastrigin", "Himmelblau"], workers=2):
            print(row.name, row.n_eps)

    Or collect them synchronously, in request order, and write a table::

        rows = run_suite(["Rastrigin", "Himmelblau"], epsilon=1e-3)
        write_csv(rows, "table.csv")
"""
import asyncio
import csv
import logging
from concurrent.futures import ProcessPoolExecutor
from pathlib import Path
from typing import AsyncGenerator, List, Optional, Sequence, Union

from sparta.globalopt import constants
from sparta.globalopt.bench.registry import get_instance, names
from sparta.globalopt.bnb import solve
from sparta.globalopt.models import RunReport, SolverConfig, SuiteRow

logger = logging.getLogger(__name__)

SELECTORS = ("all", "finite", "infinite")


def select_instances(selector: str) -> List[str]:
    """Resolves ``all`` (finite and infinite groups), ``finite``, ``infinite`` or a comma-separated list of names.

    Raises:
        UnknownInstanceError: If a listed name is not registered.
    """
    if selector == "all":
        return names("finite") + names("infinite")
    if selector in ("finite", "infinite"):
        return names(selector)
    selected = [part.strip() for part in selector.split(",") if part.strip()]
    return [get_instance(name).name for name in selected]


def run_instance(name: str, cfg: Optional[SolverConfig] = None) -> RunReport:
    """Solves one registered instance; explicitly set fields of ``cfg`` override the instance's own settings."""
    instance = get_instance(name)
    effective = instance.solver_config(cfg)
    logger.info(f"Running {instance.name} (epsilon={effective.epsilon})")
    return solve(instance.expression(), instance.box, effective.epsilon, effective)


def _row(name: str, cfg: Optional[SolverConfig]) -> SuiteRow:
    report = run_instance(name, cfg)
    return SuiteRow(name=name, iter=report.iterations, wall_ms=report.wall_time * 1000.0, n_eps=report.n_eps, flag_ter=report.flag_ter, f_min=report.f_min)


def _with_epsilon(cfg: Optional[SolverConfig], epsilon: Optional[float]) -> Optional[SolverConfig]:
    if epsilon is None:
        return cfg
    explicit = cfg.model_dump(include=cfg.model_fields_set) if cfg is not None else {}
    return SolverConfig(**{**explicit, "epsilon": epsilon})


async def run_suite_async(
    instance_names: Sequence[str], epsilon: Optional[float] = None, cfg: Optional[SolverConfig] = None, workers: int = 1
) -> AsyncGenerator[SuiteRow, None]:
    """Runs the named instances and yields one row per instance as soon as it finishes.

    Args:
        instance_names (Sequence[str]): Registered names; all are validated before the first solve starts.
        epsilon (Optional[float]): Termination threshold overriding ``cfg``.
        cfg (Optional[SolverConfig]): Solver settings; only explicitly set fields override per-instance settings.
        workers (int): Number of worker processes; 1 runs the solves one after another in a worker thread.

    Yields:
        SuiteRow: Benchmark row of a finished instance, in completion order.

    Raises:
        UnknownInstanceError: If a name is not registered.
    """
    resolved = [get_instance(name).name for name in instance_names]
    effective = _with_epsilon(cfg, epsilon)
    if workers <= 1:
        for name in resolved:
            yield await asyncio.to_thread(_row, name, effective)
        return
    loop = asyncio.get_running_loop()
    with ProcessPoolExecutor(max_workers=workers) as pool:
        futures = [loop.run_in_executor(pool, _row, name, effective) for name in resolved]
        for finished in asyncio.as_completed(futures):
            row = await finished
            logger.info(f"{row.name}: iter={row.iter} n_eps={row.n_eps} flag_ter={row.flag_ter}")
            yield row


def run_suite(instance_names: Sequence[str], epsilon: Optional[float] = None, cfg: Optional[SolverConfig] = None, workers: int = 1) -> List[SuiteRow]:
    """Synchronous wrapper around :func:`run_suite_async`; rows come back in request order."""

    async def collect() -> List[SuiteRow]:
        return [row async for row in run_suite_async(instance_names, epsilon, cfg, workers)]

    if not instance_names:
        return []
    rows = asyncio.run(collect())
    order = {get_instance(name).name: index for index, name in enumerate(instance_names)}
    return sorted(rows, key=lambda row: order[row.name])


def write_csv(rows: Sequence[SuiteRow], path: Union[str, Path]) -> None:
    with open(path, "w", newline="", encoding="utf-8") as f:
        writer = csv.DictWriter(f, fieldnames=list(constants.CSV_COLUMNS))
        writer.writeheader()
        for row in rows:
            writer.writerow(row.model_dump())
