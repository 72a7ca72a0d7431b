#!/usr/bin/env python
# -*- coding: utf-8 -*-
"""bnb.py: Piecewise convexification branch and bound.

The domain is bisected into boxes on which ``f`` is relaxed independently. Three lists hold every box:

* ``active`` (non-convex boxes that may still contain a global minimiser),
* ``convex`` (boxes on which ``f`` is certified convex; they are never split again),
* ``discarded`` (boxes whose relaxation minimum exceeds the best value found).

The loop repeatedly bisects the active box of largest modified width until the active list is empty or every active box has a modified width of at
most ``epsilon``. The relaxation minimisers of the retained boxes that attain the smallest value form the approximate solution set.

Examples:
    Solve a benchmark problem::

        from sparta.globalopt.bnb import solve
        from sparta.globalopt.expression import parse
        from sparta.globalopt.geometry import parse_box
        from sparta.globalopt.models import SolverConfig

        f = parse("(x1^2 + x2 - 11)^2 + (x1 + x2^2 - 7)^2", 2)
        report = solve(f, parse_box("[-6,6]x[-6,6]"), 1e-3, SolverConfig())
        report.n_eps   # 4

    Step through the state machine::

        run = PiecewiseConvexification(f, parse_box("[-6,6]x[-6,6]"), SolverConfig())
        while run.step():
            print(run.state.iterations, run.state.v_glob)
        report = run.finish()
"""
import logging
import math
import time
from dataclasses import dataclass, field
from typing import List, Optional

import numpy as np

from sparta.globalopt.convex_solver import SolveResult, minimize_on_box
from sparta.globalopt.expression import Expression
from sparta.globalopt.geometry import BoxRegion, format_box, modified_width, split
from sparta.globalopt.models import BoxDump, RunReport, SolverConfig
from sparta.globalopt.relaxation import AlphaCertificate, HessianBounds, certify
from sparta.globalopt.solutions import Candidate, assemble_solution_set, cluster_solutions

logger = logging.getLogger(__name__)


@dataclass(eq=False)
class NodeRecord:
    """A box together with its relaxation data.

    Records compare by identity. ``candidate_value`` is ``f(candidate)``; it stays None for records that never entered the pool (discarded children and the unsolved root).
    """

    box: BoxRegion
    candidate: np.ndarray
    relaxed_min: float
    alpha: np.ndarray
    lambda_tilde: float
    hessian_bounds: HessianBounds
    candidate_value: Optional[float] = None
    solved: bool = True
    width: float = field(init=False)

    def __post_init__(self) -> None:
        self.width = modified_width(self.box, self.alpha)

    @classmethod
    def from_solve(cls, box: BoxRegion, certificate: AlphaCertificate, result: SolveResult) -> "NodeRecord":
        return cls(
            box=box,
            candidate=result.minimizer,
            relaxed_min=result.value,
            alpha=certificate.alpha,
            lambda_tilde=certificate.lambda_tilde,
            hessian_bounds=certificate.hessian_bounds,
        )


@dataclass
class SolverState:
    active: List[NodeRecord] = field(default_factory=list)
    convex: List[NodeRecord] = field(default_factory=list)
    discarded: List[NodeRecord] = field(default_factory=list)
    v_glob: float = math.inf
    v_act: float = math.inf
    x_act: Optional[np.ndarray] = None
    iterations: int = 0
    v_glob_history: List[float] = field(default_factory=list)

    @property
    def retained(self) -> List[NodeRecord]:
        return self.active + self.convex

    @property
    def pool(self) -> List[Candidate]:
        """Candidate points of all retained records that have been evaluated."""
        return [Candidate(r.candidate, r.candidate_value) for r in self.retained if r.candidate_value is not None]

    def max_width(self) -> float:
        return max((record.width for record in self.active), default=0.0)

    def covered_volume(self) -> float:
        return sum(record.box.volume() for record in self.active + self.convex + self.discarded)


def select_node(active: List[NodeRecord]) -> NodeRecord:
    """Removes and returns the earliest record of maximum modified width.

    Raises:
        IndexError: If ``active`` is empty.
    """
    if not active:
        raise IndexError("Cannot select node (empty active list)")
    widths = [record.width for record in active]
    return active.pop(widths.index(max(widths)))


def discard_sweep(state: SolverState, v_glob: float) -> int:
    """Moves every active record with ``relaxed_min > v_glob`` to the discarded list and returns how many were moved."""
    kept = [record for record in state.active if record.relaxed_min <= v_glob]
    moved = [record for record in state.active if record.relaxed_min > v_glob]
    state.active = kept
    state.discarded.extend(moved)
    return len(moved)


class PiecewiseConvexification:
    """Branch-and-bound state machine over one objective and domain.

    Args:
        f (Expression): Objective function, twice differentiable on ``domain``.
        domain (BoxRegion): Initial box.
        cfg (SolverConfig): Tolerances; ``cfg.epsilon`` is the termination threshold.

    Raises:
        DimensionMismatchError: If ``f`` and ``domain`` disagree in dimension.
        DomainError: If the Hessian cannot be enclosed over ``domain``.
    """

    def __init__(self, f: Expression, domain: BoxRegion, cfg: SolverConfig) -> None:
        self.f = f
        self.domain = domain
        self.cfg = cfg
        self.state = SolverState()
        self.truncated = False
        self.unconverged_solves = 0
        self._started = time.perf_counter()

        certificate = certify(f, domain, cfg)
        if certificate.convex:
            logger.info(f"{f} is convex on {format_box(domain)}; solving the root directly")
            result = self._solve(domain, certificate)
            record = NodeRecord.from_solve(domain, certificate, result)
            self.state.convex.append(record)
            self._admit(record)
        else:
            root = NodeRecord(
                box=domain,
                candidate=domain.midpoint(),
                relaxed_min=-math.inf,
                alpha=certificate.alpha,
                lambda_tilde=certificate.lambda_tilde,
                hessian_bounds=certificate.hessian_bounds,
                solved=False,
            )
            self.state.active.append(root)

    def _solve(self, box: BoxRegion, certificate: AlphaCertificate) -> SolveResult:
        result = minimize_on_box(self.f, box, certificate.alpha, self.cfg)
        if not result.converged:
            self.unconverged_solves += 1
        return result

    def _admit(self, record: NodeRecord) -> None:
        """Evaluates the candidate of a surviving record and updates the incumbent."""
        record.candidate_value = self.f.evaluate(record.candidate)
        if record.candidate_value <= self.state.v_act:
            self.state.x_act = record.candidate
            self.state.v_act = record.candidate_value
            self.state.v_glob = self.state.v_act
            moved = discard_sweep(self.state, self.state.v_glob)
            if moved:
                logger.debug(f"v_glob={self.state.v_glob:.9g} discarded {moved} active boxes")

    def _process(self, box: BoxRegion) -> None:
        certificate = certify(self.f, box, self.cfg)
        result = self._solve(box, certificate)
        record = NodeRecord.from_solve(box, certificate, result)
        if record.relaxed_min <= self.state.v_glob + self.cfg.discard_margin:
            (self.state.convex if certificate.convex else self.state.active).append(record)
            self._admit(record)
        else:
            self.state.discarded.append(record)

    def done(self) -> bool:
        return not self.state.active or self.state.max_width() <= self.cfg.epsilon

    def step(self) -> bool:
        """Performs one outer iteration.

        Returns:
            bool: False, without changing the state, if a termination test holds or the iteration cap has been reached.
        """
        if self.done():
            return False
        if self.state.iterations >= self.cfg.max_outer_iters:
            if not self.truncated:
                logger.warning(f"Stopping after {self.state.iterations} iterations (max_outer_iters) with {len(self.state.active)} active boxes")
            self.truncated = True
            return False
        self.state.iterations += 1
        record = select_node(self.state.active)
        for child in split(record.box):
            self._process(child)
        self.state.v_glob_history.append(self.state.v_glob)
        logger.debug(
            f"iter={self.state.iterations} active={len(self.state.active)} convex={len(self.state.convex)} "
            f"discarded={len(self.state.discarded)} v_glob={self.state.v_glob:.9g}"
        )
        return True

    def finish(self) -> RunReport:
        """Builds the report from the current state.

        Retained records that were never solved (only possible for the root) are solved here so that they contribute their candidate.
        """
        for record in self.state.retained:
            if not record.solved:
                certificate = AlphaCertificate(alpha=record.alpha, lambda_tilde=record.lambda_tilde, hessian_bounds=record.hessian_bounds)
                result = self._solve(record.box, certificate)
                record.candidate, record.relaxed_min, record.solved = result.minimizer, result.value, True
                self._admit(record)
        if self.unconverged_solves:
            logger.warning(f"{self.unconverged_solves} convex sub-problems did not reach inner_tol={self.cfg.inner_tol}")

        flag_ter = 0 if self.state.active or self.truncated else 1
        solutions = assemble_solution_set(self.state.pool, self.cfg.filter_tol)
        clusters = cluster_solutions(solutions, self.cfg.cluster_delta)
        f_min = min((c.value for c in solutions), default=None)
        if f_min is None:
            logger.warning(f"No candidate survived for {self.f} on {format_box(self.domain)}")

        boxes: Optional[List[BoxDump]] = None
        if self.cfg.dump_boxes:
            boxes = [
                BoxDump(membership=membership, lower=list(record.box.a), upper=list(record.box.b))
                for membership, records in (("convex", self.state.convex), ("active", self.state.active), ("discarded", self.state.discarded))
                for record in records
            ]

        report = RunReport(
            function=self.f.to_text(),
            dimension=self.f.dimension,
            domain=format_box(self.domain),
            epsilon=self.cfg.epsilon,
            iterations=self.state.iterations,
            flag_ter=flag_ter,
            truncated=self.truncated,
            f_min=f_min,
            solutions=[c.point.tolist() for c in solutions],
            solution_values=[c.value for c in solutions],
            clusters=[c.point.tolist() for c in clusters],
            n_eps=len(clusters),
            boxes_convex=len(self.state.convex),
            boxes_active=len(self.state.active),
            boxes_discarded=len(self.state.discarded),
            pool_size=len(self.state.pool),
            boxes=boxes,
            wall_time=time.perf_counter() - self._started,
        )
        logger.info(f"Finished {self.f} on {report.domain}: {report.summary()}")
        return report


def solve(f: Expression, domain: BoxRegion, epsilon: float, cfg: Optional[SolverConfig] = None) -> RunReport:
    """Runs the branch and bound to completion.

    Args:
        f (Expression): Objective function.
        domain (BoxRegion): Initial box.
        epsilon (float): Termination threshold; overrides ``cfg.epsilon``.
        cfg (Optional[SolverConfig]): Remaining tolerances, defaults if None.

    Returns:
        RunReport: Solutions, counts and termination flag.
    """
    base = cfg or SolverConfig()
    run = PiecewiseConvexification(f, domain, SolverConfig.model_validate({**base.model_dump(), "epsilon": epsilon}))
    while run.step():
        pass
    return run.finish()
