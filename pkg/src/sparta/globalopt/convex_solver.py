#!/usr/bin/env python
# -*- coding: utf-8 -*-
"""convex_solver.py: Projected gradient descent for the convexified sub-problems.

The iteration starts at the box midpoint. Trial steps come from the Barzilai-Borwein quotient ``s.s / s.y`` of the last two iterates and are
backtracked until the Armijo condition holds along the projection arc. It stops once the projected-gradient residual
``||x - clip(x - grad F(x))||_inf`` drops to ``inner_tol``.
"""
import logging
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from sparta.globalopt.expression import Expression
from sparta.globalopt.geometry import BoxRegion
from sparta.globalopt.models.config import SolverConfig
from sparta.globalopt.relaxation import relaxed_value

logger = logging.getLogger(__name__)

MIN_STEP = 1e-20
MAX_STEP = 1e12
# Relative decrease below which an accepted step counts as rounding noise.
STALL_DECREASE = 1e-15


@dataclass(frozen=True)
class SolveResult:
    minimizer: np.ndarray
    value: float
    iterations: int
    converged: bool


def minimize_on_box(f: Expression, box: BoxRegion, alpha: Sequence[float], cfg: SolverConfig) -> SolveResult:
    """Minimises the underestimator of ``f`` on ``box``.

    Args:
        f (Expression): Objective function.
        box (BoxRegion): Feasible box.
        alpha (Sequence[float]): Shift that makes the underestimator convex on the box.
        cfg (SolverConfig): Supplies ``inner_tol``, ``inner_max_iters`` and the line-search constants.

    Returns:
        SolveResult: Best iterate found. ``converged`` is False if the iteration cap was reached or the line search broke down.
    """
    lower, upper = box.lower, box.upper
    centre = lower + upper
    weights = np.asarray(alpha, dtype=float)

    def value_at(point: np.ndarray) -> float:
        return f.evaluate(point) + float(np.dot(weights, (lower - point) * (upper - point)))

    def gradient_at(point: np.ndarray) -> np.ndarray:
        return f.evaluate_gradient(point) + weights * (2.0 * point - centre)

    x = box.midpoint()
    fx = relaxed_value(f, box, weights, x)
    gradient = gradient_at(x)
    step = cfg.inner_step_init
    for iteration in range(cfg.inner_max_iters):
        residual = float(np.max(np.abs(x - np.clip(x - gradient, lower, upper))))
        if residual <= cfg.inner_tol:
            return SolveResult(minimizer=x, value=fx, iterations=iteration, converged=True)
        while True:
            candidate = np.clip(x - step * gradient, lower, upper)
            value = value_at(candidate)
            if value <= fx + cfg.inner_armijo * float(np.dot(gradient, candidate - x)):
                break
            step *= cfg.inner_step_shrink
            if step < MIN_STEP:
                logger.debug(f"Line search broke down on {box} after {iteration} iterations (residual {residual:.3e})")
                return SolveResult(minimizer=x, value=fx, iterations=iteration, converged=False)
        if fx - value <= STALL_DECREASE * (1.0 + abs(fx)):
            logger.debug(f"Inner solver stalled on {box} after {iteration} iterations (residual {residual:.3e})")
            return SolveResult(minimizer=candidate, value=value, iterations=iteration + 1, converged=False)
        next_gradient = gradient_at(candidate)
        s, y = candidate - x, next_gradient - gradient
        curvature = float(np.dot(s, y))
        if curvature > 0.0:
            step = float(np.clip(np.dot(s, s) / curvature, MIN_STEP, MAX_STEP))
        else:
            step = min(MAX_STEP, 2.0 * step)
        x, fx, gradient = candidate, value, next_gradient
    logger.debug(f"Inner solver hit {cfg.inner_max_iters} iterations on {box}")
    return SolveResult(minimizer=x, value=fx, iterations=cfg.inner_max_iters, converged=False)
