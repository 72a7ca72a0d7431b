"""oracle.py: Reference minima for benchmark fixtures and soundness checks.

``grid_minimum`` evaluates an objective on a regular grid with numpy; ``refine_minimizer`` polishes an approximate minimiser with projected, damped Newton
steps on the symbolic gradient and Hessian.
"""
import logging
from typing import Sequence, Tuple

import numpy as np

from sparta.globalopt.expression import Expression
from sparta.globalopt.geometry import BoxRegion

logger = logging.getLogger(__name__)


def grid_minimum(expr: Expression, box: BoxRegion, points_per_axis: int = 1001) -> Tuple[float, np.ndarray]:
    """Smallest value of ``expr`` over a regular grid including the box corners.

    Args:
        expr (Expression): Objective function.
        box (BoxRegion): Domain; the grid has ``points_per_axis**n`` points.
        points_per_axis (int): Grid resolution per axis.

    Returns:
        Tuple[float, np.ndarray]: The minimum grid value and the grid point attaining it. Points outside the domain of ``expr`` are ignored.
    """
    axes = [np.linspace(lo, hi, points_per_axis) for lo, hi in zip(box.a, box.b)]
    values = expr.evaluate_many(np.meshgrid(*axes, indexing="ij"))
    values = np.where(np.isfinite(values), values, np.inf)
    index = np.unravel_index(int(np.argmin(values)), values.shape)
    return float(values[index]), np.array([axis[i] for axis, i in zip(axes, index)])


def _hessian_at(expr: Expression, x: np.ndarray) -> np.ndarray:
    n = expr.dimension
    return np.array([[expr.hessian[i][j].evaluate(x) for j in range(n)] for i in range(n)])


def refine_minimizer(expr: Expression, box: BoxRegion, seed: Sequence[float], tol: float = 1e-13, max_iters: int = 100) -> np.ndarray:
    """Polishes ``seed`` towards a nearby local minimiser inside ``box``.

    Newton directions are used where the Hessian is positive definite, gradient directions otherwise; each step is halved until the value does not increase
    and is projected onto the box.
    """
    x = box.project(seed)
    fx = expr.evaluate(x)
    for _ in range(max_iters):
        gradient = expr.evaluate_gradient(x)
        try:
            direction = np.linalg.solve(_hessian_at(expr, x), gradient)
        except np.linalg.LinAlgError:
            direction = gradient
        if float(np.dot(direction, gradient)) <= 0.0:
            direction = gradient
        step = 1.0
        while step > 1e-12:
            candidate = box.project(x - step * direction)
            value = expr.evaluate(candidate)
            if value <= fx:
                break
            step *= 0.5
        else:
            break
        moved = float(np.max(np.abs(candidate - x)))
        x, fx = candidate, value
        if moved <= tol:
            break
    logger.debug(f"Refined {list(seed)} to {x.tolist()} (f={fx!r})")
    return x
