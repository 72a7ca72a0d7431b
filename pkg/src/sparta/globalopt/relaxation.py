#!/usr/bin/env python
# -*- coding: utf-8 -*-
"""relaxation.py: Convex underestimators of the form ``F(x) = f(x) + sum_i alpha_i (a_i - x_i)(b_i - x_i)``.

Hessian entries are enclosed with interval arithmetic over the box. From these enclosures two Gerschgorin-type quantities are derived:

* ``lambda_tilde`` (unit scaling), a lower bound on the smallest Hessian eigenvalue. A non-negative value certifies that ``f`` is convex on the box and
  ``alpha`` is zero.
* ``alpha`` (scaling by the box widths ``d = b - a``), the per-dimension shift that makes ``F`` convex.

Examples:
    Certify a box::

        from sparta.globalopt.expression import parse
        from sparta.globalopt.geometry import parse_box
        from sparta.globalopt.models import SolverConfig
        from sparta.globalopt.relaxation import certify, relaxed_value

        f = parse("-x1^2 - x2^2", 2)
        box = parse_box("[0,1]x[0,1]")
        certificate = certify(f, box, SolverConfig())
        certificate.alpha                                      # array([1., 1.])
        relaxed_value(f, box, certificate.alpha, [0.5, 0.5])   # -1.0
"""
import logging
from dataclasses import dataclass
from typing import Sequence, Tuple

import numpy as np

from sparta.globalopt.constants import DEGENERATE_WIDTH
from sparta.globalopt.errors import DimensionMismatchError
from sparta.globalopt.expression import Expression
from sparta.globalopt.geometry import BoxRegion, modified_width
from sparta.globalopt.interval import Interval, interval_evaluate
from sparta.globalopt.models.config import SolverConfig

logger = logging.getLogger(__name__)

HessianBounds = Tuple[Tuple[Interval, ...], ...]


@dataclass(frozen=True)
class AlphaCertificate:
    """Convexification data of one box.

    Attributes:
        alpha (np.ndarray): Non-negative shift per dimension; all zero when ``lambda_tilde >= 0``.
        lambda_tilde (float): Lower bound of the smallest Hessian eigenvalue over the box.
        hessian_bounds (HessianBounds): Symmetric matrix of Hessian entry enclosures.
    """

    alpha: np.ndarray
    lambda_tilde: float
    hessian_bounds: HessianBounds

    @property
    def convex(self) -> bool:
        return self.lambda_tilde >= 0.0


def hessian_interval_bounds(f: Expression, box: BoxRegion, slack: float = 0.0) -> HessianBounds:
    """Encloses every Hessian entry of ``f`` over ``box``.

    Args:
        f (Expression): Objective function.
        box (BoxRegion): Box of the same dimension.
        slack (float): Relative outward widening applied to each enclosure.

    Returns:
        HessianBounds: Entry ``(i, j)`` contains the second derivative for every point of the box; the matrix is symmetric.

    Raises:
        DomainError: If a Hessian entry cannot be enclosed over the box.
    """
    n = f.dimension
    upper = {(i, j): interval_evaluate(f.hessian[i][j], box).widen(slack) for i in range(n) for j in range(i, n)}
    return tuple(tuple(upper[(min(i, j), max(i, j))] for j in range(n)) for i in range(n))


def _off_diagonal_sums(bounds: HessianBounds, scale: np.ndarray) -> np.ndarray:
    n = len(bounds)
    magnitudes = np.array([[bounds[i][j].magnitude if i != j else 0.0 for j in range(n)] for i in range(n)])
    return magnitudes @ scale


def lambda_tilde(bounds: HessianBounds) -> float:
    """``min_i (lo(H_ii) - sum_{j != i} mag(H_ij))``."""
    n = len(bounds)
    diagonal = np.array([bounds[i][i].lo for i in range(n)])
    return float(np.min(diagonal - _off_diagonal_sums(bounds, np.ones(n))))


def compute_alpha(bounds: HessianBounds, box: BoxRegion, degenerate_width: float = DEGENERATE_WIDTH) -> AlphaCertificate:
    """Computes the shift ``alpha_i = max(0, -(lo(H_ii) - sum_{j != i} mag(H_ij) d_j / d_i) / 2)`` with ``d = b - a``.

    Dimensions with a width of at most ``degenerate_width`` get ``alpha_i = 0`` and do not contribute to the sums of other rows.

    Args:
        bounds (HessianBounds): Hessian enclosures over ``box``.
        box (BoxRegion): The box.
        degenerate_width (float): Width threshold for degenerate dimensions.

    Returns:
        AlphaCertificate: The certificate; ``alpha`` is zero whenever ``lambda_tilde >= 0``.
    """
    n = len(bounds)
    if box.dimension != n:
        raise DimensionMismatchError(f"Cannot compute alpha (box dimension {box.dimension}): Hessian has dimension {n}")
    lam = lambda_tilde(bounds)
    alpha = np.zeros(n)
    if lam < 0.0:
        widths = box.widths()
        active = widths > degenerate_width
        scale = np.where(active, widths, 0.0)
        sums = _off_diagonal_sums(bounds, scale)
        for i in np.flatnonzero(active):
            alpha[i] = max(0.0, -0.5 * (bounds[i][i].lo - sums[i] / widths[i]))
    return AlphaCertificate(alpha=alpha, lambda_tilde=lam, hessian_bounds=bounds)


def certify(f: Expression, box: BoxRegion, cfg: SolverConfig) -> AlphaCertificate:
    bounds = hessian_interval_bounds(f, box, cfg.interval_slack)
    return compute_alpha(bounds, box, cfg.degenerate_width)


def relaxed_value(f: Expression, box: BoxRegion, alpha: Sequence[float], x: Sequence[float]) -> float:
    """Evaluates the underestimator ``F(x) = f(x) + sum_i alpha_i (a_i - x_i)(b_i - x_i)`` at a point of the box."""
    point = np.asarray(x, dtype=float)
    assert box.contains(point, slack=1e-9), f"point {point} outside {box}"
    shift = np.dot(np.asarray(alpha, dtype=float), (box.lower - point) * (box.upper - point))
    return f.evaluate(point) + float(shift)


def relaxed_gradient(f: Expression, box: BoxRegion, alpha: Sequence[float], x: Sequence[float]) -> np.ndarray:
    point = np.asarray(x, dtype=float)
    return f.evaluate_gradient(point) + np.asarray(alpha, dtype=float) * (2.0 * point - box.lower - box.upper)


def separation_distance(box: BoxRegion, alpha: Sequence[float]) -> float:
    """Maximum gap ``f - F`` over the box, attained at the midpoint; identical to the modified width."""
    return modified_width(box, alpha)
