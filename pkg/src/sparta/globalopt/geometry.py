#!/usr/bin/env python
# -*- coding: utf-8 -*-
"""geometry.py: Axis-aligned boxes, bisection and subdivision bookkeeping.

Examples:
    Split a box along its branching index::

        from sparta.globalopt.geometry import parse_box, split

        left, right = split(parse_box("[0,4]x[0,2]"))
        left.b     # (2.0, 2.0)
        right.a    # (2.0, 0.0)
"""
import itertools
import logging
import math
import re
from typing import Iterable, List, Sequence, Tuple

import numpy as np
from pydantic import BaseModel, ConfigDict, model_validator

from sparta.globalopt.errors import BoxFormatError, DegenerateBoxError, DimensionMismatchError

logger = logging.getLogger(__name__)

_FACTOR = re.compile(r"\s*\[\s*([^,\[\]]+?)\s*,\s*([^,\[\]]+?)\s*\]\s*")
_SEPARATOR = re.compile(r"[x×]")


class BoxRegion(BaseModel):
    """The box ``[a, b] = [a_1, b_1] x ... x [a_n, b_n]``.

    Attributes:
        a (Tuple[float, ...]): Lower corner.
        b (Tuple[float, ...]): Upper corner, ``a_i <= b_i``.
    """

    model_config = ConfigDict(frozen=True)

    a: Tuple[float, ...]
    b: Tuple[float, ...]

    @model_validator(mode="after")
    def _check_corners(self) -> "BoxRegion":
        if len(self.a) != len(self.b):
            raise ValueError(f"corners have different lengths {len(self.a)} and {len(self.b)}")
        if not self.a:
            raise ValueError("a box needs at least one dimension")
        for i, (lo, hi) in enumerate(zip(self.a, self.b)):
            if not (math.isfinite(lo) and math.isfinite(hi)):
                raise ValueError(f"bounds of dimension {i + 1} must be finite")
            if lo > hi:
                raise ValueError(f"lower bound {lo} exceeds upper bound {hi} in dimension {i + 1}")
        return self

    @classmethod
    def from_arrays(cls, lower: Sequence[float], upper: Sequence[float]) -> "BoxRegion":
        return cls(a=tuple(float(v) for v in lower), b=tuple(float(v) for v in upper))

    @property
    def dimension(self) -> int:
        return len(self.a)

    @property
    def lower(self) -> np.ndarray:
        return np.array(self.a, dtype=float)

    @property
    def upper(self) -> np.ndarray:
        return np.array(self.b, dtype=float)

    def widths(self) -> np.ndarray:
        return self.upper - self.lower

    def midpoint(self) -> np.ndarray:
        return 0.5 * (self.lower + self.upper)

    def volume(self) -> float:
        """Lebesgue measure of the box."""
        return float(np.prod(self.widths()))

    def corners(self) -> List[np.ndarray]:
        """All ``2**n`` vertices, lower corner first."""
        return [np.array(c, dtype=float) for c in itertools.product(*zip(self.a, self.b))]

    def contains(self, point: Sequence[float], slack: float = 0.0) -> bool:
        x = np.asarray(point, dtype=float)
        if x.shape != (self.dimension,):
            raise DimensionMismatchError(f"Cannot test containment (point of shape {x.shape}): box dimension is {self.dimension}")
        return bool(np.all(self.lower - slack <= x) and np.all(x <= self.upper + slack))

    def is_subset(self, other: "BoxRegion") -> bool:
        _check_dimension(self, other.dimension)
        return all(oa <= sa and sb <= ob for sa, sb, oa, ob in zip(self.a, self.b, other.a, other.b))

    def project(self, point: Sequence[float]) -> np.ndarray:
        """Component-wise clip of ``point`` into the box."""
        return np.clip(np.asarray(point, dtype=float), self.lower, self.upper)

    def __str__(self) -> str:
        return format_box(self)


def _check_dimension(box: BoxRegion, n: int) -> None:
    if box.dimension != n:
        raise DimensionMismatchError(f"Cannot combine box of dimension {box.dimension} with dimension {n}")


def branching_index(box: BoxRegion) -> int:
    """Smallest 0-based index attaining the maximum width.

    Raises:
        DegenerateBoxError: If every width is zero.
    """
    widths = box.widths()
    if not np.any(widths > 0.0):
        raise DegenerateBoxError(f"Cannot branch (all widths zero): {format_box(box)}")
    return int(np.argmax(widths))


def split(box: BoxRegion) -> Tuple[BoxRegion, BoxRegion]:
    """Bisects ``box`` at the midpoint of its branching index.

    Returns:
        Tuple[BoxRegion, BoxRegion]: Lower and upper child sharing the facet at the midpoint.

    Raises:
        DegenerateBoxError: If every width is zero.
    """
    index = branching_index(box)
    middle = 0.5 * (box.a[index] + box.b[index])
    left = BoxRegion(a=box.a, b=box.b[:index] + (middle,) + box.b[index + 1 :])
    right = BoxRegion(a=box.a[:index] + (middle,) + box.a[index + 1 :], b=box.b)
    return left, right


def modified_width(box: BoxRegion, alpha: Sequence[float]) -> float:
    """Returns ``sum_i alpha_i * ((b_i - a_i) / 2)**2``."""
    weights = np.asarray(alpha, dtype=float)
    _check_dimension(box, weights.shape[0])
    return float(np.dot(weights, (0.5 * box.widths()) ** 2))


def subdivision_length(boxes: Iterable[BoxRegion]) -> float:
    """Largest squared diameter over ``boxes``; zero for an empty collection."""
    return max((float(np.sum(box.widths() ** 2)) for box in boxes), default=0.0)


def parse_box(text: str) -> BoxRegion:
    """Parses a box literal such as ``"[-5.12,5.12]x[-5.12,5.12]"``.

    Raises:
        BoxFormatError: If the literal is malformed, a bound is not a finite number, or a lower bound exceeds its upper bound.
    """
    factors = _SEPARATOR.split(text.strip()) if text.strip() else []
    if not factors:
        raise BoxFormatError(f"Cannot parse box (empty literal): {text!r}")
    lower: List[float] = []
    upper: List[float] = []
    for factor in factors:
        match = _FACTOR.fullmatch(factor)
        if match is None:
            raise BoxFormatError(f"Cannot parse box (malformed factor {factor.strip()!r}): {text!r}")
        try:
            lo, hi = float(match.group(1)), float(match.group(2))
        except ValueError as e:
            raise BoxFormatError(f"Cannot parse box (bad number in {factor.strip()!r}): {text!r}") from e
        if not (math.isfinite(lo) and math.isfinite(hi)) or lo > hi:
            raise BoxFormatError(f"Cannot parse box (invalid bounds in {factor.strip()!r}): {text!r}")
        lower.append(lo)
        upper.append(hi)
    return BoxRegion(a=tuple(lower), b=tuple(upper))


def format_box(box: BoxRegion) -> str:
    return "x".join(f"[{lo!r},{hi!r}]" for lo, hi in zip(box.a, box.b))
