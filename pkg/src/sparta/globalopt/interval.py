#!/usr/bin/env python
# -*- coding: utf-8 -*-
"""interval.py: Interval arithmetic and natural interval extensions of expressions.

Enclosures are computed in plain IEEE double arithmetic without directed rounding. ``sin`` and ``cos`` are tight: interior extrema are found by checking
which critical points ``k*pi/2`` fall inside the argument. ``exp``, ``ln`` and integer powers are tight by monotonicity.

Examples:
    Enclose a Hessian entry over a box::

        from sparta.globalopt.expression import parse
        from sparta.globalopt.geometry import BoxRegion
        from sparta.globalopt.interval import interval_evaluate

        f = parse("20 + x1^2 + x2^2 - 10*(cos(2*pi*x1) + cos(2*pi*x2))", 2)
        box = BoxRegion(a=(-5.12, -5.12), b=(5.12, 5.12))
        interval_evaluate(f.hessian[0][0], box)   # Interval(lo=2-40*pi^2, hi=2+40*pi^2)
"""
import logging
import math
from dataclasses import dataclass
from typing import Union

from sparta.globalopt.errors import DimensionMismatchError, DomainError, IntervalDivisionError
from sparta.globalopt.expression.nodes import BinOp, Const, Expression, Func, Neg, Node, Pow, Var
from sparta.globalopt.geometry import BoxRegion

logger = logging.getLogger(__name__)

TWO_PI = 2.0 * math.pi

Operand = Union["Interval", float, int]


@dataclass(frozen=True, slots=True)
class Interval:
    """A closed, bounded interval ``[lo, hi]`` of reals.

    Raises:
        DomainError: If a bound is not finite or ``lo > hi``.
    """

    lo: float
    hi: float

    def __post_init__(self) -> None:
        if not (math.isfinite(self.lo) and math.isfinite(self.hi)):
            raise DomainError(f"Cannot build interval ([{self.lo}, {self.hi}]): bounds must be finite")
        if self.lo > self.hi:
            raise DomainError(f"Cannot build interval ([{self.lo}, {self.hi}]): lower bound exceeds upper bound")

    @classmethod
    def point(cls, x: float) -> "Interval":
        return cls(float(x), float(x))

    @property
    def width(self) -> float:
        return self.hi - self.lo

    @property
    def magnitude(self) -> float:
        """``max(|lo|, |hi|)``."""
        return max(abs(self.lo), abs(self.hi))

    @property
    def midpoint(self) -> float:
        return 0.5 * (self.lo + self.hi)

    def contains(self, x: float, tol: float = 0.0) -> bool:
        return self.lo - tol <= x <= self.hi + tol

    def is_subset(self, other: "Interval", tol: float = 0.0) -> bool:
        return other.lo - tol <= self.lo and self.hi <= other.hi + tol

    def hull(self, other: "Interval") -> "Interval":
        return Interval(min(self.lo, other.lo), max(self.hi, other.hi))

    def widen(self, slack: float) -> "Interval":
        """Relative outward widening ``[lo - s(1+|lo|), hi + s(1+|hi|)]``; ``slack=0`` returns the interval itself."""
        if slack == 0.0:
            return self
        return Interval(self.lo - slack * (1.0 + abs(self.lo)), self.hi + slack * (1.0 + abs(self.hi)))

    def __neg__(self) -> "Interval":
        return Interval(-self.hi, -self.lo)

    def __add__(self, other: Operand) -> "Interval":
        o = _coerce(other)
        return Interval(self.lo + o.lo, self.hi + o.hi)

    __radd__ = __add__

    def __sub__(self, other: Operand) -> "Interval":
        o = _coerce(other)
        return Interval(self.lo - o.hi, self.hi - o.lo)

    def __rsub__(self, other: Operand) -> "Interval":
        return _coerce(other) - self

    def __mul__(self, other: Operand) -> "Interval":
        o = _coerce(other)
        products = (self.lo * o.lo, self.lo * o.hi, self.hi * o.lo, self.hi * o.hi)
        return Interval(min(products), max(products))

    __rmul__ = __mul__

    def __truediv__(self, other: Operand) -> "Interval":
        o = _coerce(other)
        if o.lo <= 0.0 <= o.hi:
            raise IntervalDivisionError(f"Cannot divide ({self} / {o}): denominator contains zero")
        quotients = (self.lo / o.lo, self.lo / o.hi, self.hi / o.lo, self.hi / o.hi)
        return Interval(min(quotients), max(quotients))

    def __rtruediv__(self, other: Operand) -> "Interval":
        return _coerce(other) / self

    def __pow__(self, exponent: int) -> "Interval":
        return pow_int(self, exponent)

    def __str__(self) -> str:
        return f"[{self.lo!r}, {self.hi!r}]"


def _coerce(value: Operand) -> Interval:
    return value if isinstance(value, Interval) else Interval.point(float(value))


def _hits(a: Interval, phase: float) -> bool:
    """True if some ``phase + 2*pi*k`` lies in ``a``."""
    k = math.ceil((a.lo - phase) / TWO_PI)
    return phase + TWO_PI * k <= a.hi


def sin(a: Interval) -> Interval:
    if a.width >= TWO_PI:
        return Interval(-1.0, 1.0)
    lo, hi = sorted((math.sin(a.lo), math.sin(a.hi)))
    if _hits(a, 0.5 * math.pi):
        hi = 1.0
    if _hits(a, -0.5 * math.pi):
        lo = -1.0
    return Interval(lo, hi)


def cos(a: Interval) -> Interval:
    if a.width >= TWO_PI:
        return Interval(-1.0, 1.0)
    lo, hi = sorted((math.cos(a.lo), math.cos(a.hi)))
    if _hits(a, 0.0):
        hi = 1.0
    if _hits(a, math.pi):
        lo = -1.0
    return Interval(lo, hi)


def exp(a: Interval) -> Interval:
    try:
        return Interval(math.exp(a.lo), math.exp(a.hi))
    except OverflowError as e:
        raise DomainError(f"Cannot enclose exp({a}): overflow") from e


def ln(a: Interval) -> Interval:
    if a.lo <= 0.0:
        raise DomainError(f"Cannot enclose ln({a}): argument must be positive")
    return Interval(math.log(a.lo), math.log(a.hi))


def pow_int(a: Interval, exponent: int) -> Interval:
    """Tight enclosure of ``a**exponent`` for a non-negative integer exponent."""
    if exponent < 0:
        raise DomainError(f"Cannot enclose {a}^{exponent}: exponent must be non-negative")
    if exponent == 0:
        return Interval(1.0, 1.0)
    try:
        lo, hi = a.lo**exponent, a.hi**exponent
    except OverflowError as e:
        raise DomainError(f"Cannot enclose {a}^{exponent}: overflow") from e
    if exponent % 2 == 1 or a.lo >= 0.0:
        return Interval(lo, hi)
    if a.hi <= 0.0:
        return Interval(hi, lo)
    return Interval(0.0, max(lo, hi))


_FUNCTIONS = {"sin": sin, "cos": cos, "exp": exp, "ln": ln}


def _enclose(node: Node, box: BoxRegion) -> Interval:
    if isinstance(node, Const):
        return Interval.point(node.value)
    if isinstance(node, Var):
        return Interval(box.a[node.index], box.b[node.index])
    if isinstance(node, Neg):
        return -_enclose(node.arg, box)
    if isinstance(node, Func):
        return _FUNCTIONS[node.name](_enclose(node.arg, box))
    if isinstance(node, Pow):
        return pow_int(_enclose(node.base, box), node.exponent)
    if isinstance(node, BinOp):
        left, right = _enclose(node.left, box), _enclose(node.right, box)
        if node.op == "+":
            return left + right
        if node.op == "-":
            return left - right
        if node.op == "*":
            return left * right
        return left / right
    raise TypeError(f"Cannot enclose node {node!r}")


def interval_evaluate(expr: Expression, box: BoxRegion) -> Interval:
    """Natural interval extension of ``expr`` over ``box``.

    Args:
        expr (Expression): The expression to enclose.
        box (BoxRegion): Box of the same dimension.

    Returns:
        Interval: An interval containing ``expr(x)`` for every ``x`` in the box.

    Raises:
        DimensionMismatchError: If the dimensions differ.
        DomainError: If an operation leaves its domain somewhere on the box.
    """
    if box.dimension != expr.dimension:
        raise DimensionMismatchError(f"Cannot enclose expression (box dimension {box.dimension}): expression dimension is {expr.dimension}")
    return _enclose(expr.root, box)
