#!/usr/bin/env python
# -*- coding: utf-8 -*-
"""nodes.py: Immutable expression trees with exact symbolic differentiation.

An :class:`Expression` wraps the root :class:`Node` of an objective function over ``n`` box-constrained variables. Nodes are frozen dataclasses, so an
expression can be shared freely between threads. Derivatives are expression trees again, which is what allows the interval module to enclose Hessian
entries over whole boxes instead of evaluating them at points.

Point evaluation compiles the tree once into a Python function (standard ``math`` functions); vectorised evaluation compiles the same source against numpy
ufuncs.

Examples:
    Build and differentiate an objective::

        from sparta.globalopt.expression import parse

        f = parse("x1^2 + x1*x2", 2)
        f.evaluate([1.0, 2.0])                 # 3.0
        f.differentiate(0).to_text()           # "((2.0 * x1) + x2)"
        f.hessian[0][1].evaluate([0.0, 0.0])   # 1.0
"""
from __future__ import annotations

import logging
import math
from dataclasses import dataclass
from functools import cached_property
from typing import Any, Callable, Dict, Optional, Sequence, Set, Tuple

import numpy as np

from sparta.globalopt.errors import DimensionMismatchError, DomainError

logger = logging.getLogger(__name__)

FUNCTIONS = ("sin", "cos", "exp", "ln")
BINARY_OPERATORS = ("+", "-", "*", "/")

_MATH_NAMESPACE: Dict[str, Any] = {"sin": math.sin, "cos": math.cos, "exp": math.exp, "ln": math.log, "__builtins__": {}}
_NUMPY_NAMESPACE: Dict[str, Any] = {"sin": np.sin, "cos": np.cos, "exp": np.exp, "ln": np.log, "__builtins__": {}}


class Node:
    """Base class of all expression tree nodes."""

    __slots__ = ()


@dataclass(frozen=True)
class Const(Node):
    value: float
    name: Optional[str] = None


@dataclass(frozen=True)
class Var(Node):
    """Variable ``x_{index+1}``; indices are 0-based internally."""

    index: int


@dataclass(frozen=True)
class Neg(Node):
    arg: Node


@dataclass(frozen=True)
class Func(Node):
    name: str
    arg: Node


@dataclass(frozen=True)
class BinOp(Node):
    op: str
    left: Node
    right: Node


@dataclass(frozen=True)
class Pow(Node):
    """Integer power with a non-negative literal exponent."""

    base: Node
    exponent: int


ZERO = Const(0.0)
ONE = Const(1.0)
PI = Const(math.pi, "pi")


def _is_const(node: Node, value: Optional[float] = None) -> bool:
    return isinstance(node, Const) and (value is None or node.value == value)


def _folded(value: float) -> Optional[Const]:
    return Const(value) if math.isfinite(value) else None


# Smart constructors: constant folding and 0/1 identities only.


def add(left: Node, right: Node) -> Node:
    if _is_const(left, 0.0):
        return right
    if _is_const(right, 0.0):
        return left
    if isinstance(left, Const) and isinstance(right, Const):
        return _folded(left.value + right.value) or BinOp("+", left, right)
    return BinOp("+", left, right)


def sub(left: Node, right: Node) -> Node:
    if _is_const(right, 0.0):
        return left
    if _is_const(left, 0.0):
        return neg(right)
    if isinstance(left, Const) and isinstance(right, Const):
        return _folded(left.value - right.value) or BinOp("-", left, right)
    return BinOp("-", left, right)


def mul(left: Node, right: Node) -> Node:
    if _is_const(left, 0.0) or _is_const(right, 0.0):
        return ZERO
    if _is_const(left, 1.0):
        return right
    if _is_const(right, 1.0):
        return left
    if isinstance(left, Const) and isinstance(right, Const):
        return _folded(left.value * right.value) or BinOp("*", left, right)
    return BinOp("*", left, right)


def div(left: Node, right: Node) -> Node:
    if _is_const(right, 1.0):
        return left
    if isinstance(left, Const) and isinstance(right, Const) and right.value != 0.0:
        return _folded(left.value / right.value) or BinOp("/", left, right)
    return BinOp("/", left, right)


def neg(arg: Node) -> Node:
    if isinstance(arg, Const):
        return Const(-arg.value)
    if isinstance(arg, Neg):
        return arg.arg
    return Neg(arg)


def power(base: Node, exponent: int) -> Node:
    if exponent == 0:
        return ONE
    if exponent == 1:
        return base
    if isinstance(base, Const):
        try:
            return _folded(base.value**exponent) or Pow(base, exponent)
        except OverflowError:
            return Pow(base, exponent)
    return Pow(base, exponent)


def func(name: str, arg: Node) -> Node:
    return Func(name, arg)


def derive(node: Node, index: int) -> Node:
    """Returns the exact partial derivative of ``node`` with respect to variable ``index`` (0-based)."""
    if isinstance(node, Const):
        return ZERO
    if isinstance(node, Var):
        return ONE if node.index == index else ZERO
    if isinstance(node, Neg):
        return neg(derive(node.arg, index))
    if isinstance(node, BinOp):
        du = derive(node.left, index)
        dv = derive(node.right, index)
        if node.op == "+":
            return add(du, dv)
        if node.op == "-":
            return sub(du, dv)
        if node.op == "*":
            return add(mul(du, node.right), mul(node.left, dv))
        # quotient rule, split so a constant denominator stays a plain division
        if _is_const(dv, 0.0):
            return div(du, node.right)
        return div(sub(mul(du, node.right), mul(node.left, dv)), power(node.right, 2))
    if isinstance(node, Pow):
        du = derive(node.base, index)
        if _is_const(du, 0.0):
            return ZERO
        return mul(mul(Const(float(node.exponent)), power(node.base, node.exponent - 1)), du)
    if isinstance(node, Func):
        du = derive(node.arg, index)
        if _is_const(du, 0.0):
            return ZERO
        if node.name == "sin":
            return mul(func("cos", node.arg), du)
        if node.name == "cos":
            return neg(mul(func("sin", node.arg), du))
        if node.name == "exp":
            return mul(node, du)
        if node.name == "ln":
            return div(du, node.arg)
    raise TypeError(f"Cannot differentiate node {node!r}")


def variables(node: Node) -> Set[int]:
    """Returns the set of 0-based variable indices referenced by ``node``."""
    if isinstance(node, Var):
        return {node.index}
    if isinstance(node, (Neg, Func)):
        return variables(node.arg)
    if isinstance(node, BinOp):
        return variables(node.left) | variables(node.right)
    if isinstance(node, Pow):
        return variables(node.base)
    return set()


def to_text(node: Node) -> str:
    """Prints ``node`` fully parenthesised in the input grammar, so that parsing the result yields an evaluation-identical tree."""
    if isinstance(node, Const):
        if node.name is not None:
            return node.name
        if node.value < 0 or (node.value == 0.0 and math.copysign(1.0, node.value) < 0):
            return f"(-{repr(-node.value)})"
        return repr(node.value)
    if isinstance(node, Var):
        return f"x{node.index + 1}"
    if isinstance(node, Neg):
        return f"(-{to_text(node.arg)})"
    if isinstance(node, Func):
        return f"{node.name}({to_text(node.arg)})"
    if isinstance(node, BinOp):
        return f"({to_text(node.left)} {node.op} {to_text(node.right)})"
    if isinstance(node, Pow):
        return f"({to_text(node.base)})^{node.exponent}"
    raise TypeError(f"Cannot print node {node!r}")


def to_source(node: Node) -> str:
    """Translates ``node`` into a Python expression over the sequence ``x``."""
    if isinstance(node, Const):
        return f"({node.value!r})"
    if isinstance(node, Var):
        return f"x[{node.index}]"
    if isinstance(node, Neg):
        return f"(-{to_source(node.arg)})"
    if isinstance(node, Func):
        return f"{node.name}({to_source(node.arg)})"
    if isinstance(node, BinOp):
        return f"({to_source(node.left)} {node.op} {to_source(node.right)})"
    if isinstance(node, Pow):
        return f"({to_source(node.base)} ** {node.exponent})"
    raise TypeError(f"Cannot compile node {node!r}")


def _compile(source: str, namespace: Dict[str, Any]) -> Callable[..., Any]:
    code = compile(f"lambda x: {source}", "<expression>", "eval")
    return eval(code, dict(namespace))  # noqa: S307 - source is generated from a validated tree


@dataclass(frozen=True)
class Expression:
    """A differentiable scalar function of ``dimension`` variables.

    Attributes:
        root (Node): Root of the expression tree.
        dimension (int): Number of variables ``n``; every referenced variable index is below ``n``.
    """

    root: Node
    dimension: int

    def __post_init__(self) -> None:
        if self.dimension < 1:
            raise DimensionMismatchError(f"Cannot build expression (dimension {self.dimension}): at least one variable is required")
        used = variables(self.root)
        if used and max(used) >= self.dimension:
            raise DimensionMismatchError(f"Cannot build expression (variable x{max(used) + 1}): dimension is {self.dimension}")

    def __str__(self) -> str:
        return self.to_text()

    def to_text(self) -> str:
        return to_text(self.root)

    @cached_property
    def _point_function(self) -> Callable[[Sequence[float]], float]:
        return _compile(to_source(self.root), _MATH_NAMESPACE)

    @cached_property
    def _array_function(self) -> Callable[[Sequence[np.ndarray]], np.ndarray]:
        return _compile(to_source(self.root), _NUMPY_NAMESPACE)

    @cached_property
    def _gradient_function(self) -> Callable[[Sequence[float]], Tuple[float, ...]]:
        components = ", ".join(to_source(partial.root) for partial in self.gradient)
        return _compile(f"({components},)", _MATH_NAMESPACE)

    @cached_property
    def gradient(self) -> Tuple[Expression, ...]:
        """The symbolic gradient, one expression per variable."""
        return tuple(self.differentiate(i) for i in range(self.dimension))

    @cached_property
    def hessian(self) -> Tuple[Tuple[Expression, ...], ...]:
        """The symbolic Hessian; entry ``(j, i)`` is the same object as ``(i, j)``."""
        n = self.dimension
        entries: Dict[Tuple[int, int], Expression] = {}
        for i in range(n):
            for j in range(i, n):
                entries[(i, j)] = self.gradient[i].differentiate(j)
        return tuple(tuple(entries[(min(i, j), max(i, j))] for j in range(n)) for i in range(n))

    def differentiate(self, index: int) -> Expression:
        """Returns the exact partial derivative with respect to variable ``index`` (0-based).

        Args:
            index (int): Variable index, ``0 <= index < dimension``.

        Raises:
            DimensionMismatchError: If ``index`` is outside the expression's dimension.
        """
        if not 0 <= index < self.dimension:
            raise DimensionMismatchError(f"Cannot differentiate (variable index {index}): dimension is {self.dimension}")
        return Expression(derive(self.root, index), self.dimension)

    def _check_point(self, point: Sequence[float]) -> None:
        if len(point) != self.dimension:
            raise DimensionMismatchError(f"Cannot evaluate (point of length {len(point)}): dimension is {self.dimension}")

    def evaluate(self, point: Sequence[float]) -> float:
        """Evaluates the expression at ``point`` in IEEE double arithmetic.

        Args:
            point (Sequence[float]): Coordinates, one per variable.

        Returns:
            float: The function value.

        Raises:
            DomainError: If the point leaves the domain of an operation (ln of a non-positive value, division by zero, overflow).
            DimensionMismatchError: If the point has the wrong length.
        """
        self._check_point(point)
        try:
            value = float(self._point_function(point))
        except (ValueError, ZeroDivisionError, OverflowError) as e:
            raise DomainError(f"Cannot evaluate {self.to_text()} at {list(point)} ({e})") from e
        if not math.isfinite(value):
            raise DomainError(f"Cannot evaluate {self.to_text()} at {list(point)} (non-finite result {value})")
        return value

    def evaluate_gradient(self, point: Sequence[float]) -> np.ndarray:
        """Evaluates the symbolic gradient at ``point``; raises :class:`DomainError` like :meth:`evaluate`."""
        self._check_point(point)
        try:
            values = self._gradient_function(point)
        except (ValueError, ZeroDivisionError, OverflowError) as e:
            raise DomainError(f"Cannot evaluate gradient of {self.to_text()} at {list(point)} ({e})") from e
        gradient = np.array(values, dtype=float)
        if not np.all(np.isfinite(gradient)):
            raise DomainError(f"Cannot evaluate gradient of {self.to_text()} at {list(point)} (non-finite result)")
        return gradient

    def evaluate_many(self, columns: Sequence[np.ndarray]) -> np.ndarray:
        """Vectorised evaluation; ``columns[i]`` holds the values of variable ``i`` (broadcastable arrays).

        Domain violations follow numpy semantics and show up as non-finite entries.
        """
        if len(columns) != self.dimension:
            raise DimensionMismatchError(f"Cannot evaluate ({len(columns)} coordinate arrays): dimension is {self.dimension}")
        arrays = [np.asarray(column, dtype=float) for column in columns]
        with np.errstate(all="ignore"):
            result = self._array_function(arrays)
        return np.broadcast_to(np.asarray(result, dtype=float), np.broadcast_shapes(*(a.shape for a in arrays))).copy()


def evaluate(expr: Expression, point: Sequence[float]) -> float:
    return expr.evaluate(point)


def differentiate(expr: Expression, index: int) -> Expression:
    return expr.differentiate(index)
