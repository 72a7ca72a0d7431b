"""errors.py: Exceptions raised by the solver stack.

Every exception derives from :class:`OptimizationError` so callers (the CLI in particular) can separate user errors from internal failures.
"""


class OptimizationError(Exception):
    """Base class of all errors raised by sparta.globalopt."""


class ExpressionSyntaxError(OptimizationError, ValueError):
    """The objective text does not conform to the expression grammar.

    Attributes:
        position (int): 0-based character offset of the offending token.
        text (str): The complete input text.
    """

    def __init__(self, message: str, position: int, text: str) -> None:
        super().__init__(f"{message} at position {position}: {text!r}")
        self.position = position
        self.text = text


class UnknownIdentifierError(ExpressionSyntaxError):
    """An identifier is neither a variable, ``pi`` nor a supported function."""


class VariableIndexError(ExpressionSyntaxError):
    """A variable ``x<k>`` lies outside ``1..n``."""


class DomainError(OptimizationError, ArithmeticError):
    """A value or enclosure leaves the domain of an operation (ln, division, overflow)."""


class IntervalDivisionError(DomainError):
    """The denominator interval contains zero."""


class DegenerateBoxError(OptimizationError, ValueError):
    """A box with all widths equal to zero cannot be split."""


class DimensionMismatchError(OptimizationError, ValueError):
    """Vectors, boxes or expressions of different dimensions were combined."""


class BoxFormatError(OptimizationError, ValueError):
    """A box literal such as ``[-1,1]x[0,2]`` could not be parsed."""


class UnknownInstanceError(OptimizationError, KeyError):
    """The benchmark registry has no instance with the requested name."""


class ReportError(OptimizationError, ValueError):
    """A run report is unreadable or does not satisfy the preconditions of an operation."""
