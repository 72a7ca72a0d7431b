#!/usr/bin/env python
# -*- coding: utf-8 -*-
"""parser.py: Recursive descent parser for objective function text.

Grammar (whitespace is insignificant)::

    expr   := term (('+' | '-') term)*
    term   := factor (('*' | '/') factor)*
    factor := '-' factor | base ('^' INT)?
    base   := NUMBER | 'pi' | 'x' INT | '(' expr ')' | FUNC '(' expr ')'
    FUNC   := 'sin' | 'cos' | 'exp' | 'ln'

Variables are 1-based in text (``x1`` .. ``xn``) and 0-based in the tree. The exponent of ``^`` must be a non-negative integer literal, and unary minus binds
weaker than ``^``, so ``-x1^2`` means ``-(x1^2)``.
"""
import logging
import re
from dataclasses import dataclass
from typing import List

from sparta.globalopt.errors import ExpressionSyntaxError, UnknownIdentifierError, VariableIndexError
from sparta.globalopt.expression.nodes import FUNCTIONS, PI, BinOp, Const, Expression, Func, Neg, Node, Pow, Var

logger = logging.getLogger(__name__)

_TOKEN = re.compile(r"\s*(?:(?P<number>(?:\d+\.?\d*|\.\d+)(?:[eE][+-]?\d+)?)|(?P<ident>[A-Za-z_][A-Za-z0-9_]*)|(?P<op>[-+*/^()]))")
_VARIABLE = re.compile(r"x(\d+)")
_INTEGER = re.compile(r"\d+")


@dataclass(frozen=True)
class Token:
    kind: str
    text: str
    position: int


def tokenize(text: str) -> List[Token]:
    tokens: List[Token] = []
    position = 0
    while True:
        while position < len(text) and text[position].isspace():
            position += 1
        if position >= len(text):
            break
        match = _TOKEN.match(text, position)
        if match is None or match.lastgroup is None:
            raise ExpressionSyntaxError("Unexpected character", position, text)
        tokens.append(Token(match.lastgroup, match.group(match.lastgroup), match.start(match.lastgroup)))
        position = match.end()
    tokens.append(Token("end", "", len(text)))
    return tokens


class _Parser:
    def __init__(self, text: str, n: int) -> None:
        self.text = text
        self.n = n
        self.tokens = tokenize(text)
        self.index = 0

    @property
    def current(self) -> Token:
        return self.tokens[self.index]

    def _advance(self) -> Token:
        token = self.current
        self.index += 1
        return token

    def _expect(self, symbol: str) -> Token:
        if self.current.kind != "op" or self.current.text != symbol:
            raise ExpressionSyntaxError(f"Expected {symbol!r}, found {self.current.text or 'end of input'!r}", self.current.position, self.text)
        return self._advance()

    def _at(self, *symbols: str) -> bool:
        return self.current.kind == "op" and self.current.text in symbols

    def parse(self) -> Node:
        node = self.expr()
        if self.current.kind != "end":
            raise ExpressionSyntaxError(f"Unexpected token {self.current.text!r}", self.current.position, self.text)
        return node

    def expr(self) -> Node:
        node = self.term()
        while self._at("+", "-"):
            op = self._advance().text
            node = BinOp(op, node, self.term())
        return node

    def term(self) -> Node:
        node = self.factor()
        while self._at("*", "/"):
            op = self._advance().text
            node = BinOp(op, node, self.factor())
        return node

    def factor(self) -> Node:
        if self._at("-"):
            self._advance()
            return Neg(self.factor())
        node = self.base()
        if self._at("^"):
            self._advance()
            token = self.current
            if token.kind != "number" or not _INTEGER.fullmatch(token.text):
                raise ExpressionSyntaxError("Exponent must be a non-negative integer literal", token.position, self.text)
            self._advance()
            node = Pow(node, int(token.text))
        return node

    def base(self) -> Node:
        token = self.current
        if token.kind == "number":
            self._advance()
            return Const(float(token.text))
        if self._at("("):
            self._advance()
            node = self.expr()
            self._expect(")")
            return node
        if token.kind == "ident":
            self._advance()
            if token.text == "pi":
                return PI
            if token.text in FUNCTIONS:
                self._expect("(")
                arg = self.expr()
                self._expect(")")
                return Func(token.text, arg)
            variable = _VARIABLE.fullmatch(token.text)
            if variable:
                k = int(variable.group(1))
                if not 1 <= k <= self.n:
                    raise VariableIndexError(f"Variable x{k} outside x1..x{self.n}", token.position, self.text)
                return Var(k - 1)
            raise UnknownIdentifierError(f"Unknown identifier {token.text!r}", token.position, self.text)
        raise ExpressionSyntaxError(f"Unexpected token {token.text or 'end of input'!r}", token.position, self.text)


def parse(text: str, n: int) -> Expression:
    """Parses ``text`` into an expression over ``n`` variables.

    Args:
        text (str): Formula in the objective grammar, e.g. ``"(x1^2 + x2 - 11)^2 + (x1 + x2^2 - 7)^2"``.
        n (int): Number of variables.

    Returns:
        Expression: The parsed expression.

    Raises:
        ExpressionSyntaxError: On malformed input, with the offending position.
        UnknownIdentifierError: On identifiers other than ``pi``, ``x<k>`` and the supported functions.
        VariableIndexError: On ``x0`` or ``x<k>`` with ``k > n``.
    """
    root = _Parser(text, n).parse()
    logger.debug(f"Parsed {text!r} over {n} variables")
    return Expression(root, n)
