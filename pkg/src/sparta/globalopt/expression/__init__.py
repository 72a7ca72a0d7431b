from sparta.globalopt.expression.nodes import (  # noqa: F401
    BinOp,
    Const,
    Expression,
    Func,
    Neg,
    Node,
    Pow,
    Var,
    differentiate,
    evaluate,
)
from sparta.globalopt.expression.parser import parse  # noqa: F401
