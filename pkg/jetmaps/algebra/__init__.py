from .atoms import Atom, Dependent, FuncDeriv, Independent, Parameter
from .expr import Add, Const, Expr, Log, Mul, Pow, Rational, Sym
from .normal_form import NormalForm
from .ops import (
    collect,
    equal,
    eval_numeric,
    is_zero,
    normalize,
    partial,
    simplify,
    substitute,
)

__all__ = [
    "Atom",
    "Independent",
    "Dependent",
    "Parameter",
    "FuncDeriv",
    "Expr",
    "Const",
    "Sym",
    "Add",
    "Mul",
    "Pow",
    "Log",
    "Rational",
    "NormalForm",
    "normalize",
    "equal",
    "is_zero",
    "simplify",
    "substitute",
    "partial",
    "collect",
    "eval_numeric",
]
