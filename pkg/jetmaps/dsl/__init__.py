from .formatter import format_expr
from .parser import parse_expr
from .problem import Equation, ParamMappingDecl, Problem, parse_problem, read_problem

__all__ = [
    "format_expr",
    "parse_expr",
    "parse_problem",
    "read_problem",
    "Problem",
    "Equation",
    "ParamMappingDecl",
]
