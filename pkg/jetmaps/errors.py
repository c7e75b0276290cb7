"""Error types raised by the jetmaps library.

Every error derives from ``JetmapsError`` (itself a ``ValueError``) so
callers can catch the whole family at once; the CLI maps them to exit
code 2.
"""

from typing import Optional


class JetmapsError(ValueError):
    """Base class for all library errors."""


class DslSyntaxError(JetmapsError):
    """Malformed expression or problem-file text, with a 1-based position."""

    def __init__(self, message: str, line: int = 1, column: int = 1):
        self.message = message
        self.line = line
        self.column = column
        super().__init__(f"line {line}, column {column}: {message}")


class UnknownSymbol(DslSyntaxError):
    """An identifier that is not declared in the jet context."""


class ArityError(DslSyntaxError):
    """A jet bracket or function call with an invalid argument list."""


class DuplicateSection(DslSyntaxError):
    """A problem-file section given twice."""


class DuplicateMapping(DslSyntaxError):
    """Both [mapping] and [param-mapping] given in one problem file."""


class MissingSection(JetmapsError):
    def __init__(self, section: str):
        self.section = section
        super().__init__(f"missing section [{section}]")


class DivisionByZeroError(JetmapsError):
    """A negative power of an expression that normalizes to zero."""


class DomainError(JetmapsError):
    """A value outside the domain of a fractional power or logarithm."""


class NotPolynomial(JetmapsError):
    """An expression is not polynomial in the requested atoms."""


class SingularMatrix(JetmapsError):
    """The total Jacobian of a mapping is identically singular."""

    def __init__(self, message: str, determinant: Optional[str] = None):
        self.determinant = determinant
        super().__init__(message)


class OrderExceeded(JetmapsError):
    """A pulled-back expression needs derivatives above the lifted order."""


class NotSolvable(JetmapsError):
    """An equation cannot be solved linearly for its principal derivative."""


class OverlappingPrincipals(JetmapsError):
    """Two oriented equations share a principal or one is a derivative of another."""


class NonUnitConstantTerm(JetmapsError):
    """A series operation needs an invertible constant term."""
