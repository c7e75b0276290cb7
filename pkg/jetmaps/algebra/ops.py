# jetmaps/algebra/ops.py

import logging
import math
from fractions import Fraction
from typing import Dict, List, Mapping, Optional, Tuple, Union

from jetmaps.config import get_config
from jetmaps.errors import DivisionByZeroError, DomainError, NotPolynomial

from . import expr as ex
from .atoms import Atom
from .normal_form import (
    ONE,
    LogFactor,
    NormalForm,
    SumFactor,
    log_of,
    monomial,
    sum_forms,
)

logger = logging.getLogger(__name__)

Value = Union[Fraction, float]


def normalize(e: ex.Expr) -> NormalForm:
    """Canonical normal form of an expression.

    Raises:
        DivisionByZeroError: a negative power of something that is zero.
        DomainError: an even root of a negative constant, or log of zero.
    """
    memo: Dict[ex.Expr, NormalForm] = {}

    def walk(node: ex.Expr) -> NormalForm:
        cached = memo.get(node)
        if cached is not None:
            return cached
        if isinstance(node, ex.Const):
            result = NormalForm.constant(node.value)
        elif isinstance(node, ex.Sym):
            result = NormalForm.from_atom(node.atom)
        elif isinstance(node, ex.Add):
            result = sum_forms(walk(t) for t in node.terms)
        elif isinstance(node, ex.Mul):
            result = ONE
            for factor in node.factors:
                result = result * walk(factor)
                if not result.terms:
                    break
        elif isinstance(node, ex.Pow):
            result = walk(node.base).power(node.exp)
        elif isinstance(node, ex.Log):
            result = log_of(walk(node.arg))
        else:
            raise TypeError(f"unknown expression node {type(node).__name__}")
        memo[node] = result
        return result

    return walk(ex.as_expr(e))


def is_zero(e: ex.Expr) -> bool:
    return normalize(e).is_zero()


def equal(e1: ex.Expr, e2: ex.Expr) -> bool:
    return normalize(ex.as_expr(e1) - ex.as_expr(e2)).is_zero()


def simplify(e: ex.Expr) -> ex.Expr:
    """Round-trip through the normal form."""
    return normalize(e).to_expr()


def substitute(e: ex.Expr, bindings: Mapping[Atom, ex.Expr]) -> ex.Expr:
    """Simultaneously replace bound atoms by expressions."""
    if not bindings:
        return e
    values = {atom: ex.as_expr(value) for atom, value in bindings.items()}
    memo: Dict[ex.Expr, ex.Expr] = {}

    def walk(node: ex.Expr) -> ex.Expr:
        cached = memo.get(node)
        if cached is not None:
            return cached
        if isinstance(node, ex.Sym):
            result = values.get(node.atom, node)
        elif isinstance(node, ex.Add):
            result = ex.add(*(walk(t) for t in node.terms))
        elif isinstance(node, ex.Mul):
            result = ex.mul(*(walk(f) for f in node.factors))
        elif isinstance(node, ex.Pow):
            result = ex.power(walk(node.base), node.exp)
        elif isinstance(node, ex.Log):
            result = ex.log(walk(node.arg))
        else:
            result = node
        memo[node] = result
        return result

    return walk(ex.as_expr(e))


def partial(e: ex.Expr, v: Atom) -> ex.Expr:
    """Formal partial derivative, every other atom held constant."""
    return partial_nf(normalize(e), v).to_expr()


def partial_nf(nf: NormalForm, v: Atom) -> NormalForm:
    return nf.derive(lambda atom: ONE if atom == v else None)


def collect_nf(nf: NormalForm, variables: List[Atom]) -> Dict[Tuple[int, ...], NormalForm]:
    index = {atom: k for k, atom in enumerate(variables)}
    watched = frozenset(variables)
    groups: Dict[Tuple[int, ...], List[NormalForm]] = {}
    for mono, coeff in nf.terms.items():
        exponents = [0] * len(variables)
        rest = {}
        for factor, exponent in mono:
            if factor in index:
                if exponent.denominator != 1 or exponent < 0:
                    raise NotPolynomial(
                        f"{factor} occurs with exponent {exponent}"
                    )
                exponents[index[factor]] = exponent.numerator
                continue
            if isinstance(factor, (LogFactor, SumFactor)):
                inner = factor.arg if isinstance(factor, LogFactor) else factor.base
                if inner.atoms() & watched:
                    raise NotPolynomial(
                        "a collected atom occurs inside a logarithm or a denominator"
                    )
            rest[factor] = exponent
        groups.setdefault(tuple(exponents), []).append(monomial(rest, coeff))
    result = {}
    for key in sorted(groups, reverse=True):
        total = sum_forms(groups[key])
        if total.terms:
            result[key] = total
    return result


def collect(e: ex.Expr, variables: List[Atom]) -> Dict[Tuple[int, ...], ex.Expr]:
    """Coefficients of ``e`` as a polynomial in ``variables``.

    Returns a map from exponent vectors to coefficient expressions that
    are free of the listed atoms; zero coefficients are omitted.

    Raises:
        NotPolynomial: a listed atom appears with a negative or fractional
            exponent, or inside a log or a denominator.
    """
    return {key: nf.to_expr() for key, nf in collect_nf(normalize(e), variables).items()}


def reassemble(coefficients: Mapping[Tuple[int, ...], ex.Expr], variables: List[Atom]) -> ex.Expr:
    terms = []
    for exponents, coeff in coefficients.items():
        factors = [coeff]
        for atom, k in zip(variables, exponents):
            factors.append(ex.power(ex.Sym(atom), k))
        terms.append(ex.mul(*factors))
    return ex.add(*terms)


def _iroot(n: int, d: int) -> int:
    if n < 2:
        return n
    x = 1 << ((n.bit_length() + d - 1) // d)
    while True:
        y = ((d - 1) * x + n // x ** (d - 1)) // d
        if y >= x:
            return x
        x = y


def _exact_power(base: Fraction, exponent: Fraction) -> Optional[Fraction]:
    d = exponent.denominator
    num = _iroot(base.numerator, d)
    den = _iroot(base.denominator, d)
    if num ** d != base.numerator or den ** d != base.denominator:
        return None
    return Fraction(num, den) ** exponent.numerator


def _power_value(base: Value, exponent: Fraction) -> Value:
    if base == 0:
        if exponent < 0:
            raise DivisionByZeroError("zero raised to a negative power")
        return Fraction(0)
    if exponent.denominator == 1:
        return base ** exponent.numerator
    if base < 0:
        raise DomainError(f"negative base {base} raised to {exponent}")
    if isinstance(base, Fraction):
        exact = _exact_power(base, exponent)
        if exact is not None:
            return exact
    return float(base) ** float(exponent)


def eval_numeric(e: ex.Expr, assignment: Mapping[Atom, Value]) -> Value:
    """Evaluate at a point.

    The result is an exact ``Fraction`` whenever every fractional power
    meets a perfect power and no logarithm is taken; otherwise a float
    with double precision.
    """
    memo: Dict[ex.Expr, Value] = {}

    def walk(node: ex.Expr) -> Value:
        if node in memo:
            return memo[node]
        if isinstance(node, ex.Const):
            result = node.value
        elif isinstance(node, ex.Sym):
            if node.atom not in assignment:
                raise DomainError(f"no value assigned to {node.atom}")
            value = assignment[node.atom]
            result = value if isinstance(value, float) else Fraction(value)
        elif isinstance(node, ex.Add):
            result = sum((walk(t) for t in node.terms), Fraction(0))
        elif isinstance(node, ex.Mul):
            result = Fraction(1)
            for factor in node.factors:
                result = result * walk(factor)
        elif isinstance(node, ex.Pow):
            result = _power_value(walk(node.base), node.exp)
        elif isinstance(node, ex.Log):
            value = walk(node.arg)
            if value <= 0:
                raise DomainError(f"logarithm of non-positive value {value}")
            result = Fraction(0) if value == 1 else math.log(value)
        else:
            raise TypeError(f"unknown expression node {type(node).__name__}")
        memo[node] = result
        return result

    return walk(ex.as_expr(e))


def values_close(a: Value, b: Value, tolerance: Optional[float] = None) -> bool:
    if tolerance is None:
        tolerance = get_config()["float_tolerance"]
    if isinstance(a, Fraction) and isinstance(b, Fraction):
        return a == b
    return abs(float(a) - float(b)) <= tolerance * max(1.0, abs(float(a)), abs(float(b)))


__all__ = [
    "normalize",
    "is_zero",
    "equal",
    "simplify",
    "substitute",
    "partial",
    "partial_nf",
    "collect",
    "collect_nf",
    "reassemble",
    "eval_numeric",
    "values_close",
]
