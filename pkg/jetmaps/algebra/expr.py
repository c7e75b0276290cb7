# jetmaps/algebra/expr.py

"""Immutable expression trees.

Nodes are built through the smart constructors ``add``, ``mul``,
``power`` and ``log`` (or the arithmetic operators), which flatten
nested sums and products, fold constants and drop neutral elements.
No other simplification happens here; ``normalize`` is the canonical
form.
"""

from fractions import Fraction
from typing import Iterable, Tuple, Union

from .atoms import Atom

Rational = Fraction
Number = Union[int, Fraction]


class Expr:
    __slots__ = ("_hash",)

    def _key(self) -> tuple:
        raise NotImplementedError

    def __hash__(self) -> int:
        try:
            return self._hash
        except AttributeError:
            h = hash((type(self).__name__,) + self._key())
            object.__setattr__(self, "_hash", h)
            return h

    def __eq__(self, other) -> bool:
        if self is other:
            return True
        if type(self) is not type(other):
            return False
        return hash(self) == hash(other) and self._key() == other._key()

    def __setattr__(self, name, value):
        raise AttributeError(f"{type(self).__name__} is immutable")

    # Arithmetic sugar
    def __add__(self, other):
        return add(self, as_expr(other))

    def __radd__(self, other):
        return add(as_expr(other), self)

    def __sub__(self, other):
        return add(self, negate(as_expr(other)))

    def __rsub__(self, other):
        return add(as_expr(other), negate(self))

    def __mul__(self, other):
        return mul(self, as_expr(other))

    def __rmul__(self, other):
        return mul(as_expr(other), self)

    def __truediv__(self, other):
        return mul(self, power(as_expr(other), -1))

    def __rtruediv__(self, other):
        return mul(as_expr(other), power(self, -1))

    def __neg__(self):
        return negate(self)

    def __pow__(self, exponent):
        return power(self, exponent)

    def __repr__(self) -> str:
        from jetmaps.dsl.formatter import format_expr

        return f"{type(self).__name__}({format_expr(self)!r})"


class Const(Expr):
    __slots__ = ("value",)

    def __init__(self, value: Number):
        object.__setattr__(self, "value", Fraction(value))

    def _key(self) -> tuple:
        return (self.value,)


class Sym(Expr):
    """Leaf holding an atom."""

    __slots__ = ("atom",)

    def __init__(self, atom: Atom):
        object.__setattr__(self, "atom", atom)

    def _key(self) -> tuple:
        return (self.atom,)


class Add(Expr):
    __slots__ = ("terms",)

    def __init__(self, terms: Tuple[Expr, ...]):
        if len(terms) < 2:
            raise ValueError("Add needs at least two terms")
        object.__setattr__(self, "terms", tuple(terms))

    def _key(self) -> tuple:
        return self.terms


class Mul(Expr):
    __slots__ = ("factors",)

    def __init__(self, factors: Tuple[Expr, ...]):
        if len(factors) < 2:
            raise ValueError("Mul needs at least two factors")
        object.__setattr__(self, "factors", tuple(factors))

    def _key(self) -> tuple:
        return self.factors


class Pow(Expr):
    __slots__ = ("base", "exp")

    def __init__(self, base: Expr, exp: Number):
        exp = Fraction(exp)
        if exp == 0 or exp == 1:
            raise ValueError("Pow exponent must differ from 0 and 1")
        object.__setattr__(self, "base", base)
        object.__setattr__(self, "exp", exp)

    def _key(self) -> tuple:
        return (self.base, self.exp)


class Log(Expr):
    __slots__ = ("arg",)

    def __init__(self, arg: Expr):
        object.__setattr__(self, "arg", arg)

    def _key(self) -> tuple:
        return (self.arg,)


ZERO = Const(0)
ONE = Const(1)


def as_expr(value: Union[Expr, Atom, Number]) -> Expr:
    if isinstance(value, Expr):
        return value
    if isinstance(value, Atom):
        return Sym(value)
    if isinstance(value, (int, Fraction)):
        return Const(value)
    raise TypeError(f"cannot convert {value!r} to an expression")


def const(value: Number) -> Const:
    return Const(value)


def sym(atom: Atom) -> Sym:
    return Sym(atom)


def add(*terms: Expr) -> Expr:
    flat = []
    constant = Fraction(0)
    for term in _flatten(terms, Add, "terms"):
        if isinstance(term, Const):
            constant += term.value
        else:
            flat.append(term)
    if constant != 0:
        flat.append(Const(constant))
    if not flat:
        return ZERO
    if len(flat) == 1:
        return flat[0]
    return Add(tuple(flat))


def mul(*factors: Expr) -> Expr:
    flat = []
    constant = Fraction(1)
    for factor in _flatten(factors, Mul, "factors"):
        if isinstance(factor, Const):
            constant *= factor.value
        else:
            flat.append(factor)
    if constant == 0:
        return ZERO
    if constant != 1:
        flat.insert(0, Const(constant))
    if not flat:
        return ONE
    if len(flat) == 1:
        return flat[0]
    return Mul(tuple(flat))


def power(base: Expr, exponent: Number) -> Expr:
    exponent = Fraction(exponent)
    base = as_expr(base)
    if exponent == 0:
        return ONE
    if exponent == 1:
        return base
    if isinstance(base, Const):
        if base.value == 1:
            return ONE
        if exponent.denominator == 1 and (base.value != 0 or exponent > 0):
            return Const(base.value ** exponent.numerator)
    # (x^2)^(1/2) is |x|, not x
    if isinstance(base, Pow) and (exponent.denominator == 1 or base.exp.numerator % 2):
        return power(base.base, base.exp * exponent)
    return Pow(base, exponent)


def log(arg: Expr) -> Expr:
    arg = as_expr(arg)
    if isinstance(arg, Const) and arg.value == 1:
        return ZERO
    return Log(arg)


def negate(e: Expr) -> Expr:
    return mul(Const(-1), e)


def sum_of(terms: Iterable[Expr]) -> Expr:
    return add(*list(terms))


def product_of(factors: Iterable[Expr]) -> Expr:
    return mul(*list(factors))


def _flatten(items, node_type, field):
    for item in items:
        item = as_expr(item)
        if isinstance(item, node_type):
            yield from getattr(item, field)
        else:
            yield item


def atoms_of(e: Expr) -> set:
    """All atoms occurring anywhere in ``e``."""
    found = set()
    stack = [e]
    while stack:
        node = stack.pop()
        if isinstance(node, Sym):
            found.add(node.atom)
        elif isinstance(node, Add):
            stack.extend(node.terms)
        elif isinstance(node, Mul):
            stack.extend(node.factors)
        elif isinstance(node, Pow):
            stack.append(node.base)
        elif isinstance(node, Log):
            stack.append(node.arg)
    return found
