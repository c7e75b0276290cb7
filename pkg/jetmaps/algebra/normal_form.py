# jetmaps/algebra/normal_form.py

"""Canonical polynomial form of expressions.

A ``NormalForm`` is a finite map from monomials to nonzero rational
coefficients. A monomial is a sorted tuple of ``(factor, exponent)``
pairs with nonzero rational exponents, where a factor is one of

- an ``Atom`` (jet coordinate, parameter, unknown-function derivative),
- a ``LogFactor`` holding the normal form of its argument,
- a ``RadicalFactor`` (a prime p, exponent strictly between 0 and 1),
- a ``SumFactor`` holding a multi-term base raised to a negative power
  or to a power strictly between 0 and 1. Its base is primitive: no
  monomial factor is common to all of its terms and its first term has
  coefficient 1 (or +-1 for fractional exponents).

The integer part of a positive power of a sum is always expanded, so
(x+1)^(3/2) is stored as x*(x+1)^(1/2) + (x+1)^(1/2). Denominators are
sum factors with negative exponents, and ``is_zero`` decides equality
with zero by clearing them.
"""

import logging
import math
from fractions import Fraction
from functools import lru_cache
from typing import Callable, Dict, Iterable, Optional, Tuple

from jetmaps.config import get_config
from jetmaps.errors import DivisionByZeroError, DomainError, JetmapsError

from .atoms import Atom
from . import expr as ex

logger = logging.getLogger(__name__)


class LogFactor:
    __slots__ = ("arg", "_hash")

    def __init__(self, arg: "NormalForm"):
        self.arg = arg
        self._hash = hash(("log", arg))

    def __eq__(self, other) -> bool:
        return isinstance(other, LogFactor) and self.arg == other.arg

    def __hash__(self) -> int:
        return self._hash

    def sort_key(self) -> tuple:
        return (10, self.arg.sort_key())


class RadicalFactor:
    __slots__ = ("prime",)

    def __init__(self, prime: int):
        self.prime = prime

    def __eq__(self, other) -> bool:
        return isinstance(other, RadicalFactor) and self.prime == other.prime

    def __hash__(self) -> int:
        return hash(("radical", self.prime))

    def sort_key(self) -> tuple:
        return (11, self.prime)


class SumFactor:
    __slots__ = ("base", "_hash")

    def __init__(self, base: "NormalForm"):
        self.base = base
        self._hash = hash(("sum", base))

    def __eq__(self, other) -> bool:
        return isinstance(other, SumFactor) and self.base == other.base

    def __hash__(self) -> int:
        return self._hash

    def sort_key(self) -> tuple:
        return (12, self.base.sort_key())


Monomial = Tuple[tuple, ...]


@lru_cache(maxsize=1 << 16)
def _factor_key(factor) -> tuple:
    return factor.sort_key()


def _mono_key(mono: Monomial) -> tuple:
    return tuple((_factor_key(f), e) for f, e in mono)


class NormalForm:
    """Immutable map monomial -> coefficient. Build it through ``normalize``
    or the arithmetic operators, never by mutating ``terms``."""

    __slots__ = ("terms", "_hash", "_sort_key", "_atoms")

    def __init__(self, terms: Optional[Dict[Monomial, Fraction]] = None):
        self.terms = terms or {}
        self._hash = None
        self._sort_key = None
        self._atoms = None

    # Construction
    @staticmethod
    def constant(value) -> "NormalForm":
        value = Fraction(value)
        if value == 0:
            return ZERO
        return NormalForm({(): value})

    @staticmethod
    def from_atom(atom: Atom) -> "NormalForm":
        return NormalForm({((atom, Fraction(1)),): Fraction(1)})

    # Identity
    def __eq__(self, other) -> bool:
        return isinstance(other, NormalForm) and self.terms == other.terms

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash(frozenset(self.terms.items()))
        return self._hash

    def sort_key(self) -> tuple:
        if self._sort_key is None:
            self._sort_key = tuple(
                sorted((_mono_key(m), c) for m, c in self.terms.items())
            )
        return self._sort_key

    def sorted_terms(self):
        return sorted(self.terms.items(), key=lambda item: _mono_key(item[0]))

    def __bool__(self) -> bool:
        return bool(self.terms)

    def __repr__(self) -> str:
        from jetmaps.dsl.formatter import format_expr

        return f"NormalForm({format_expr(self.to_expr())!r})"

    # Queries
    def is_constant(self) -> bool:
        return not self.terms or (len(self.terms) == 1 and () in self.terms)

    def constant_value(self) -> Optional[Fraction]:
        if not self.terms:
            return Fraction(0)
        if self.is_constant():
            return self.terms[()]
        return None

    def atoms(self) -> frozenset:
        """Atoms occurring anywhere, including inside logs and sum bases."""
        if self._atoms is None:
            found = set()
            for mono in self.terms:
                for factor, _ in mono:
                    if isinstance(factor, Atom):
                        found.add(factor)
                    elif isinstance(factor, LogFactor):
                        found |= factor.arg.atoms()
                    elif isinstance(factor, SumFactor):
                        found |= factor.base.atoms()
            self._atoms = frozenset(found)
        return self._atoms

    # Ring operations
    def __add__(self, other: "NormalForm") -> "NormalForm":
        if not other.terms:
            return self
        if not self.terms:
            return other
        acc = dict(self.terms)
        _accumulate(acc, other.terms)
        return NormalForm(acc)

    def __neg__(self) -> "NormalForm":
        return NormalForm({m: -c for m, c in self.terms.items()})

    def __sub__(self, other: "NormalForm") -> "NormalForm":
        return self + (-other)

    def scale(self, factor) -> "NormalForm":
        factor = Fraction(factor)
        if factor == 0:
            return ZERO
        return NormalForm({m: c * factor for m, c in self.terms.items()})

    def __mul__(self, other: "NormalForm") -> "NormalForm":
        if not self.terms or not other.terms:
            return ZERO
        if other.is_constant():
            return self.scale(other.terms[()])
        if self.is_constant():
            return other.scale(self.terms[()])
        acc: Dict[Monomial, Fraction] = {}
        extra = []
        for m1, c1 in self.terms.items():
            for m2, c2 in other.terms.items():
                merged = dict(m1)
                for f, e in m2:
                    merged[f] = merged.get(f, 0) + e
                coeff, mono, expansions = _term_parts(c1 * c2, merged)
                if expansions:
                    extra.append(_expand(coeff, mono, expansions))
                elif coeff:
                    acc[mono] = acc.get(mono, 0) + coeff
        acc = {m: c for m, c in acc.items() if c != 0}
        for nf in extra:
            _accumulate(acc, nf.terms)
        return NormalForm(acc)

    def pow_int(self, k: int) -> "NormalForm":
        result = ONE
        base = self
        while k:
            if k & 1:
                result = result * base
            k >>= 1
            if k:
                base = base * base
        return result

    def power(self, r) -> "NormalForm":
        r = Fraction(r)
        if r == 0:
            return ONE
        if r == 1:
            return self
        if not self.terms:
            if r > 0:
                return ZERO
            raise DivisionByZeroError(
                "negative power of an expression that normalizes to zero"
            )
        if r.denominator == 1 and r > 0:
            return self.pow_int(r.numerator)
        if len(self.terms) == 1:
            ((mono, coeff),) = self.terms.items()
            return _const_power(coeff, r) * _term({f: e * r for f, e in mono})
        if r.denominator == 1:
            cleared, cofactors = _clear_denominators(self)
            if cofactors:
                if not cleared.terms:
                    raise DivisionByZeroError(
                        "negative power of an expression that normalizes to zero"
                    )
                result = cleared.power(r)
                for factor, k in cofactors.items():
                    result = result * _term({factor: -k * r})
                return result
        content, base = _split_content(self, integer_exponent=r.denominator == 1)
        if _negative_sum_factors(base) and base.is_zero():
            if r > 0:
                return ZERO
            raise DivisionByZeroError(
                "negative power of an expression that normalizes to zero"
            )
        return content.power(r) * _term({SumFactor(base): r})

    # Zero test
    def is_zero(self) -> bool:
        """Decide whether the expression vanishes identically.

        Each sum factor is cleared by multiplying through with its base
        to the least integer power that leaves every exponent of it
        nonnegative. Integer parts then expand, so every remaining sum
        factor exponent lies strictly between 0 and 1 and the form is
        canonical.
        """
        if not self.terms:
            return True
        cleared, _ = _clear_denominators(self)
        return not cleared.terms

    # Calculus
    def derive(self, atom_derivative: Callable[[Atom], Optional["NormalForm"]]) -> "NormalForm":
        """Apply the derivation fixed by its values on atoms.

        ``atom_derivative`` returns the derivative of an atom as a normal
        form, or ``None`` for zero. Logs and sum factors follow the chain
        rule; radicals are constants.
        """
        memo: Dict[object, Optional[NormalForm]] = {}

        def factor_derivative(factor):
            if factor in memo:
                return memo[factor]
            if isinstance(factor, Atom):
                result = atom_derivative(factor)
            elif isinstance(factor, LogFactor):
                inner = factor.arg.derive(atom_derivative)
                result = inner * factor.arg.power(-1) if inner.terms else None
            elif isinstance(factor, SumFactor):
                inner = factor.base.derive(atom_derivative)
                result = inner if inner.terms else None
            else:
                result = None
            if result is not None and not result.terms:
                result = None
            memo[factor] = result
            return result

        acc: Dict[Monomial, Fraction] = {}
        for mono, coeff in self.terms.items():
            for index, (factor, exponent) in enumerate(mono):
                d = factor_derivative(factor)
                if d is None:
                    continue
                rest = dict(mono)
                rest[factor] = exponent - 1
                _accumulate(acc, (_term(rest, coeff * exponent) * d).terms)
        return NormalForm(acc)

    def substitute(self, bindings: Dict[Atom, "NormalForm"]) -> "NormalForm":
        """Replace bound atoms simultaneously, everywhere."""
        if not bindings or not (self.atoms() & bindings.keys()):
            return self
        bound = frozenset(bindings)
        memo: Dict[tuple, NormalForm] = {}

        def factor_power(factor, exponent):
            key = (factor, exponent)
            if key in memo:
                return memo[key]
            if isinstance(factor, Atom):
                value = bindings[factor].power(exponent) if factor in bound else None
            elif isinstance(factor, LogFactor) and factor.arg.atoms() & bound:
                value = log_of(factor.arg.substitute(bindings)).power(exponent)
            elif isinstance(factor, SumFactor) and factor.base.atoms() & bound:
                value = factor.base.substitute(bindings).power(exponent)
            else:
                value = None
            memo[key] = value
            return value

        acc: Dict[Monomial, Fraction] = {}
        for mono, coeff in self.terms.items():
            kept = {}
            product = ONE
            for factor, exponent in mono:
                value = factor_power(factor, exponent)
                if value is None:
                    kept[factor] = exponent
                else:
                    product = product * value
                    if not product.terms:
                        break
            if not product.terms:
                continue
            _accumulate(acc, (_term(kept, coeff) * product).terms)
        return NormalForm(acc)

    # Conversion
    def to_expr(self) -> ex.Expr:
        """Denormalize into an expression tree in canonical term order."""
        terms = []
        for mono, coeff in self.sorted_terms():
            factors = [ex.Const(coeff)]
            for factor, exponent in mono:
                factors.append(ex.power(_factor_expr(factor), exponent))
            terms.append(ex.mul(*factors))
        return ex.add(*terms)


def _factor_expr(factor) -> ex.Expr:
    if isinstance(factor, Atom):
        return ex.Sym(factor)
    if isinstance(factor, LogFactor):
        return ex.Log(factor.arg.to_expr())
    if isinstance(factor, RadicalFactor):
        return ex.Const(factor.prime)
    return factor.base.to_expr()


ZERO = NormalForm({})
ONE = NormalForm({(): Fraction(1)})


def _accumulate(acc: Dict[Monomial, Fraction], terms: Dict[Monomial, Fraction]) -> None:
    for mono, coeff in terms.items():
        total = acc.get(mono, 0) + coeff
        if total:
            acc[mono] = total
        else:
            acc.pop(mono, None)


def _term_parts(coeff: Fraction, factors: dict):
    mono = []
    expansions = []
    for factor, exponent in factors.items():
        if exponent == 0:
            continue
        if isinstance(factor, RadicalFactor):
            whole = math.floor(exponent)
            if whole:
                coeff *= Fraction(factor.prime) ** whole
                exponent -= whole
            if exponent == 0:
                continue
        elif isinstance(factor, SumFactor) and exponent > 0:
            whole = math.floor(exponent)
            if whole:
                expansions.append((factor.base, whole))
                exponent -= whole
            if exponent == 0:
                continue
        mono.append((factor, Fraction(exponent)))
    mono.sort(key=lambda item: _factor_key(item[0]))
    return coeff, tuple(mono), expansions


def _expand(coeff, mono, expansions) -> NormalForm:
    result = NormalForm({mono: coeff}) if coeff else ZERO
    for base, k in expansions:
        result = result * base.pow_int(k)
    return result


def _term(factors: dict, coeff=Fraction(1)) -> NormalForm:
    coeff, mono, expansions = _term_parts(Fraction(coeff), factors)
    if coeff == 0:
        return ZERO
    return _expand(coeff, mono, expansions)


def _negative_sum_factors(nf: NormalForm) -> Dict[SumFactor, Fraction]:
    found: Dict[SumFactor, Fraction] = {}
    for mono in nf.terms:
        for factor, exponent in mono:
            if isinstance(factor, SumFactor) and exponent < 0:
                if exponent < found.get(factor, 0):
                    found[factor] = exponent
    return found


def _shift(nf: NormalForm, factor: SumFactor, k: int) -> NormalForm:
    """Multiply ``nf`` by factor**k, merging exponents termwise."""
    acc: Dict[Monomial, Fraction] = {}
    for mono, coeff in nf.terms.items():
        merged = dict(mono)
        merged[factor] = merged.get(factor, 0) + k
        _accumulate(acc, _term(merged, coeff).terms)
    logger.debug("cleared %d power(s) of a sum factor, %d terms", k, len(acc))
    return NormalForm(acc)


def _clear_denominators(nf: NormalForm):
    """Return ``(cleared, cofactors)`` with nf * prod(S**k) == cleared."""
    cofactors: Dict[SumFactor, int] = {}
    limit = get_config()["max_clearing_rounds"]
    for _ in range(limit):
        negatives = _negative_sum_factors(nf)
        if not negatives or not nf.terms:
            return nf, cofactors
        factor = min(negatives, key=_factor_key)
        k = math.ceil(-negatives[factor])
        nf = _shift(nf, factor, k)
        cofactors[factor] = cofactors.get(factor, 0) + k
    raise JetmapsError("denominator clearing did not terminate")


def _split_content(nf: NormalForm, integer_exponent: bool):
    """Split a multi-term form into (content monomial, primitive base)."""
    common: Optional[dict] = None
    for mono in nf.terms:
        exponents = dict(mono)
        if common is None:
            common = exponents
        else:
            common = {f: min(e, exponents[f]) for f, e in common.items() if f in exponents}
    common = {f: e for f, e in (common or {}).items() if e != 0}
    base = nf * _term({f: -e for f, e in common.items()}) if common else nf
    lead = base.sorted_terms()[0][1]
    if not integer_exponent:
        lead = abs(lead)
    base = base.scale(1 / lead)
    content = _term(common, lead)
    return content, base


def _factorize(n: int) -> Dict[int, int]:
    factors: Dict[int, int] = {}
    p = 2
    while p * p <= n and p < 1_000_000:
        while n % p == 0:
            factors[p] = factors.get(p, 0) + 1
            n //= p
        p += 1 if p == 2 else 2
    if n > 1:
        factors[n] = factors.get(n, 0) + 1
    return factors


def _const_power(c: Fraction, r: Fraction) -> NormalForm:
    if r.denominator == 1:
        if c == 0 and r < 0:
            raise DivisionByZeroError("zero raised to a negative power")
        return NormalForm.constant(c ** r.numerator)
    if c == 0:
        if r > 0:
            return ZERO
        raise DivisionByZeroError("zero raised to a negative power")
    sign = 1
    if c < 0:
        if r.denominator % 2 == 0:
            raise DomainError(f"negative constant {c} raised to {r}")
        sign = -1 if r.numerator % 2 else 1
        c = -c
    factors: Dict[RadicalFactor, Fraction] = {}
    for prime, count in _factorize(c.numerator).items():
        key = RadicalFactor(prime)
        factors[key] = factors.get(key, 0) + count * r
    for prime, count in _factorize(c.denominator).items():
        key = RadicalFactor(prime)
        factors[key] = factors.get(key, 0) - count * r
    return _term(factors, sign)


def log_of(arg: NormalForm) -> NormalForm:
    if not arg.terms:
        raise DomainError("logarithm of an expression that normalizes to zero")
    if arg == ONE:
        return ZERO
    return _term({LogFactor(arg): 1})


def monomial(factors: Dict[object, Fraction], coeff=1) -> NormalForm:
    """Public builder for a single term; sum factors are expanded as usual."""
    return _term({f: Fraction(e) for f, e in factors.items()}, coeff)


def sum_forms(forms: Iterable[NormalForm]) -> NormalForm:
    acc: Dict[Monomial, Fraction] = {}
    for nf in forms:
        _accumulate(acc, nf.terms)
    return NormalForm(acc)
