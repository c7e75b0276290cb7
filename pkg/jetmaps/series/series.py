# jetmaps/series/series.py

"""Truncated power series in one parameter with normal-form coefficients."""

from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Dict, Mapping, Optional, Tuple

from jetmaps.algebra import expr as ex
from jetmaps.algebra.atoms import Atom, Parameter
from jetmaps.algebra.normal_form import ONE, ZERO, NormalForm, log_of, sum_forms
from jetmaps.algebra.ops import normalize
from jetmaps.errors import JetmapsError, NonUnitConstantTerm


@dataclass(frozen=True)
class ParamSeries:
    """sum_k coeffs[k] * a**k + O(a**(trunc+1))."""

    parameter: Parameter
    coeffs: Tuple[NormalForm, ...]

    def __post_init__(self):
        if not self.coeffs:
            raise JetmapsError("a series needs at least its constant term")
        for c in self.coeffs:
            if self.parameter in c.atoms():
                raise JetmapsError(f"series coefficients may not contain {self.parameter}")

    @property
    def trunc(self) -> int:
        return len(self.coeffs) - 1

    # Construction
    @classmethod
    def constant(cls, parameter: Parameter, value: NormalForm, trunc: int) -> "ParamSeries":
        return cls(parameter, (value,) + (ZERO,) * trunc)

    @classmethod
    def generator(cls, parameter: Parameter, trunc: int) -> "ParamSeries":
        """The parameter itself, a."""
        coeffs = [ZERO] * (trunc + 1)
        if trunc >= 1:
            coeffs[1] = ONE
        return cls(parameter, tuple(coeffs))

    @classmethod
    def from_exprs(cls, parameter: Parameter, coeffs) -> "ParamSeries":
        return cls(parameter, tuple(normalize(ex.as_expr(c)) for c in coeffs))

    def coefficient(self, k: int) -> ex.Expr:
        return self.coeffs[k].to_expr()

    def exprs(self) -> Tuple[ex.Expr, ...]:
        return tuple(c.to_expr() for c in self.coeffs)

    # Ring operations
    def _align(self, other: "ParamSeries") -> int:
        if other.parameter != self.parameter:
            raise JetmapsError("series in different parameters")
        return min(self.trunc, other.trunc)

    def truncate(self, trunc: int) -> "ParamSeries":
        if trunc < 0:
            raise JetmapsError("truncation order must be non-negative")
        coeffs = self.coeffs[: trunc + 1]
        return ParamSeries(self.parameter, coeffs + (ZERO,) * (trunc + 1 - len(coeffs)))

    def __add__(self, other: "ParamSeries") -> "ParamSeries":
        n = self._align(other)
        return ParamSeries(self.parameter, tuple(self.coeffs[k] + other.coeffs[k] for k in range(n + 1)))

    def __neg__(self) -> "ParamSeries":
        return ParamSeries(self.parameter, tuple(-c for c in self.coeffs))

    def __sub__(self, other: "ParamSeries") -> "ParamSeries":
        return self + (-other)

    def __mul__(self, other: "ParamSeries") -> "ParamSeries":
        n = self._align(other)
        coeffs = []
        for k in range(n + 1):
            coeffs.append(sum_forms(self.coeffs[i] * other.coeffs[k - i] for i in range(k + 1)))
        return ParamSeries(self.parameter, tuple(coeffs))

    def scale(self, factor) -> "ParamSeries":
        """Multiply by a parameter-free scalar (a number or a normal form)."""
        if isinstance(factor, NormalForm):
            return ParamSeries(self.parameter, tuple(c * factor for c in self.coeffs))
        return ParamSeries(self.parameter, tuple(c.scale(factor) for c in self.coeffs))

    def map(self, fn: Callable[[NormalForm], NormalForm]) -> "ParamSeries":
        return ParamSeries(self.parameter, tuple(fn(c) for c in self.coeffs))

    def reciprocal(self) -> "ParamSeries":
        """1/s, coefficient by coefficient.

        Raises:
            NonUnitConstantTerm: the constant term normalizes to zero.
        """
        c0 = self.coeffs[0]
        if c0.is_zero():
            raise NonUnitConstantTerm("reciprocal of a series without constant term")
        r0 = c0.power(-1)
        result = [r0]
        for k in range(1, self.trunc + 1):
            acc = sum_forms(self.coeffs[i] * result[k - i] for i in range(1, k + 1))
            result.append(-(r0 * acc))
        return ParamSeries(self.parameter, tuple(result))

    def power(self, r) -> "ParamSeries":
        """s**r for rational r.

        Positive integer powers multiply out; any other exponent uses
        the recurrence w_n = (1/(n c0)) sum_k ((r+1)k - n) c_k w_(n-k)
        and needs an invertible constant term.
        """
        r = Fraction(r)
        if r.denominator == 1 and r >= 0:
            result = ParamSeries.constant(self.parameter, ONE, self.trunc)
            base = self
            k = r.numerator
            while k:
                if k & 1:
                    result = result * base
                k >>= 1
                if k:
                    base = base * base
            return result
        c0 = self.coeffs[0]
        if c0.is_zero():
            raise NonUnitConstantTerm(f"power {r} of a series without constant term")
        c0_inverse = c0.power(-1)
        result = [c0.power(r)]
        for n in range(1, self.trunc + 1):
            terms = (
                self.coeffs[k] * result[n - k] * NormalForm.constant((r + 1) * k - n)
                for k in range(1, n + 1)
            )
            result.append(sum_forms(terms) * c0_inverse.scale(Fraction(1, n)))
        return ParamSeries(self.parameter, tuple(result))

    def log(self) -> "ParamSeries":
        """log(s) via the logarithmic derivative, k L_k c0 = k c_k - sum i L_i c_(k-i)."""
        c0 = self.coeffs[0]
        if c0.is_zero():
            raise NonUnitConstantTerm("logarithm of a series without constant term")
        c0_inverse = c0.power(-1)
        result = [log_of(c0)]
        for k in range(1, self.trunc + 1):
            acc = self.coeffs[k].scale(k) - sum_forms(
                result[i].scale(i) * self.coeffs[k - i] for i in range(1, k)
            )
            result.append(acc * c0_inverse.scale(Fraction(1, k)))
        return ParamSeries(self.parameter, tuple(result))

    def a_derivative(self) -> "ParamSeries":
        """d/da; the truncation order drops by one."""
        if self.trunc < 1:
            raise JetmapsError("d/da needs a series truncated at order 1 or more")
        return ParamSeries(
            self.parameter, tuple(self.coeffs[k].scale(k) for k in range(1, self.trunc + 1))
        )

    def at_zero(self) -> NormalForm:
        return self.coeffs[0]

    def is_zero(self) -> bool:
        return all(c.is_zero() for c in self.coeffs)

    def to_expr(self) -> ex.Expr:
        a = ex.Sym(self.parameter)
        return ex.add(*(ex.mul(c.to_expr(), ex.power(a, k)) for k, c in enumerate(self.coeffs)))


def expand_in_parameter(
    e: ex.Expr,
    parameter: Parameter,
    trunc: int,
    bindings: Optional[Mapping[Atom, ParamSeries]] = None,
) -> ParamSeries:
    """Expand an expression as a series in ``parameter`` up to ``trunc``.

    Atoms bound in ``bindings`` are replaced by their series. Subterms
    free of the parameter and of bound atoms become constant series
    directly; fractional and negative powers go through the series
    power recurrence, logarithms through the logarithmic derivative.
    """
    bound = dict(bindings or {})
    watched = set(bound) | {parameter}
    memo: Dict[ex.Expr, ParamSeries] = {}

    def walk(node: ex.Expr) -> ParamSeries:
        cached = memo.get(node)
        if cached is not None:
            return cached
        if not (ex.atoms_of(node) & watched):
            result = ParamSeries.constant(parameter, normalize(node), trunc)
        elif isinstance(node, ex.Sym):
            if node.atom == parameter:
                result = ParamSeries.generator(parameter, trunc)
            else:
                result = bound[node.atom].truncate(trunc)
        elif isinstance(node, ex.Add):
            result = walk(node.terms[0])
            for term in node.terms[1:]:
                result = result + walk(term)
        elif isinstance(node, ex.Mul):
            result = walk(node.factors[0])
            for factor in node.factors[1:]:
                result = result * walk(factor)
        elif isinstance(node, ex.Pow):
            result = walk(node.base).power(node.exp)
        elif isinstance(node, ex.Log):
            result = walk(node.arg).log()
        else:
            raise TypeError(f"unknown expression node {type(node).__name__}")
        memo[node] = result
        return result

    return walk(ex.as_expr(e))
