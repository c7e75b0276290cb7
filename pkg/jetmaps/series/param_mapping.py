# jetmaps/series/param_mapping.py

"""Parametric mappings x_i -> xbar_i(a), u -> ubar(a) and their prolongations.

Prolongation coefficients follow the recurrence obtained by collecting
powers of a in the contact condition:

    U_{beta,k} = D_i(U_{alpha,k})
                 - sum_j sum_{l<k} U_{alpha+1_j,l} D_i(X_{j,k-l})

with beta = alpha + 1_i, i the last direction in which beta is nonzero,
and U_{gamma,0} the jet coordinate u_gamma itself.
"""

import logging
from dataclasses import dataclass, field, replace
from typing import Dict, List, Optional, Tuple

from jetmaps.algebra import expr as ex
from jetmaps.algebra.atoms import Atom, Parameter
from jetmaps.algebra.normal_form import NormalForm, sum_forms
from jetmaps.dsl.problem import ParamMappingDecl
from jetmaps.errors import JetmapsError
from jetmaps.ideal.reduction import OrientedSystem, reduce_nf
from jetmaps.jets.context import JetContext, MultiIndex, last_nonzero, multi_indices, multi_indices_upto
from jetmaps.jets.total import total_derivative, total_derivative_nf

from .series import ParamSeries, expand_in_parameter

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class ParamMapping:
    """Series for the barred coordinates; ``prolonged[alpha]`` is ubar_alpha."""

    ctx: JetContext
    parameter: Parameter
    independents: Tuple[ParamSeries, ...]
    prolonged: Dict[MultiIndex, ParamSeries] = field(default_factory=dict)
    order: int = 0

    @property
    def trunc(self) -> int:
        return self.prolonged[self.zero].trunc

    @property
    def zero(self) -> MultiIndex:
        return (0,) * self.ctx.n

    @property
    def dependent(self) -> ParamSeries:
        return self.prolonged[self.zero]

    def series(self, alpha: MultiIndex) -> ParamSeries:
        if alpha not in self.prolonged:
            raise JetmapsError(f"ubar{alpha} is not prolonged (order {self.order})")
        return self.prolonged[alpha]

    def bindings(self) -> Dict[Atom, ParamSeries]:
        """Jet coordinate -> series of its barred counterpart."""
        values: Dict[Atom, ParamSeries] = {}
        for i, series in enumerate(self.independents):
            values[self.ctx.independent(i)] = series
        for alpha, series in self.prolonged.items():
            values[self.ctx.jet(0, alpha)] = series
        return values


def space_time(system: OrientedSystem) -> Tuple[int, int]:
    """(x, y) directions of an evolution equation in two independents.

    y is the direction of the first principal derivative, x the other.
    """
    if system.ctx.n != 2 or system.ctx.m != 1 or not system.equations:
        raise JetmapsError("needs one evolution equation in two independents and one dependent")
    y = last_nonzero(system.equations[0].principal.alpha)
    return 1 - y, y


def h_transform(h: ex.Expr, ctx: JetContext, x: int) -> ex.Expr:
    """u + 2*D_x(h)/h, the dependent component generated by ``h``."""
    u = ex.Sym(ctx.jet(0))
    return u + ex.Const(2) * total_derivative(h, x, ctx) / h


def build_param_mapping(decl: ParamMappingDecl, system: OrientedSystem, trunc: int) -> ParamMapping:
    ctx = system.ctx
    if ctx.m != 1:
        raise JetmapsError("parametric mappings need exactly one dependent variable")
    a = decl.parameter
    independents = tuple(
        expand_in_parameter(decl.independents.get(name, ex.Sym(ctx.independent(i))), a, trunc)
        for i, name in enumerate(ctx.independents)
    )
    if decl.h is not None:
        x, _ = space_time(system)
        ubar_expr = h_transform(decl.h, ctx, x)
    else:
        ubar_expr = decl.dependents.get(ctx.dependents[0], ex.Sym(ctx.jet(0)))
    ubar = expand_in_parameter(ubar_expr, a, trunc)
    for i, series in enumerate(independents):
        if not (series.at_zero() - NormalForm.from_atom(ctx.independent(i))).is_zero():
            raise JetmapsError(f"{ctx.independents[i]}bar must reduce to {ctx.independents[i]} at {a} = 0")
    if not (ubar.at_zero() - NormalForm.from_atom(ctx.jet(0))).is_zero():
        raise JetmapsError(f"{ctx.dependents[0]}bar must reduce to {ctx.dependents[0]} at {a} = 0")
    return ParamMapping(ctx, a, independents, {(0,) * ctx.n: ubar}, 0)


def prolong_param(mapping: ParamMapping, order: int) -> ParamMapping:
    """Series for every ubar_alpha with |alpha| <= ``order``."""
    if order <= mapping.order:
        return mapping
    ctx = mapping.ctx
    n, trunc = ctx.n, mapping.trunc
    x_coeffs = [series.coeffs for series in mapping.independents]
    dx_cache: Dict[Tuple[int, int, int], NormalForm] = {}

    def dx(i: int, j: int, k: int) -> NormalForm:
        key = (i, j, k)
        if key not in dx_cache:
            dx_cache[key] = total_derivative_nf(x_coeffs[j][k], i, ctx)
        return dx_cache[key]

    coeffs: Dict[MultiIndex, List[Optional[NormalForm]]] = {
        alpha: list(series.coeffs) for alpha, series in mapping.prolonged.items()
    }
    new = [beta for beta in multi_indices_upto(n, order) if beta not in coeffs]
    for beta in new:
        coeffs[beta] = [NormalForm.from_atom(ctx.jet(0, beta))] + [None] * trunc

    def base(gamma: MultiIndex, l: int) -> NormalForm:
        if l == 0:
            return NormalForm.from_atom(ctx.jet(0, gamma))
        return coeffs[gamma][l]

    for k in range(1, trunc + 1):
        for beta in new:
            i = last_nonzero(beta)
            alpha = list(beta)
            alpha[i] -= 1
            alpha = tuple(alpha)
            terms = [total_derivative_nf(coeffs[alpha][k], i, ctx)]
            for j in range(n):
                shifted = tuple(a + (1 if m == j else 0) for m, a in enumerate(alpha))
                for l in range(k):
                    d = dx(i, j, k - l)
                    if d.terms:
                        terms.append(-(base(shifted, l) * d))
            coeffs[beta][k] = sum_forms(terms)
        logger.debug("prolonged series coefficient a^%d for %d derivative(s)", k, len(new))
    prolonged = {
        alpha: ParamSeries(mapping.parameter, tuple(values)) for alpha, values in coeffs.items()
    }
    return replace(mapping, prolonged=prolonged, order=order)


@dataclass(frozen=True)
class ParamContactResidual:
    alpha: MultiIndex
    direction: int
    power: int
    residual: NormalForm


def param_contact_residuals(mapping: ParamMapping) -> List[ParamContactResidual]:
    """D_i(U_{alpha,k}) - sum_j sum_{l<=k} U_{alpha+1_j,l} D_i(X_{j,k-l}) for |alpha| < order."""
    ctx = mapping.ctx
    n = ctx.n
    result = []
    for q in range(mapping.order):
        for alpha in multi_indices(n, q):
            for i in range(n):
                for k in range(mapping.trunc + 1):
                    terms = [total_derivative_nf(mapping.series(alpha).coeffs[k], i, ctx)]
                    for j in range(n):
                        shifted = tuple(a + (1 if m == j else 0) for m, a in enumerate(alpha))
                        for l in range(k + 1):
                            d = total_derivative_nf(mapping.independents[j].coeffs[k - l], i, ctx)
                            if d.terms:
                                terms.append(-(mapping.series(shifted).coeffs[l] * d))
                    result.append(ParamContactResidual(alpha, i, k, sum_forms(terms)))
    return result


def series_substitute_residuals(system: OrientedSystem, mapping: ParamMapping) -> List[ParamSeries]:
    """Barred residual of every equation, coefficients reduced modulo ``system``."""
    mapping = prolong_param(mapping, system.order)
    bindings = mapping.bindings()
    result = []
    for oriented in system.equations:
        residual = oriented.as_equation().residual
        series = expand_in_parameter(residual, mapping.parameter, mapping.trunc, bindings)
        result.append(series.map(lambda c: reduce_nf(c, system).normal_form))
    return result


def series_substitute_residual(system: OrientedSystem, mapping: ParamMapping) -> ParamSeries:
    if len(system.equations) != 1:
        raise JetmapsError("expected a system of one equation")
    return series_substitute_residuals(system, mapping)[0]
