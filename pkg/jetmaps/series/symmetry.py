# jetmaps/series/symmetry.py

import logging
from typing import Dict, List, Optional, Tuple

from jetmaps.algebra import expr as ex
from jetmaps.algebra.atoms import Atom
from jetmaps.algebra.normal_form import ZERO, NormalForm
from jetmaps.algebra.ops import normalize
from jetmaps.config import get_config
from jetmaps.dsl.formatter import format_expr
from jetmaps.dsl.problem import ParamMappingDecl
from jetmaps.ideal.reduction import OrientedSystem, reduce_nf
from jetmaps.ideal.verification import equation_label, residual_text, spot_checks
from jetmaps.jets.context import multi_indices_upto
from jetmaps.jets.total import total_derivative_multi_nf, total_derivative_nf
from jetmaps.report import Report, ResidualEntry

from .param_mapping import (
    build_param_mapping,
    h_transform,
    prolong_param,
    series_substitute_residuals,
    space_time,
)
from .series import ParamSeries

logger = logging.getLogger(__name__)


def h_condition(h: ex.Expr, system: OrientedSystem) -> NormalForm:
    """D_y h - D_x^2 h - u D_x h, reduced modulo the system."""
    ctx = system.ctx
    x, y = space_time(system)
    h_nf = normalize(h)
    dx = total_derivative_nf(h_nf, x, ctx)
    condition = (
        total_derivative_nf(h_nf, y, ctx)
        - total_derivative_nf(dx, x, ctx)
        - NormalForm.from_atom(ctx.jet(0)) * dx
    )
    return reduce_nf(condition, system).normal_form


def transformed_residuals(h: ex.Expr, system: OrientedSystem) -> List[Tuple[str, NormalForm]]:
    """Residuals of the system at v = u + 2 D_x(h)/h, reduced modulo the system."""
    ctx = system.ctx
    x, _ = space_time(system)
    v = normalize(h_transform(h, ctx, x))
    order = system.order
    bindings: Dict[Atom, NormalForm] = {
        ctx.jet(0, alpha): total_derivative_multi_nf(v, alpha, ctx)
        for alpha in multi_indices_upto(ctx.n, order)
    }
    result = []
    for oriented in system.equations:
        equation = oriented.as_equation()
        residual = normalize(equation.residual).substitute(bindings)
        result.append((equation_label(equation), reduce_nf(residual, system).normal_form))
    return result


def verify_h_condition(
    h: ex.Expr,
    system: OrientedSystem,
    check_transform: bool = True,
    seed: Optional[int] = None,
    options: Optional[Dict[str, str]] = None,
) -> Report:
    """Check the generating-function condition for ``h``.

    When the condition holds and ``check_transform`` is set, the system
    residual at v = u + 2 D_x(h)/h is reduced as well, end to end.
    """
    condition = h_condition(h, system)
    entries = [("condition on h", condition)]
    if check_transform and condition.is_zero():
        entries.extend(
            (f"{label} at u + 2*D(h)/h", nf) for label, nf in transformed_residuals(h, system)
        )
    residuals = [ResidualEntry(equation=label, normal_form=residual_text(nf)) for label, nf in entries]
    report = Report.from_residuals(
        residuals, spot_checks=spot_checks(entries, seed), options=dict(options or {})
    )
    logger.info("h-condition: %s", report.verdict.value)
    return report


def flow_ode_residual(ubar: ParamSeries) -> ParamSeries:
    """(a*ubar + 1)*ubar_aa - 2*ubar_a*(a*ubar_a - ubar), truncated at trunc - 2."""
    a = ParamSeries.generator(ubar.parameter, ubar.trunc)
    one = ParamSeries.constant(ubar.parameter, NormalForm.constant(1), ubar.trunc)
    first = ubar.a_derivative()
    second = first.a_derivative()
    return (a * ubar + one) * second - (first * (a * first - ubar)).scale(2)


def initial_values(ubar: ParamSeries) -> Tuple[NormalForm, NormalForm]:
    """(ubar, d ubar/da) at a = 0."""
    return ubar.coeffs[0], ubar.coeffs[1] if ubar.trunc >= 1 else ZERO


def verify_param_symmetry(
    system: OrientedSystem,
    decl: ParamMappingDecl,
    trunc: Optional[int] = None,
    seed: Optional[int] = None,
    options: Optional[Dict[str, str]] = None,
    flow_ode: bool = False,
) -> Report:
    """Order-by-order check that a parametric mapping is a symmetry.

    Each coefficient of the barred residual must reduce to zero modulo
    the unbarred system. A mapping given through ``h`` also gets the
    h-condition; ``flow_ode`` adds the second-order ODE in the parameter.
    """
    if trunc is None:
        trunc = get_config()["default_trunc"]
    mapping = prolong_param(build_param_mapping(decl, system, trunc), system.order)
    entries: List[Tuple[str, NormalForm]] = []
    notes: List[str] = []
    a = decl.parameter.name
    for oriented, series in zip(system.equations, series_substitute_residuals(system, mapping)):
        label = equation_label(oriented.as_equation())
        for k, coefficient in enumerate(series.coeffs):
            entries.append((f"{label} [{a}^{k}]", coefficient))
    if decl.h is not None:
        entries.append(("condition on h", h_condition(decl.h, system)))
    if flow_ode:
        ubar = mapping.dependent
        if ubar.trunc < 2:
            notes.append("flow ODE skipped: needs trunc >= 2")
        else:
            for k, coefficient in enumerate(flow_ode_residual(ubar).coeffs):
                entries.append((f"flow ODE [{a}^{k}]", coefficient))
            start, slope = initial_values(ubar)
            notes.append(
                f"initial values: ubar = {format_expr(start)}, ubar_{a} = {format_expr(slope)} at {a} = 0"
            )
            stated = decl.stated_slope
            if stated is not None and not (slope - normalize(stated)).is_zero():
                notes.append(
                    f"computed ubar_{a} = {format_expr(slope)} at {a} = 0 "
                    f"differs from the stated {format_expr(stated)}"
                )
    residuals = [ResidualEntry(equation=label, normal_form=residual_text(nf)) for label, nf in entries]
    report = Report.from_residuals(
        residuals,
        spot_checks=spot_checks([entry for entry in entries if not entry[1].is_zero()], seed),
        options=dict(options or {}),
        notes=notes,
    )
    logger.info("param-verify: %s at trunc %d", report.verdict.value, trunc)
    return report
