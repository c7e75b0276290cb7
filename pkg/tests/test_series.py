from fractions import Fraction

import pytest

from jetmaps.algebra import expr as ex
from jetmaps.algebra.atoms import Parameter
from jetmaps.algebra.normal_form import NormalForm
from jetmaps.algebra.ops import equal, normalize
from jetmaps.dsl import parse_expr, parse_problem
from jetmaps.errors import JetmapsError, NonUnitConstantTerm
from jetmaps.ideal import infer_ranking, orient
from jetmaps.jets import total_derivative_nf
from jetmaps.report import Verdict
from jetmaps.series import (
    ParamSeries,
    build_param_mapping,
    expand_in_parameter,
    flow_ode_residual,
    h_condition,
    initial_values,
    param_contact_residuals,
    prolong_param,
    series_substitute_residual,
    verify_h_condition,
    verify_param_symmetry,
)
from jetmaps.series.symmetry import transformed_residuals

A = Parameter("a")

BURGERS = """\
[variables]
independent: x y
dependent: u
parameters: {parameters}

[system source]
u[y] = u[x,x] + u*u[x]

[param-mapping]
"""

# terms of the generating function h = 1 + a*(...), one per constant
H_TERMS = [
    "2*u[x] + u^2",
    "u",
    "y*u + x",
    "2*y*u[x] + y*u^2 + x*u",
    "y^2*(2*u[x] + u^2) + 2*x*y*u + x^2 + 2*y",
]

# the whole family, with a free constant term
H_FAMILY = "s0 + a*(" + " + ".join(f"s{k + 1}*({term})" for k, term in enumerate(H_TERMS[:4])) + ")"


def burgers_with(mapping_lines, parameters="a s5"):
    problem = parse_problem(BURGERS.format(parameters=parameters) + mapping_lines)
    ctx = problem.context
    system = orient(
        problem.source_system, ctx, infer_ranking(ctx, [eq.lhs for eq in problem.source_system])
    )
    return problem, system


def assert_series(series, texts, ctx):
    assert series.trunc == len(texts) - 1
    for actual, text in zip(series.coeffs, texts):
        assert (actual - normalize(parse_expr(text, ctx))).is_zero(), text


class TestSeriesArithmetic:
    def test_reciprocal(self, xy):
        s = ParamSeries.from_exprs(A, [ex.ONE, parse_expr("u", xy), ex.ZERO, ex.ZERO])
        assert_series(s.reciprocal(), ["1", "-u", "u^2", "-u^3"], xy)

    def test_product_with_reciprocal_is_one(self, xy):
        s = ParamSeries.from_exprs(
            A, [parse_expr("x", xy), parse_expr("u[x]", xy), parse_expr("u^2", xy)]
        )
        assert_series(s * s.reciprocal(), ["1", "0", "0"], xy)

    def test_fractional_power(self, xy):
        s = ParamSeries.from_exprs(A, [1, 1, 0, 0])
        assert_series(s.power(Fraction(1, 2)), ["1", "1/2", "-1/8", "1/16"], xy)

    def test_integer_power_multiplies_out(self, xy):
        s = ParamSeries.from_exprs(A, [parse_expr("u", xy), 1, 0])
        assert_series(s.power(2), ["u^2", "2*u", "1"], xy)

    def test_logarithm(self, xy):
        s = ParamSeries.from_exprs(A, [1, 1, 0, 0])
        assert_series(s.log(), ["0", "1", "-1/2", "1/3"], xy)

    def test_constant_term_must_be_invertible(self):
        a = ParamSeries.generator(A, 3)
        with pytest.raises(NonUnitConstantTerm):
            a.reciprocal()
        with pytest.raises(NonUnitConstantTerm):
            a.power(Fraction(-1, 2))
        with pytest.raises(NonUnitConstantTerm):
            a.log()

    def test_coefficients_may_not_contain_the_parameter(self):
        with pytest.raises(JetmapsError):
            ParamSeries(A, (NormalForm.from_atom(A),))

    def test_parameter_derivative(self, xy):
        s = ParamSeries.from_exprs(A, [parse_expr("u", xy), 1, parse_expr("x", xy)])
        assert_series(s.a_derivative(), ["1", "2*x"], xy)
        with pytest.raises(JetmapsError):
            s.truncate(0).a_derivative()

    def test_truncate_pads_with_zeros(self):
        s = ParamSeries.generator(A, 1).truncate(3)
        assert s.trunc == 3
        assert s.coeffs[3].is_zero()


class TestExpansion:
    def test_burgers_transform_coefficients(self, xy):
        e = parse_expr("u + 2*a*u[x]*(a*u + 1)^(-1)", xy)
        series = expand_in_parameter(e, A, 5)
        assert series.coeffs[0] == normalize(parse_expr("u", xy))
        for k in range(1, 6):
            expected = parse_expr(f"2*(-1)^{k - 1}*u^{k - 1}*u[x]", xy)
            assert (series.coeffs[k] - normalize(expected)).is_zero()

    def test_parameter_free_expression_is_constant(self, xy):
        series = expand_in_parameter(parse_expr("x*u", xy), A, 2)
        assert_series(series, ["x*u", "0", "0"], xy)

    def test_logarithm_and_root(self, xy):
        e = parse_expr("log(1 + a*u) + (1 + a)^(1/2)", xy)
        assert_series(expand_in_parameter(e, A, 2), ["1", "u + 1/2", "-1/2*u^2 - 1/8"], xy)

    def test_bound_atoms_expand_through_their_series(self, xy):
        u = parse_expr("u", xy).atom
        bindings = {u: ParamSeries.from_exprs(A, [parse_expr("u", xy), parse_expr("u[x]", xy)])}
        series = expand_in_parameter(parse_expr("u^2", xy), A, 1, bindings)
        assert_series(series, ["u^2", "2*u*u[x]"], xy)


class TestProlongation:
    def test_galilean_boost_prolongs_exactly(self):
        problem, system = burgers_with("xbar = x + a*y\nubar = u - a\n")
        ctx = problem.context
        mapping = prolong_param(build_param_mapping(problem.param_mapping, system, 2), 2)
        assert_series(mapping.series((1, 0)), ["u[x]", "0", "0"], ctx)
        assert_series(mapping.series((0, 1)), ["u[y]", "-u[x]", "0"], ctx)
        assert_series(mapping.series((1, 1)), ["u[x,y]", "-u[x,x]", "0"], ctx)
        assert_series(mapping.series((0, 2)), ["u[y,y]", "-2*u[x,y]", "u[x,x]"], ctx)

    def test_first_and_second_order_coefficients(self):
        problem, system = burgers_with(
            "xbar = x + a*u + a^2*y\nybar = y + a*x*u\nubar = u + a*u[x] + a^2*x\n"
        )
        ctx = problem.context
        mapping = prolong_param(build_param_mapping(problem.param_mapping, system, 2), 2)
        X, Y = (series.coeffs for series in mapping.independents)
        U = mapping.dependent.coeffs
        p, q = mapping.series((1, 0)).coeffs, mapping.series((0, 1)).coeffs
        r, s, t = (mapping.series(alpha).coeffs for alpha in [(2, 0), (1, 1), (0, 2)])

        def D(nf, direction):
            return total_derivative_nf(nf, direction, ctx)

        def same(actual, expected):
            assert (actual - expected).is_zero()

        for i, first in [(0, p), (1, q)]:
            same(first[1], D(U[1], i) - p[0] * D(X[1], i) - q[0] * D(Y[1], i))
            same(
                first[2],
                D(U[2], i) - p[0] * D(X[2], i) - p[1] * D(X[1], i)
                - q[0] * D(Y[2], i) - q[1] * D(Y[1], i),
            )
        for second, lower, i, (left, right) in [
            (r, p, 0, (r, s)),
            (s, p, 1, (r, s)),
            (t, q, 1, (s, t)),
        ]:
            same(second[1], D(lower[1], i) - left[0] * D(X[1], i) - right[0] * D(Y[1], i))
            same(
                second[2],
                D(lower[2], i) - left[0] * D(X[2], i) - left[1] * D(X[1], i)
                - right[0] * D(Y[2], i) - right[1] * D(Y[1], i),
            )

    def test_third_order_coefficients_of_first_derivatives(self):
        problem, system = burgers_with(
            "xbar = x + a*u + a^3*y\nybar = y + a^2*x*u\nubar = u + a*u[x] + a^3*x*u\n"
        )
        ctx = problem.context
        mapping = prolong_param(build_param_mapping(problem.param_mapping, system, 3), 1)
        X, Y = (series.coeffs for series in mapping.independents)
        U = mapping.dependent.coeffs
        p, q = mapping.series((1, 0)).coeffs, mapping.series((0, 1)).coeffs
        assert len(p) == len(q) == 4

        def D(nf, direction):
            return total_derivative_nf(nf, direction, ctx)

        for i, first in [(0, p), (1, q)]:
            expected = D(U[3], i)
            for k in range(3):
                expected = expected - p[k] * D(X[3 - k], i) - q[k] * D(Y[3 - k], i)
            assert (first[3] - expected).is_zero()
            assert not first[3].is_zero()

    def test_contact_residuals_vanish(self, load):
        problem, system = load("burgers.problem")
        mapping = prolong_param(build_param_mapping(problem.param_mapping, system, 3), 2)
        residuals = param_contact_residuals(mapping)
        assert residuals
        assert all(entry.residual.is_zero() for entry in residuals)

    def test_unprolonged_derivative(self, load):
        problem, system = load("burgers.problem")
        mapping = build_param_mapping(problem.param_mapping, system, 2)
        with pytest.raises(JetmapsError):
            mapping.series((1, 0))

    def test_mapping_must_start_at_the_identity(self):
        problem, system = burgers_with("xbar = 2*x\n")
        with pytest.raises(JetmapsError):
            build_param_mapping(problem.param_mapping, system, 2)


class TestParamSymmetry:
    def test_burgers_transform(self, load):
        problem, system = load("burgers.problem")
        report = verify_param_symmetry(system, problem.param_mapping, trunc=6)
        assert report.verdict == Verdict.VERIFIED
        assert [entry.equation for entry in report.residuals] == [
            f"u[y] = u[x,x] + u*u[x] [a^{k}]" for k in range(7)
        ]
        assert report.spot_checks == []

    def test_galilean_boost(self):
        problem, system = burgers_with("xbar = x + a*y\nubar = u - a\n")
        report = verify_param_symmetry(system, problem.param_mapping, trunc=3)
        assert report.verdict == Verdict.VERIFIED

    def test_boost_with_the_wrong_sign(self):
        problem, system = burgers_with("xbar = x + a*y\nubar = u + a\n")
        residual = series_substitute_residual(
            system, build_param_mapping(problem.param_mapping, system, 2)
        )
        assert residual.coeffs[0].is_zero()
        assert equal(residual.coeffs[1].to_expr(), parse_expr("-2*u[x]", problem.context))

    def test_scaling_is_not_a_symmetry(self, load):
        problem, system = load("burgers_scaling.problem")
        report = verify_param_symmetry(system, problem.param_mapping, trunc=2)
        assert report.verdict == Verdict.FALSIFIED
        ctx = problem.context
        residuals = [parse_expr(entry.normal_form, ctx) for entry in report.residuals]
        assert residuals[0] == ex.ZERO
        for residual in residuals[1:]:
            assert equal(residual, parse_expr("-u*u[x]", ctx))
        assert [entry.vanishes for entry in report.residuals] == [True, False, False]
        assert report.spot_checks

    def test_default_truncation_comes_from_config(self, load):
        problem, system = load("burgers_scaling.problem")
        report = verify_param_symmetry(system, problem.param_mapping)
        assert len(report.residuals) == 7

    def test_mapping_given_by_h(self, load):
        problem, system = load("burgers_h.problem")
        report = verify_param_symmetry(system, problem.param_mapping, trunc=3)
        assert report.verdict == Verdict.VERIFIED
        assert report.residuals[-1].equation == "condition on h"


class TestGeneratingFunction:
    def test_linear_h(self, load, xy):
        _, system = load("burgers.problem")
        report = verify_h_condition(parse_expr("1 + a*u", xy), system)
        assert report.verdict == Verdict.VERIFIED
        assert [entry.equation for entry in report.residuals] == [
            "condition on h",
            "u[y] = u[x,x] + u*u[x] at u + 2*D(h)/h",
        ]

    @pytest.mark.parametrize("term", H_TERMS)
    def test_each_term_of_the_family(self, term):
        problem, system = burgers_with(f"h = 1 + a*({term})\n")
        assert h_condition(problem.param_mapping.h, system).is_zero()
        report = verify_h_condition(problem.param_mapping.h, system)
        assert report.verdict == Verdict.VERIFIED
        assert len(report.residuals) == 2
        assert all(entry.vanishes for entry in report.residuals)

    def test_whole_family_with_free_constants(self):
        problem, system = burgers_with(f"h = {H_FAMILY}\n", parameters="a s0 s1 s2 s3 s4")
        h = problem.param_mapping.h
        assert h_condition(h, system).is_zero()
        for _, residual in transformed_residuals(h, system):
            assert residual.is_zero()
        report = verify_h_condition(h, system, check_transform=True)
        assert report.verdict == Verdict.VERIFIED
        assert len(report.residuals) == 2

    def test_corrected_s5_term_transforms_solutions(self):
        problem, system = burgers_with(f"h = 1 + a*s5*({H_TERMS[4]})\n")
        report = verify_h_condition(problem.param_mapping.h, system, check_transform=True)
        assert report.verdict == Verdict.VERIFIED
        assert [entry.equation for entry in report.residuals] == [
            "condition on h",
            "u[y] = u[x,x] + u*u[x] at u + 2*D(h)/h",
        ]

    def test_s5_term_as_printed(self, load):
        problem, system = load("burgers_h_s5_printed.problem")
        condition = h_condition(problem.param_mapping.h, system)
        expected = parse_expr("a*s5*2*y*(2*u[x] + u^2)", problem.context)
        assert equal(condition.to_expr(), expected)
        report = verify_h_condition(problem.param_mapping.h, system)
        assert report.verdict == Verdict.FALSIFIED
        assert len(report.residuals) == 1


class TestFlowOde:
    def test_burgers_transform_solves_the_flow_ode(self, xy):
        ubar = expand_in_parameter(parse_expr("u + 2*a*u[x]*(a*u + 1)^(-1)", xy), A, 6)
        assert flow_ode_residual(ubar).is_zero()
        start, slope = initial_values(ubar)
        assert start == normalize(parse_expr("u", xy))
        assert slope == normalize(parse_expr("2*u[x]", xy))

    def test_scaling_does_not(self, xy):
        ubar = expand_in_parameter(parse_expr("u + a*u", xy), A, 3)
        assert not flow_ode_residual(ubar).is_zero()

    def test_report_entries(self, load):
        problem, system = load("burgers_flow.problem")
        report = verify_param_symmetry(system, problem.param_mapping, trunc=4, flow_ode=True)
        assert report.verdict == Verdict.VERIFIED
        flow = [entry for entry in report.residuals if entry.equation.startswith("flow ODE")]
        assert len(flow) == 3
        assert report.notes == ["initial values: ubar = u, ubar_a = 2*u[x] at a = 0"]

    def test_stated_slope_differs_from_the_computed_one(self, load):
        problem, system = load("burgers_flow_stated.problem")
        report = verify_param_symmetry(system, problem.param_mapping, trunc=3, flow_ode=True)
        assert report.verdict == Verdict.VERIFIED
        assert report.notes == [
            "initial values: ubar = u, ubar_a = 2*u[x] at a = 0",
            "computed ubar_a = 2*u[x] at a = 0 differs from the stated u[x]",
        ]

    def test_matching_stated_slope_adds_no_note(self):
        problem, system = burgers_with(
            "ubar = u + 2*a*u[x]*(a*u + 1)^(-1)\n"
            "[options]\nflow_ode = yes\nflow_slope = 2*u[x]\n",
            parameters="a",
        )
        report = verify_param_symmetry(system, problem.param_mapping, trunc=2, flow_ode=True)
        assert report.notes == ["initial values: ubar = u, ubar_a = 2*u[x] at a = 0"]

    def test_needs_two_orders(self, load):
        problem, system = load("burgers_flow.problem")
        report = verify_param_symmetry(system, problem.param_mapping, trunc=1, flow_ode=True)
        assert report.notes == ["flow ODE skipped: needs trunc >= 2"]
