from fractions import Fraction

import pytest

from jetmaps.algebra import expr as ex
from jetmaps.algebra.atoms import Dependent, FuncDeriv, Independent, Parameter
from jetmaps.algebra.ops import equal
from jetmaps.dsl import parse_expr, parse_problem, read_problem
from jetmaps.errors import (
    ArityError,
    DslSyntaxError,
    DuplicateMapping,
    DuplicateSection,
    MissingSection,
    UnknownSymbol,
)
from jetmaps.jets import JetContext

HEADER = """\
[variables]
independent: x y
dependent: u
parameters: a

[system source]
u[y] = u[x,x] + u*u[x]
"""


@pytest.fixture
def ansatz_ctx() -> JetContext:
    return JetContext(("t", "x"), ("u",), ("m",), {"f": "x", "h": "x"})


class TestExpressions:
    def test_jet_brackets_count_derivatives(self, tx):
        node = parse_expr("u[x,t,x]", tx)
        assert node == ex.Sym(Dependent("u", (1, 2), ("t", "x")))

    def test_bare_dependent_is_order_zero(self, tx):
        assert parse_expr("u", tx) == ex.Sym(tx.jet(0))

    def test_precedence_and_unary_minus(self, tx):
        assert equal(parse_expr("-x^2 + 2*x/4", tx), parse_expr("1/2*x - x*x", tx))

    def test_chained_exponents_multiply(self, tx):
        assert equal(parse_expr("x^2^3", tx), parse_expr("x^8", tx))

    def test_rational_exponent(self, tx):
        node = parse_expr("x^(-3/2)", tx)
        assert node == ex.Pow(ex.Sym(Independent("x")), Fraction(-3, 2))

    def test_parameters_resolve(self, xy):
        assert parse_expr("a", xy) == ex.Sym(Parameter("a"))

    def test_function_calls_and_primes(self, ansatz_ctx):
        assert parse_expr("h(x)", ansatz_ctx) == ex.Sym(FuncDeriv("h", "x", 0))
        assert parse_expr("h''(x)", ansatz_ctx) == ex.Sym(FuncDeriv("h", "x", 2))
        assert parse_expr("diff(f,x,4)", ansatz_ctx) == ex.Sym(FuncDeriv("f", "x", 4))

    def test_function_applied_to_wrong_variable(self, ansatz_ctx):
        with pytest.raises(ArityError):
            parse_expr("h(t)", ansatz_ctx)
        with pytest.raises(ArityError):
            parse_expr("h + 1", ansatz_ctx)

    def test_primed_names_resolve_without_the_prime(self):
        target = JetContext(("t'", "y'"), ("v'",))
        node = parse_expr("v[t',y] + y", target)
        assert node == ex.add(
            ex.Sym(Dependent("v'", (1, 1), ("t'", "y'"))), ex.Sym(Independent("y'"))
        )

    def test_unknown_symbol_position(self, tx):
        with pytest.raises(UnknownSymbol) as info:
            parse_expr("x + w", tx)
        assert (info.value.line, info.value.column) == (1, 5)

    def test_non_independent_inside_brackets(self, tx):
        with pytest.raises(ArityError):
            parse_expr("u[y]", tx)

    def test_malformed_number(self, tx):
        with pytest.raises(DslSyntaxError):
            parse_expr("2x", tx)

    def test_trailing_operator(self, tx):
        with pytest.raises(DslSyntaxError) as info:
            parse_expr("x +", tx)
        assert "end of input" in info.value.message


class TestProblemFiles:
    def test_sections(self, fixture_path):
        problem = read_problem(fixture_path("wave_derived.problem"))
        assert problem.context.independents == ("t", "x")
        assert problem.context.dependents == ("u",)
        assert len(problem.source_system) == 1
        assert problem.source_system[0].text == "u[t,t] = x*u[x,x]"
        assert problem.source_system[0].line == 7
        assert problem.target_context.independents == ("t'", "y'")
        assert problem.target_context.dependents == ("v'",)
        assert problem.target_system[0].text == "v[t',t'] = v[y',y'] - 3/y'*v[y']"
        assert not problem.is_symmetry
        assert problem.options == {}

    def test_mapping_components(self, fixture_path, tx):
        problem = read_problem(fixture_path("wave_derived.problem"))
        mapping = problem.mapping
        assert equal(mapping.f[1], parse_expr("2*x^(1/2)", tx))
        assert equal(mapping.g[0], parse_expr("x*u[x] - u", tx))

    def test_symmetry_problem_has_no_target(self, fixture_path):
        problem = read_problem(fixture_path("wave_symmetry.problem"))
        assert problem.is_symmetry
        assert problem.mapping.target.independents == ("tbar", "xbar")

    def test_functions_section(self, fixture_path):
        problem = read_problem(fixture_path("wave_ansatz.problem"))
        assert problem.ansatz_functions == ["f", "g", "h"]
        assert problem.context.parameters == ("m",)

    def test_param_mapping(self, fixture_path):
        problem = read_problem(fixture_path("burgers.problem"))
        decl = problem.param_mapping
        assert decl.parameter == Parameter("a")
        assert set(decl.independents) == {"x", "y"}
        assert set(decl.dependents) == {"u"}
        assert decl.h is None
        assert problem.mapping is None

    def test_param_mapping_by_h(self, fixture_path):
        decl = read_problem(fixture_path("burgers_h.problem")).param_mapping
        assert decl.dependents == {}
        assert decl.h is not None

    def test_options(self, fixture_path):
        problem = read_problem(fixture_path("burgers_flow.problem"))
        assert problem.options["flow_ode"] == "yes"

    def test_stated_flow_slope(self, fixture_path, xy):
        decl = read_problem(fixture_path("burgers_flow_stated.problem")).param_mapping
        assert decl.stated_slope == parse_expr("u[x]", xy)
        assert read_problem(fixture_path("burgers_flow.problem")).param_mapping.stated_slope is None

    def test_flow_slope_needs_a_param_mapping(self):
        with pytest.raises(MissingSection) as info:
            parse_problem(HEADER + "[options]\nflow_slope = u[x]\n")
        assert info.value.section == "param-mapping"

    def test_undeclared_symbol_is_positioned(self, fixture_path):
        with pytest.raises(UnknownSymbol) as info:
            read_problem(fixture_path("undeclared.problem"))
        assert (info.value.line, info.value.column) == (6, 21)

    def test_malformed_exponent_is_positioned(self, fixture_path):
        with pytest.raises(DslSyntaxError) as info:
            read_problem(fixture_path("malformed_exponent.problem"))
        assert (info.value.line, info.value.column) == (6, 15)
        assert "zero denominator" in info.value.message

    def test_missing_variables(self, fixture_path):
        with pytest.raises(MissingSection) as info:
            read_problem(fixture_path("no_variables.problem"))
        assert info.value.section == "variables"

    def test_duplicate_section(self):
        with pytest.raises(DuplicateSection) as info:
            parse_problem(HEADER + "\n[system source]\nu[x] = 0\n")
        assert info.value.line == 9

    def test_mapping_and_param_mapping_exclude_each_other(self):
        text = HEADER + "[mapping]\nx' = x\ny' = y\nv' = u\n[param-mapping]\nubar = u\n"
        with pytest.raises(DuplicateMapping):
            parse_problem(text)

    def test_target_without_mapping(self):
        with pytest.raises(MissingSection) as info:
            parse_problem(HEADER + "[system target]\nu[y] = 0\n")
        assert info.value.section == "mapping"

    def test_mapping_line_count(self):
        with pytest.raises(DslSyntaxError):
            parse_problem(HEADER + "[mapping]\nx' = x\nv' = u\n")

    def test_unknown_section(self):
        with pytest.raises(DslSyntaxError) as info:
            parse_problem(HEADER + "[solver]\n")
        assert "unknown section" in info.value.message

    def test_text_before_first_header(self):
        with pytest.raises(DslSyntaxError) as info:
            parse_problem("u = 1\n" + HEADER)
        assert info.value.line == 1

    def test_unknown_option(self):
        with pytest.raises(DslSyntaxError):
            parse_problem(HEADER + "[options]\ncolour = red\n")

    def test_order_option_must_be_an_integer(self):
        with pytest.raises(DslSyntaxError):
            parse_problem(HEADER + "[options]\norder = two\n")

    def test_h_and_dependent_series_exclude_each_other(self):
        with pytest.raises(DslSyntaxError):
            parse_problem(HEADER + "[param-mapping]\nh = 1 + a*u\nubar = u\n")

    def test_param_mapping_needs_a_parameter(self):
        text = "[variables]\nindependent: x y\ndependent: u\n[param-mapping]\nubar = u\n"
        with pytest.raises(DslSyntaxError):
            parse_problem(text)

    def test_param_mapping_unknown_variable(self):
        with pytest.raises(UnknownSymbol):
            parse_problem(HEADER + "[param-mapping]\nzbar = x\n")

    def test_comments_are_ignored(self):
        problem = parse_problem("# leading comment\n" + HEADER.replace("u*u[x]", "u*u[x]  # Burgers"))
        assert problem.source_system[0].text == "u[y] = u[x,x] + u*u[x]"

    def test_declarations_may_follow_their_uses(self):
        text = "[system source]\nu[t] = u[x,x]\n[variables]\nindependent: t x\ndependent: u\n"
        problem = parse_problem(text)
        assert problem.source_system[0].lhs == ex.Sym(Dependent("u", (1, 0), ("t", "x")))
