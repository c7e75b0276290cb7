import time
from functools import wraps
from pathlib import Path
from typing import Optional

import typer
from rich.console import Console
from rich.markup import escape
from rich.panel import Panel
from rich.table import Table

from jetmaps.algebra.ops import normalize
from jetmaps.dsl import format_expr, parse_expr
from jetmaps.errors import JetmapsError, MissingSection
from jetmaps.ideal import determining_equations, reduce_nf, verify_solution_map, verify_symmetry
from jetmaps.ideal.verification import required_order, residual_text, symmetry_target
from jetmaps.prolongation import lift
from jetmaps.report import Report
from jetmaps.series import verify_param_symmetry
from cli.models import (
    CoefficientEntry,
    CommandName,
    ComponentEntry,
    DeterminingListing,
    ProlongListing,
    ReduceResult,
)
from cli.utils import (
    load_problem,
    merged_options,
    option_int,
    parse_atoms,
    render_report,
    require_mapping,
    require_source,
    setup_logging,
    spot_value,
)

console = Console()
err_console = Console(stderr=True)

app = typer.Typer(
    name="jetmaps",
    help="jetmaps: lift contact mappings and verify them against PDE systems",
    add_completion=True,
)

JSON_OPTION = typer.Option(False, "--json", help="Print the machine-readable form")
SEED_OPTION = typer.Option(None, "--seed", help="Seed for the numeric spot checks")
VERBOSE_OPTION = typer.Option(False, "--verbose", "-v", help="Debug logging on stderr")
PROBLEM_ARGUMENT = typer.Argument(..., help="Problem file with [variables], [system source], ...")


def handle_errors(command: CommandName):
    """Turn library and file errors into a one-line diagnostic and exit code 2."""

    def decorator(func):
        @wraps(func)
        def wrapper(*args, **kwargs):
            try:
                return func(*args, **kwargs)
            except (JetmapsError, OSError) as exc:
                err_console.print(
                    f"[red]error[/red] {command.value}: {type(exc).__name__}: {escape(str(exc))}",
                    soft_wrap=True,
                    highlight=False,
                )
                raise typer.Exit(code=2)

        return wrapper

    return decorator


def finish(title: str, report: Report, json_output: bool, started: float) -> None:
    if json_output:
        typer.echo(report.to_json())
    else:
        report.timing = time.perf_counter() - started
        render_report(console, title, report)
    raise typer.Exit(code=report.exit_code)


@app.command("verify-map")
@handle_errors(CommandName.VERIFY_MAP)
def verify_map(
    problem_file: Path = PROBLEM_ARGUMENT,
    order: Optional[int] = typer.Option(None, "--order", help="Lift order (default: target order)"),
    json_output: bool = JSON_OPTION,
    seed: Optional[int] = SEED_OPTION,
    verbose: bool = VERBOSE_OPTION,
):
    """Check that the mapping carries solutions of the source system to the target system."""
    setup_logging(verbose)
    started = time.perf_counter()
    problem = load_problem(problem_file)
    mapping = require_mapping(problem)
    system = require_source(problem)
    options = merged_options(problem, order=order, seed=seed)
    lift_order = option_int(options, "order")
    if problem.is_symmetry:
        report = verify_symmetry(system, mapping, lift_order, seed, options)
    else:
        report = verify_solution_map(
            system, problem.target_system, mapping, lift_order, seed, options
        )
    finish("verify-map", report, json_output, started)


@app.command("reduce")
@handle_errors(CommandName.REDUCE)
def reduce_command(
    problem_file: Path = PROBLEM_ARGUMENT,
    expr: str = typer.Option(..., "--expr", help="Expression over the source jet coordinates"),
    json_output: bool = JSON_OPTION,
    verbose: bool = VERBOSE_OPTION,
):
    """Normal form of an expression modulo the source system."""
    setup_logging(verbose)
    problem = load_problem(problem_file)
    system = require_source(problem)
    reduced = reduce_nf(normalize(parse_expr(expr, problem.context)), system).normal_form
    result = ReduceResult(
        expr=expr.strip(), normal_form=residual_text(reduced), options=merged_options(problem)
    )
    if json_output:
        typer.echo(result.model_dump_json(indent=2))
    else:
        console.print(
            Panel(escape(result.normal_form), title=f"reduce {escape(result.expr)}", expand=False)
        )


@app.command("prolong")
@handle_errors(CommandName.PROLONG)
def prolong(
    problem_file: Path = PROBLEM_ARGUMENT,
    order: Optional[int] = typer.Option(None, "--order", help="Lift order (default: target order, at least 1)"),
    json_output: bool = JSON_OPTION,
    seed: Optional[int] = SEED_OPTION,
    verbose: bool = VERBOSE_OPTION,
):
    """List the lifted components of the mapping."""
    setup_logging(verbose)
    problem = load_problem(problem_file)
    mapping = require_mapping(problem)
    options = merged_options(problem, order=order, seed=seed)
    lift_order = option_int(options, "order")
    if lift_order is None:
        lift_order = max(required_order(problem.target_system, mapping.target), 1)
    lifted = lift(mapping, lift_order)
    listing = ProlongListing(
        components=[
            ComponentEntry(atom=str(atom), expr=format_expr(nf)) for atom, nf in lifted.listing()
        ],
        determinant=format_expr(lifted.df_det),
        determinant_spot=spot_value("det Df", lifted.df_det, seed),
        options=options,
    )
    if json_output:
        typer.echo(listing.model_dump_json(indent=2))
        return
    table = Table(title=f"Lift to order {lift_order}", expand=False)
    table.add_column("Target", style="cyan")
    table.add_column("Component")
    for entry in listing.components:
        table.add_row(escape(entry.atom), escape(entry.expr))
    console.print(table)
    console.print(f"det Df = {escape(listing.determinant)}")
    console.print(f"det Df at the spot point = {listing.determinant_spot}")


@app.command("det-eqs")
@handle_errors(CommandName.DET_EQS)
def det_eqs(
    problem_file: Path = PROBLEM_ARGUMENT,
    top: str = typer.Option(..., "--top", help="Comma-separated jet coordinates, e.g. u[x,x],u[x],u"),
    order: Optional[int] = typer.Option(None, "--order", help="Lift order (default: target order)"),
    json_output: bool = JSON_OPTION,
    verbose: bool = VERBOSE_OPTION,
):
    """Coefficients of the reduced pullback, one per listed monomial."""
    setup_logging(verbose)
    problem = load_problem(problem_file)
    mapping = require_mapping(problem)
    system = require_source(problem)
    options = merged_options(problem, order=order, top=top)
    target = problem.target_system or symmetry_target(system, mapping)
    atoms = parse_atoms(top, problem.context)
    equations = determining_equations(system, target, mapping, option_int(options, "order"), atoms)
    listing = DeterminingListing(
        equations=[CoefficientEntry(monomial=eq.monomial, coefficient=eq.text) for eq in equations],
        options=options,
    )
    if json_output:
        typer.echo(listing.model_dump_json(indent=2))
        return
    for entry in listing.equations:
        console.print(
            f"coefficient of [cyan]{escape(entry.monomial)}[/cyan]: {escape(entry.coefficient)}",
            soft_wrap=True,
        )


@app.command("param-verify")
@handle_errors(CommandName.PARAM_VERIFY)
def param_verify(
    problem_file: Path = PROBLEM_ARGUMENT,
    trunc: Optional[int] = typer.Option(None, "--trunc", help="Highest power of the parameter kept"),
    json_output: bool = JSON_OPTION,
    seed: Optional[int] = SEED_OPTION,
    verbose: bool = VERBOSE_OPTION,
):
    """Order-by-order check of a parametric symmetry."""
    setup_logging(verbose)
    started = time.perf_counter()
    problem = load_problem(problem_file)
    if problem.param_mapping is None:
        raise MissingSection("param-mapping")
    system = require_source(problem)
    options = merged_options(problem, trunc=trunc, seed=seed)
    flow_ode = options.get("flow_ode", "no").lower() in ("yes", "true", "on", "1")
    report = verify_param_symmetry(
        system,
        problem.param_mapping,
        option_int(options, "trunc"),
        seed,
        options,
        flow_ode,
    )
    finish("param-verify", report, json_output, started)


if __name__ == "__main__":
    app()
