import logging
import random
from pathlib import Path
from typing import Dict, List, Optional

from rich.console import Console
from rich.logging import RichHandler
from rich.markup import escape
from rich.panel import Panel
from rich.table import Table

from jetmaps.algebra import expr as ex
from jetmaps.algebra.atoms import Atom
from jetmaps.algebra.normal_form import NormalForm
from jetmaps.config import get_config
from jetmaps.dsl import Problem, parse_expr, read_problem
from jetmaps.errors import DslSyntaxError, MissingSection, NotPolynomial
from jetmaps.ideal import OrientedSystem, infer_ranking, orient
from jetmaps.ideal.verification import spot_check
from jetmaps.jets.context import JetContext
from jetmaps.report import Report, Verdict

VERDICT_STYLES = {
    Verdict.VERIFIED: "bold green",
    Verdict.FALSIFIED: "bold red",
    Verdict.ERROR: "bold yellow",
}


def setup_logging(verbose: bool = False) -> None:
    """Send library logs to stderr through rich; stdout stays report-only."""
    level = "DEBUG" if verbose else get_config()["log_level"]
    logging.basicConfig(
        level=level,
        format="%(message)s",
        datefmt="[%X]",
        handlers=[RichHandler(console=Console(stderr=True), show_path=False)],
        force=True,
    )


def load_problem(path: Path) -> Problem:
    problem = read_problem(path)
    logging.getLogger(__name__).debug("loaded %s", path)
    return problem


def require_source(problem: Problem) -> OrientedSystem:
    """Orient the [system source] equations with the configured ranking."""
    equations = problem.source_system
    if not equations:
        raise MissingSection("system source")
    ranking = infer_ranking(
        problem.context, [eq.lhs for eq in equations], problem.options.get("ranking")
    )
    return orient(equations, problem.context, ranking)


def require_mapping(problem: Problem):
    if problem.mapping is None:
        raise MissingSection("mapping")
    return problem.mapping


def merged_options(problem: Problem, **flags) -> Dict[str, str]:
    """File options overlaid with the flags actually given on the command line."""
    options = dict(problem.options)
    for key, value in flags.items():
        if value is not None:
            options[key] = str(value)
    return options


def option_int(options: Dict[str, str], key: str) -> Optional[int]:
    value = options.get(key)
    return int(value) if value is not None else None


def split_top_level(text: str) -> List[str]:
    """Split on commas that are not inside brackets or parentheses."""
    parts, depth, current = [], 0, []
    for char in text:
        if char in "([":
            depth += 1
        elif char in ")]":
            depth -= 1
        if char == "," and depth == 0:
            parts.append("".join(current))
            current = []
        else:
            current.append(char)
    parts.append("".join(current))
    return [part.strip() for part in parts if part.strip()]


def parse_atoms(text: str, ctx: JetContext) -> List[Atom]:
    """Atoms listed in a --top value, e.g. ``u[x,x],u[x],u``."""
    atoms = []
    for part in split_top_level(text):
        node = parse_expr(part, ctx)
        if isinstance(node, ex.Pow) and isinstance(node.base, ex.Sym) and node.exp.denominator != 1:
            raise NotPolynomial(
                f"{part!r}: coefficients are collected over whole powers of {node.base.atom}"
            )
        if not isinstance(node, ex.Sym):
            raise DslSyntaxError(f"{part!r} is not a single jet coordinate")
        atoms.append(node.atom)
    if not atoms:
        raise DslSyntaxError("--top lists no jet coordinate")
    return atoms


def spot_value(label: str, nf: NormalForm, seed: Optional[int]) -> str:
    rng = random.Random(get_config()["seed"] if seed is None else seed)
    return spot_check(label, nf, rng).value


def render_report(console: Console, title: str, report: Report) -> None:
    style = VERDICT_STYLES[report.verdict]
    console.print(Panel(f"[{style}]{report.verdict.value}[/{style}]", title=title, expand=False))

    residuals = Table(title="Residuals", show_lines=False, expand=False)
    residuals.add_column("Equation", style="cyan")
    residuals.add_column("Normal form")
    for entry in report.residuals:
        residuals.add_row(escape(entry.equation), escape(entry.normal_form))
    console.print(residuals)

    if report.spot_checks:
        checks = Table(title="Spot checks", expand=False)
        checks.add_column("Equation", style="cyan")
        checks.add_column("Point")
        checks.add_column("Value", justify="right")
        for check in report.spot_checks:
            point = ", ".join(f"{k}={v}" for k, v in check.assignment.items())
            checks.add_row(escape(check.equation), escape(point), check.value)
        console.print(checks)

    if report.options:
        console.print(
            "Options: " + escape(", ".join(f"{k}={v}" for k, v in report.options.items()))
        )
    for note in report.notes:
        console.print(f"[dim]note:[/dim] {escape(note)}")
    if report.timing is not None:
        console.print(f"[dim]finished in {report.timing:.3f}s[/dim]")
