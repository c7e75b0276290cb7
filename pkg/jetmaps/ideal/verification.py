# jetmaps/ideal/verification.py

import logging
import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, List, Optional, Sequence, Tuple

from jetmaps.algebra import expr as ex
from jetmaps.algebra.atoms import Atom, Dependent
from jetmaps.algebra.normal_form import NormalForm
from jetmaps.algebra.ops import collect_nf, eval_numeric
from jetmaps.config import get_config
from jetmaps.dsl.formatter import format_expr
from jetmaps.dsl.problem import Equation
from jetmaps.errors import DivisionByZeroError, DomainError
from jetmaps.jets.context import JetContext, rename_to_context
from jetmaps.prolongation.lifting import Mapping, lift, pullback_nf
from jetmaps.report import Report, ResidualEntry, SpotCheck, format_value

from .reduction import OrientedSystem, reduce_nf

logger = logging.getLogger(__name__)


def equation_label(equation: Equation) -> str:
    if equation.text:
        return equation.text
    return f"{format_expr(equation.lhs)} = {format_expr(equation.rhs)}"


def residual_text(nf: NormalForm) -> str:
    return "0" if nf.is_zero() else format_expr(nf.to_expr())


def required_order(equations: Sequence[Equation], ctx: JetContext) -> int:
    order = 0
    for equation in equations:
        for atom in ex.atoms_of(equation.lhs) | ex.atoms_of(equation.rhs):
            if isinstance(atom, Dependent) and ctx.owns(atom):
                order = max(order, atom.order)
    return order


def random_point(atoms, rng: random.Random) -> Dict[Atom, Fraction]:
    """Positive rationals, so every fractional power is admissible."""
    return {
        atom: Fraction(rng.randint(1, 9), rng.randint(1, 5))
        for atom in sorted(atoms, key=lambda a: a.sort_key())
    }


def spot_check(label: str, nf: NormalForm, rng: random.Random) -> SpotCheck:
    point = random_point(nf.atoms(), rng)
    try:
        value = eval_numeric(nf.to_expr(), point)
    except (DivisionByZeroError, DomainError):
        value = None
    return SpotCheck(
        equation=label,
        assignment={str(atom): str(v) for atom, v in point.items()},
        value=format_value(value),
    )


def spot_checks(entries: List[Tuple[str, NormalForm]], seed: Optional[int] = None, count: Optional[int] = None) -> List[SpotCheck]:
    config = get_config()
    rng = random.Random(config["seed"] if seed is None else seed)
    count = config["spot_checks"] if count is None else count
    checks = []
    for _ in range(count):
        for label, nf in entries:
            checks.append(spot_check(label, nf, rng))
    return checks


def verify_solution_map(
    source: OrientedSystem,
    target: List[Equation],
    mapping: Mapping,
    order: Optional[int] = None,
    seed: Optional[int] = None,
    options: Optional[Dict[str, str]] = None,
) -> Report:
    """Check that ``mapping`` sends solutions of ``source`` to solutions of ``target``.

    Every target residual is pulled back through the lift and reduced
    modulo the source ideal; the verdict is VERIFIED when all reduce to
    zero.
    """
    if order is None:
        order = required_order(target, mapping.target)
    lifted = lift(mapping, order)
    entries = []
    for equation in target:
        pulled = pullback_nf(lifted, equation.residual)
        reduced = reduce_nf(pulled, source).normal_form
        entries.append((equation_label(equation), reduced))
    residuals = [ResidualEntry(equation=label, normal_form=residual_text(nf)) for label, nf in entries]
    report = Report.from_residuals(
        residuals,
        spot_checks=spot_checks(entries, seed),
        options=dict(options or {}),
    )
    logger.info("verify-map: %s", report.verdict.value)
    return report


def symmetry_target(system: OrientedSystem, mapping: Mapping) -> List[Equation]:
    """The system's own equations written in the mapping's target coordinates."""
    renamed = []
    for oriented in system.equations:
        equation = oriented.as_equation()
        lhs = rename_to_context(equation.lhs, system.ctx, mapping.target)
        rhs = rename_to_context(equation.rhs, system.ctx, mapping.target)
        renamed.append(Equation(lhs, rhs, f"{format_expr(lhs)} = {format_expr(rhs)}", equation.line))
    return renamed


def verify_symmetry(
    system: OrientedSystem,
    mapping: Mapping,
    order: Optional[int] = None,
    seed: Optional[int] = None,
    options: Optional[Dict[str, str]] = None,
) -> Report:
    target = symmetry_target(system, mapping)
    report = verify_solution_map(system, target, mapping, order, seed, options)
    report.notes.append("target system taken from the source system (symmetry check)")
    return report


@dataclass(frozen=True)
class DeterminingEquation:
    exponents: Tuple[int, ...]
    monomial: str
    coefficient: NormalForm

    @property
    def text(self) -> str:
        return residual_text(self.coefficient)


def _monomial_text(atoms: Sequence[Atom], exponents: Tuple[int, ...]) -> str:
    parts = []
    for atom, k in zip(atoms, exponents):
        if k == 1:
            parts.append(str(atom))
        elif k:
            parts.append(f"{atom}^{k}")
    return "*".join(parts) or "1"


def determining_equations(
    source: OrientedSystem,
    target: List[Equation],
    mapping: Mapping,
    order: Optional[int],
    top_atoms: List[Atom],
) -> List[DeterminingEquation]:
    """Coefficients of the reduced pullback residual over ``top_atoms``.

    One entry per listed atom is always present (zero when it does not
    occur), followed by any other nonzero coefficient.

    Raises:
        NotPolynomial: the residual is not polynomial in ``top_atoms``.
    """
    if order is None:
        order = required_order(target, mapping.target)
    lifted = lift(mapping, order)
    result: List[DeterminingEquation] = []
    for equation in target:
        reduced = reduce_nf(pullback_nf(lifted, equation.residual), source).normal_form
        parts = collect_nf(reduced, top_atoms)
        units = []
        for k in range(len(top_atoms)):
            unit = tuple(1 if i == k else 0 for i in range(len(top_atoms)))
            units.append(unit)
            result.append(
                DeterminingEquation(unit, _monomial_text(top_atoms, unit), parts.get(unit, NormalForm()))
            )
        for exponents, coefficient in parts.items():
            if exponents not in units:
                result.append(
                    DeterminingEquation(exponents, _monomial_text(top_atoms, exponents), coefficient)
                )
    logger.info("det-eqs: %d coefficient equation(s)", len(result))
    return result
