# jetmaps/ideal/reduction.py

import logging
from dataclasses import dataclass, field
from typing import Dict, List, Optional, Tuple

from jetmaps.algebra import expr as ex
from jetmaps.algebra.atoms import Dependent
from jetmaps.algebra.normal_form import NormalForm
from jetmaps.algebra.ops import collect_nf, normalize
from jetmaps.config import get_config
from jetmaps.dsl.problem import Equation
from jetmaps.errors import JetmapsError, NotPolynomial, NotSolvable, OverlappingPrincipals
from jetmaps.jets.context import JetContext, MultiIndex, last_nonzero
from jetmaps.jets.total import total_derivative_nf

from .ranking import Ranking, infer_ranking

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class OrientedEquation:
    principal: Dependent
    rhs: NormalForm
    equation: Optional[Equation] = None

    def as_equation(self) -> Equation:
        if self.equation is not None:
            return self.equation
        lhs = ex.Sym(self.principal)
        return Equation(lhs, self.rhs.to_expr(), f"{self.principal} = ...")


@dataclass
class OrientedSystem:
    """A system in solved form, used as a rewrite system."""

    ctx: JetContext
    equations: List[OrientedEquation]
    ranking: Ranking

    @property
    def order(self) -> int:
        """Highest derivative order on either side of any equation."""
        orders = [eq.principal.order for eq in self.equations]
        for eq in self.equations:
            atoms = set(eq.rhs.atoms())
            if eq.equation is not None:
                atoms |= ex.atoms_of(eq.equation.lhs) | ex.atoms_of(eq.equation.rhs)
            orders.extend(
                atom.order for atom in atoms if isinstance(atom, Dependent) and self.ctx.owns(atom)
            )
        return max(orders, default=0)

    def reducer(self, atom: Dependent) -> Optional[Tuple[int, MultiIndex]]:
        """The equation whose principal divides ``atom``, and the quotient."""
        for index, eq in enumerate(self.equations):
            p = eq.principal
            if p.name == atom.name and all(a >= b for a, b in zip(atom.alpha, p.alpha)):
                return index, tuple(a - b for a, b in zip(atom.alpha, p.alpha))
        return None


def _dependent_atoms(nf: NormalForm, ctx: JetContext) -> List[Dependent]:
    return [a for a in nf.atoms() if isinstance(a, Dependent) and ctx.owns(a)]


def orient_one(equation: Equation, ranking: Ranking, ctx: JetContext) -> OrientedEquation:
    residual = normalize(equation.residual)
    atoms = _dependent_atoms(residual, ctx)
    if not atoms:
        raise NotSolvable(f"{equation.text or 'equation'}: no dependent variable to solve for")
    principal = ranking.highest(atoms)
    try:
        parts = collect_nf(residual, [principal])
    except NotPolynomial as exc:
        raise NotSolvable(f"{equation.text or 'equation'}: {principal} occurs nonlinearly") from exc
    if any(key[0] > 1 for key in parts) or (1,) not in parts:
        raise NotSolvable(f"{equation.text or 'equation'}: {principal} occurs nonlinearly")
    coefficient = parts[(1,)]
    if coefficient.is_zero():
        raise NotSolvable(f"{equation.text or 'equation'}: {principal} has a vanishing coefficient")
    rest = parts.get((0,), NormalForm())
    rhs = -(rest * coefficient.power(-1))
    return OrientedEquation(principal, rhs, equation)


def orient(equations: List[Equation], ctx: JetContext, ranking: Optional[Ranking] = None) -> OrientedSystem:
    """Solve each equation for its highest-ranked derivative.

    Raises:
        NotSolvable: the principal occurs nonlinearly, or nothing to solve for.
        OverlappingPrincipals: one principal is a derivative of another.
    """
    if ranking is None:
        ranking = infer_ranking(ctx, [eq.lhs for eq in equations])
    oriented = [orient_one(eq, ranking, ctx) for eq in equations]
    for i, first in enumerate(oriented):
        for second in oriented[i + 1:]:
            a, b = first.principal, second.principal
            if a.name != b.name:
                continue
            if all(x <= y for x, y in zip(a.alpha, b.alpha)) or all(
                x >= y for x, y in zip(a.alpha, b.alpha)
            ):
                raise OverlappingPrincipals(f"principals {a} and {b} overlap")
    logger.debug(
        "oriented %d equation(s), ranking %s: %s",
        len(oriented),
        ranking.describe(),
        ", ".join(str(eq.principal) for eq in oriented),
    )
    return OrientedSystem(ctx, oriented, ranking)


@dataclass
class Reduction:
    normal_form: NormalForm
    passes: int = 0
    replaced: int = 0
    cache: Dict[Tuple[int, MultiIndex], NormalForm] = field(default_factory=dict, repr=False)


def _derived_rhs(system: OrientedSystem, index: int, beta: MultiIndex, cache) -> NormalForm:
    key = (index, beta)
    if key in cache:
        return cache[key]
    if not any(beta):
        value = system.equations[index].rhs
    else:
        k = last_nonzero(beta)
        lower = list(beta)
        lower[k] -= 1
        value = total_derivative_nf(_derived_rhs(system, index, tuple(lower), cache), k, system.ctx)
    cache[key] = value
    return value


def reduce_nf(nf: NormalForm, system: OrientedSystem) -> Reduction:
    """Rewrite every derivative of a principal until none is left.

    Each pass replaces all reducible atoms at once, including those
    inside logarithms and denominators; the ranking guarantees the
    replacements only introduce lower-ranked atoms.
    """
    result = Reduction(nf)
    limit = get_config()["reduce_pass_limit"]
    while True:
        bindings = {}
        for atom in _dependent_atoms(result.normal_form, system.ctx):
            found = system.reducer(atom)
            if found is not None:
                bindings[atom] = _derived_rhs(system, found[0], found[1], result.cache)
        if not bindings:
            return result
        result.passes += 1
        result.replaced += len(bindings)
        if result.passes > limit:
            raise JetmapsError(f"reduction exceeded {limit} passes")
        result.normal_form = result.normal_form.substitute(bindings)
        logger.debug(
            "reduction pass %d replaced %d atom(s), %d terms left",
            result.passes,
            len(bindings),
            len(result.normal_form.terms),
        )


def reduce(e: ex.Expr, system: OrientedSystem) -> ex.Expr:
    """Normal form of ``e`` modulo the differential ideal of ``system``."""
    reduced = reduce_nf(normalize(e), system).normal_form
    return ex.ZERO if reduced.is_zero() else reduced.to_expr()


def is_member(e, system: OrientedSystem) -> bool:
    nf = e if isinstance(e, NormalForm) else normalize(e)
    return reduce_nf(nf, system).normal_form.is_zero()
