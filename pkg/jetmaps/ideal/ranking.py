# jetmaps/ideal/ranking.py

from dataclasses import dataclass
from typing import List, Optional, Sequence

from jetmaps.algebra import expr as ex
from jetmaps.algebra.atoms import Dependent
from jetmaps.errors import JetmapsError
from jetmaps.jets.context import JetContext


@dataclass(frozen=True)
class Ranking:
    """Total order on derivative atoms of one jet context.

    With a ``lead`` independent the ranking eliminates that direction
    first: more derivatives in ``lead`` always rank higher, then total
    order, then the count in the last-declared independent, and so on.
    ``lead=None`` gives the orderly ranking (total order first).
    Both are compatible with total differentiation, so reduction
    terminates.
    """

    ctx: JetContext
    lead: Optional[int] = None

    def key(self, atom: Dependent) -> tuple:
        alpha = atom.alpha
        lead_count = alpha[self.lead] if self.lead is not None else 0
        return (lead_count, sum(alpha), tuple(reversed(alpha)), self.ctx.dependent_index(atom))

    def highest(self, atoms) -> Dependent:
        return max(atoms, key=self.key)

    def describe(self) -> str:
        if self.lead is None:
            return "orderly"
        return self.ctx.independents[self.lead]


def _last_max(values: Sequence[int]) -> int:
    best = 0
    for k, value in enumerate(values):
        if value >= values[best]:
            best = k
    return best


def infer_ranking(ctx: JetContext, lhs_list: List[ex.Expr], option: Optional[str] = None) -> Ranking:
    """Pick the ranking for a system.

    ``option`` is ``"orderly"`` or the name of an independent. Without it
    the lead is the direction differentiated most in the first equation
    when that equation is written as ``u[...] = ...``; otherwise the
    last-declared independent.
    """
    if option:
        option = option.strip()
        if option == "orderly":
            return Ranking(ctx, None)
        if option in ctx.independents:
            return Ranking(ctx, ctx.independent_index(option))
        raise JetmapsError(f"unknown ranking {option!r}: use 'orderly' or an independent name")
    if lhs_list:
        first = lhs_list[0]
        if isinstance(first, ex.Sym) and isinstance(first.atom, Dependent) and first.atom.order:
            return Ranking(ctx, _last_max(first.atom.alpha))
    return Ranking(ctx, ctx.n - 1)
