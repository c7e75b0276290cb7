# jetmaps/jets/total.py

"""Total derivatives D_k on jet expressions.

The Expr-level operators never normalize their output. The ``_nf``
variants work directly on normal forms and are what the recurrences
use.
"""

from typing import Dict, List, Optional

from jetmaps.algebra import expr as ex
from jetmaps.algebra.atoms import Atom, Dependent, FuncDeriv, Independent
from jetmaps.algebra.normal_form import ONE, NormalForm
from jetmaps.algebra.ops import normalize
from jetmaps.errors import JetmapsError

from .context import JetContext, MultiIndex, last_nonzero, multi_indices_upto


def atom_total_derivative(atom: Atom, k: int, ctx: JetContext) -> Optional[Atom]:
    """D_k of an atom as another atom, or ``None`` for 0 / 1 cases.

    Independents are handled by the callers since D_k(x_k) = 1.
    """
    name = ctx.independents[k]
    if isinstance(atom, Dependent):
        if atom.coords != ctx.independents:
            raise JetmapsError(f"{atom} does not belong to the jet context")
        return atom.bump(k)
    if isinstance(atom, FuncDeriv) and atom.arg == name:
        return FuncDeriv(atom.name, atom.arg, atom.order + 1)
    return None


def total_derivative(e: ex.Expr, k: int, ctx: JetContext) -> ex.Expr:
    """D_k(e), structurally, without normalizing."""
    name = ctx.independents[k]
    memo: Dict[ex.Expr, ex.Expr] = {}

    def walk(node: ex.Expr) -> ex.Expr:
        cached = memo.get(node)
        if cached is not None:
            return cached
        if isinstance(node, ex.Const):
            result = ex.ZERO
        elif isinstance(node, ex.Sym):
            atom = node.atom
            if isinstance(atom, Independent):
                result = ex.ONE if atom.name == name else ex.ZERO
            else:
                bumped = atom_total_derivative(atom, k, ctx)
                result = ex.Sym(bumped) if bumped is not None else ex.ZERO
        elif isinstance(node, ex.Add):
            result = ex.add(*(walk(t) for t in node.terms))
        elif isinstance(node, ex.Mul):
            terms = []
            for i, factor in enumerate(node.factors):
                d = walk(factor)
                if d == ex.ZERO:
                    continue
                rest = node.factors[:i] + (d,) + node.factors[i + 1:]
                terms.append(ex.mul(*rest))
            result = ex.add(*terms)
        elif isinstance(node, ex.Pow):
            d = walk(node.base)
            if d == ex.ZERO:
                result = ex.ZERO
            else:
                result = ex.mul(ex.Const(node.exp), ex.power(node.base, node.exp - 1), d)
        elif isinstance(node, ex.Log):
            d = walk(node.arg)
            result = ex.ZERO if d == ex.ZERO else ex.mul(d, ex.power(node.arg, -1))
        else:
            raise TypeError(f"unknown expression node {type(node).__name__}")
        memo[node] = result
        return result

    return walk(ex.as_expr(e))


def total_derivative_multi(e: ex.Expr, alpha: MultiIndex, ctx: JetContext) -> ex.Expr:
    for k, count in enumerate(alpha):
        for _ in range(count):
            e = total_derivative(e, k, ctx)
    return e


def total_derivative_nf(nf: NormalForm, k: int, ctx: JetContext) -> NormalForm:
    name = ctx.independents[k]

    def on_atom(atom: Atom) -> Optional[NormalForm]:
        if isinstance(atom, Independent):
            return ONE if atom.name == name else None
        bumped = atom_total_derivative(atom, k, ctx)
        return NormalForm.from_atom(bumped) if bumped is not None else None

    return nf.derive(on_atom)


def total_derivative_multi_nf(nf: NormalForm, alpha: MultiIndex, ctx: JetContext) -> NormalForm:
    for k, count in enumerate(alpha):
        for _ in range(count):
            nf = total_derivative_nf(nf, k, ctx)
    return nf


def jet_of_solution(closed_forms: List[ex.Expr], order: int, ctx: JetContext) -> Dict[Atom, ex.Expr]:
    """Jet of an explicit section u^j = closed_forms[j] up to ``order``.

    Each u^j_alpha is sent to the alpha-derivative of its closed form,
    built incrementally from the derivative one order below.
    """
    if len(closed_forms) != ctx.m:
        raise JetmapsError(f"expected {ctx.m} closed forms, got {len(closed_forms)}")
    assignment: Dict[Atom, ex.Expr] = {}
    for j, closed in enumerate(closed_forms):
        if any(isinstance(a, Dependent) for a in ex.atoms_of(closed)):
            raise JetmapsError("closed forms may only use independents and parameters")
        values: Dict[MultiIndex, NormalForm] = {}
        for alpha in multi_indices_upto(ctx.n, order):
            if not any(alpha):
                values[alpha] = normalize(closed)
            else:
                i = last_nonzero(alpha)
                lower = list(alpha)
                lower[i] -= 1
                values[alpha] = total_derivative_nf(values[tuple(lower)], i, ctx)
            assignment[ctx.jet(j, alpha)] = values[alpha].to_expr()
    return assignment
