# jetmaps/prolongation/lifting.py

import logging
from dataclasses import dataclass, field
from typing import Dict, List, Optional, Tuple

from jetmaps.algebra import expr as ex
from jetmaps.algebra.atoms import Atom, Dependent
from jetmaps.algebra.normal_form import NormalForm, sum_forms
from jetmaps.algebra.ops import normalize, substitute
from jetmaps.errors import JetmapsError, OrderExceeded
from jetmaps.jets.context import JetContext, last_nonzero, multi_indices
from jetmaps.jets.total import total_derivative_nf

from .matrix import Matrix, symbolic_inverse_nf, total_jacobian_nf

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class Mapping:
    """A mapping of jet spaces given by its components.

    ``f[i]`` is the i-th target independent and ``g[j]`` the j-th target
    dependent, both as expressions over the source jet space.
    """

    source: JetContext
    target: JetContext
    f: Tuple[ex.Expr, ...]
    g: Tuple[ex.Expr, ...]

    def __post_init__(self):
        if len(self.f) != self.target.n or len(self.g) != self.target.m:
            raise JetmapsError("mapping components do not match the target context")
        if self.source.n != self.target.n or self.source.m != self.target.m:
            raise JetmapsError("source and target must have the same n and m")

    @classmethod
    def identity(cls, source: JetContext, target: JetContext) -> "Mapping":
        f = tuple(ex.Sym(source.independent(i)) for i in range(source.n))
        g = tuple(ex.Sym(source.jet(j)) for j in range(source.m))
        return cls(source, target, f, g)


@dataclass
class LiftedMapping:
    base: Mapping
    order: int
    components: Dict[Dependent, NormalForm]
    df: Matrix
    df_inverse: Matrix
    df_det: NormalForm
    f_forms: Tuple[NormalForm, ...] = field(default=())

    def component(self, atom: Dependent) -> ex.Expr:
        return self.components[atom].to_expr()

    def bindings(self) -> Dict[Atom, NormalForm]:
        """Target atom -> source normal form, for pullbacks."""
        values: Dict[Atom, NormalForm] = dict(self.components)
        for i, f in enumerate(self.f_forms):
            values[self.base.target.independent(i)] = f
        return values

    def listing(self) -> List[Tuple[Dependent, NormalForm]]:
        """Components in jet order, independents excluded."""
        return [(atom, self.components[atom]) for atom in self.base.target.jet_atoms(self.order)]


def lift(mapping: Mapping, order: int) -> LiftedMapping:
    """Prolong ``mapping`` to target jets of total order ``order``.

    Each new component solves D_i(v_alpha) = sum_k Df[i][k] v_{alpha+1_k}
    for the target direction k last used in the multi-index, and is
    normalized once per order.

    Raises:
        SingularMatrix: Df is identically singular.
    """
    if order < 0:
        raise JetmapsError("lift order must be non-negative")
    source, target = mapping.source, mapping.target
    f_forms = tuple(normalize(f) for f in mapping.f)
    df = total_jacobian_nf(f_forms, source)
    inverse, det = symbolic_inverse_nf(df)

    components: Dict[Dependent, NormalForm] = {}
    for j, g in enumerate(mapping.g):
        components[target.jet(j)] = normalize(g)
    # memoized total derivatives D_i(v_alpha), per lift call
    derivatives: Dict[Tuple[Dependent, int], NormalForm] = {}

    def d(atom: Dependent, i: int) -> NormalForm:
        key = (atom, i)
        if key not in derivatives:
            derivatives[key] = total_derivative_nf(components[atom], i, source)
        return derivatives[key]

    for q in range(1, order + 1):
        for j in range(target.m):
            for beta in multi_indices(target.n, q):
                k = last_nonzero(beta)
                lower = list(beta)
                lower[k] -= 1
                parent = target.jet(j, tuple(lower))
                components[target.jet(j, beta)] = sum_forms(
                    inverse[k][i] * d(parent, i) for i in range(source.n)
                )
        logger.debug("lifted to order %d: %d components", q, len(components))
    return LiftedMapping(mapping, order, components, df, inverse, det, f_forms)


def _check_order(lifted: LiftedMapping, atoms) -> None:
    target = lifted.base.target
    for atom in atoms:
        if isinstance(atom, Dependent) and target.owns(atom) and atom.order > lifted.order:
            raise OrderExceeded(
                f"{atom} needs order {atom.order}, the mapping is lifted to {lifted.order}"
            )


def pullback_nf(lifted: LiftedMapping, target_expr) -> NormalForm:
    nf = target_expr if isinstance(target_expr, NormalForm) else normalize(target_expr)
    _check_order(lifted, nf.atoms())
    return nf.substitute(lifted.bindings())


def pullback(lifted: LiftedMapping, target_expr: ex.Expr) -> ex.Expr:
    """Replace every target atom by its lifted component, simultaneously.

    Raises:
        OrderExceeded: the expression uses derivatives above the lifted order.
    """
    _check_order(lifted, ex.atoms_of(target_expr))
    values = {atom: nf.to_expr() for atom, nf in lifted.bindings().items()}
    return substitute(target_expr, values)


@dataclass(frozen=True)
class ContactResidual:
    atom: Dependent
    direction: str
    residual: NormalForm


@dataclass
class ContactCheck:
    residuals: List[ContactResidual]

    @property
    def ok(self) -> bool:
        return all(entry.residual.is_zero() for entry in self.residuals)

    def failures(self) -> List[ContactResidual]:
        return [entry for entry in self.residuals if not entry.residual.is_zero()]


def verify_contact(lifted: LiftedMapping, components: Optional[Dict[Dependent, NormalForm]] = None) -> ContactCheck:
    """Residuals D_i(v_alpha) - sum_k Df[i][k] v_{alpha+1_k} for |alpha| < order.

    ``components`` overrides the lifted ones, which is how corrupted
    lifts are checked.
    """
    source, target = lifted.base.source, lifted.base.target
    values = components if components is not None else lifted.components
    residuals = []
    for q in range(lifted.order):
        for j in range(target.m):
            for alpha in multi_indices(target.n, q):
                atom = target.jet(j, alpha)
                for i in range(source.n):
                    lhs = total_derivative_nf(values[atom], i, source)
                    rhs = sum_forms(
                        lifted.df[i][k] * values[atom.bump(k)] for k in range(target.n)
                    )
                    residuals.append(ContactResidual(atom, source.independents[i], lhs - rhs))
    return ContactCheck(residuals)
