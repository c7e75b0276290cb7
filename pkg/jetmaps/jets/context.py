# jetmaps/jets/context.py

from dataclasses import dataclass, field
from itertools import combinations_with_replacement
from typing import Dict, Iterator, Optional, Tuple

from jetmaps.algebra import expr as ex
from jetmaps.algebra.atoms import Atom, Dependent, FuncDeriv, Independent, Parameter
from jetmaps.algebra.ops import substitute
from jetmaps.errors import JetmapsError

MultiIndex = Tuple[int, ...]


def multi_indices(n: int, order: int) -> Iterator[MultiIndex]:
    """All multi-indices of length ``n`` with total order exactly ``order``."""
    for combo in combinations_with_replacement(range(n), order):
        alpha = [0] * n
        for k in combo:
            alpha[k] += 1
        yield tuple(alpha)


def multi_indices_upto(n: int, order: int) -> Iterator[MultiIndex]:
    for q in range(order + 1):
        yield from multi_indices(n, q)


def unit(n: int, k: int) -> MultiIndex:
    return tuple(1 if i == k else 0 for i in range(n))


def last_nonzero(alpha: MultiIndex) -> int:
    for k in range(len(alpha) - 1, -1, -1):
        if alpha[k]:
            return k
    raise ValueError("zero multi-index has no nonzero entry")


@dataclass(frozen=True)
class JetContext:
    """Declared names of one jet space.

    Independent order is declaration order; multi-indices are built
    against it.
    """

    independents: Tuple[str, ...]
    dependents: Tuple[str, ...]
    parameters: Tuple[str, ...] = ()
    functions: Dict[str, str] = field(default_factory=dict, compare=False, hash=False)

    def __post_init__(self):
        if not self.independents:
            raise JetmapsError("at least one independent variable is required")
        if not self.dependents:
            raise JetmapsError("at least one dependent variable is required")
        names = (
            list(self.independents)
            + list(self.dependents)
            + list(self.parameters)
            + list(self.functions)
        )
        seen = set()
        for name in names:
            if name in seen:
                raise JetmapsError(f"name {name!r} declared twice")
            seen.add(name)
        for fname, arg in self.functions.items():
            if arg not in self.independents:
                raise JetmapsError(
                    f"function {fname} must take an independent variable, not {arg!r}"
                )

    @property
    def n(self) -> int:
        return len(self.independents)

    @property
    def m(self) -> int:
        return len(self.dependents)

    def independent(self, i: int) -> Independent:
        return Independent(self.independents[i])

    def independent_index(self, name: str) -> int:
        return self.independents.index(name)

    def jet(self, j: int, alpha: Optional[MultiIndex] = None) -> Dependent:
        alpha = tuple(alpha) if alpha is not None else (0,) * self.n
        return Dependent(self.dependents[j], alpha, self.independents)

    def jet_by_name(self, name: str, alpha: Optional[MultiIndex] = None) -> Dependent:
        return self.jet(self.dependents.index(name), alpha)

    def dependent_index(self, atom: Dependent) -> int:
        return self.dependents.index(atom.name)

    def parameter(self, name: str) -> Parameter:
        if name not in self.parameters:
            raise JetmapsError(f"{name!r} is not a declared parameter")
        return Parameter(name)

    def function(self, name: str, order: int = 0) -> FuncDeriv:
        return FuncDeriv(name, self.functions[name], order)

    def jet_atoms(self, order: int) -> Iterator[Dependent]:
        """Every u^j_alpha with |alpha| <= order, lowest order first."""
        for q in range(order + 1):
            for j in range(self.m):
                for alpha in multi_indices(self.n, q):
                    yield self.jet(j, alpha)

    def owns(self, atom: Atom) -> bool:
        if isinstance(atom, Independent):
            return atom.name in self.independents
        if isinstance(atom, Dependent):
            return atom.name in self.dependents and atom.coords == self.independents
        if isinstance(atom, Parameter):
            return atom.name in self.parameters
        if isinstance(atom, FuncDeriv):
            return self.functions.get(atom.name) == atom.arg
        return False


def rename_to_context(e: ex.Expr, source: JetContext, target: JetContext) -> ex.Expr:
    """Rename source coordinates positionally into the target context."""
    if source.n != target.n or source.m != target.m:
        raise JetmapsError("contexts differ in the number of variables")
    bindings: Dict[Atom, ex.Expr] = {}
    for atom in ex.atoms_of(e):
        if isinstance(atom, Independent) and atom.name in source.independents:
            i = source.independent_index(atom.name)
            bindings[atom] = ex.Sym(target.independent(i))
        elif isinstance(atom, Dependent) and atom.name in source.dependents:
            j = source.dependent_index(atom)
            bindings[atom] = ex.Sym(target.jet(j, atom.alpha))
    return substitute(e, bindings)
