# jetmaps/algebra/atoms.py

from dataclasses import dataclass
from typing import Tuple


class Atom:
    """Indivisible coordinate of an expression.

    Atoms are identified by name, so two contexts that declare the same
    names share atoms. ``sort_key`` gives the canonical order used by
    normal forms and printing.
    """

    kind_rank = 0

    def sort_key(self) -> tuple:
        raise NotImplementedError

    def __lt__(self, other: "Atom") -> bool:
        return self.sort_key() < other.sort_key()


@dataclass(frozen=True, eq=True)
class Independent(Atom):
    name: str

    kind_rank = 0

    def sort_key(self) -> tuple:
        return (self.kind_rank, self.name)

    def __str__(self) -> str:
        return self.name


@dataclass(frozen=True, eq=True)
class Dependent(Atom):
    """Jet coordinate u^j_alpha.

    ``alpha`` counts derivatives per independent variable, in the order
    given by ``coords`` (the declaring context's independents).
    """

    name: str
    alpha: Tuple[int, ...]
    coords: Tuple[str, ...]

    kind_rank = 1

    def __post_init__(self):
        if len(self.alpha) != len(self.coords):
            raise ValueError(
                f"multi-index {self.alpha} does not match independents {self.coords}"
            )
        if any(a < 0 for a in self.alpha):
            raise ValueError(f"negative multi-index entry in {self.alpha}")

    @property
    def order(self) -> int:
        return sum(self.alpha)

    def bump(self, k: int, times: int = 1) -> "Dependent":
        alpha = list(self.alpha)
        alpha[k] += times
        return Dependent(self.name, tuple(alpha), self.coords)

    def with_alpha(self, alpha: Tuple[int, ...]) -> "Dependent":
        return Dependent(self.name, tuple(alpha), self.coords)

    def sort_key(self) -> tuple:
        return (self.kind_rank, self.name, self.order, tuple(-a for a in self.alpha))

    def __str__(self) -> str:
        if self.order == 0:
            return self.name
        letters = []
        for coord, count in zip(self.coords, self.alpha):
            letters.extend([coord] * count)
        return f"{self.name}[{','.join(letters)}]"


@dataclass(frozen=True, eq=True)
class Parameter(Atom):
    name: str

    kind_rank = 2

    def sort_key(self) -> tuple:
        return (self.kind_rank, self.name)

    def __str__(self) -> str:
        return self.name


@dataclass(frozen=True, eq=True)
class FuncDeriv(Atom):
    """k-th derivative of a declared unknown function of one independent."""

    name: str
    arg: str
    order: int = 0

    kind_rank = 3

    def __post_init__(self):
        if self.order < 0:
            raise ValueError("function derivative order must be non-negative")

    def sort_key(self) -> tuple:
        return (self.kind_rank, self.name, self.order)

    def __str__(self) -> str:
        if self.order <= 3:
            return f"{self.name}{chr(39) * self.order}({self.arg})"
        return f"diff({self.name},{self.arg},{self.order})"
