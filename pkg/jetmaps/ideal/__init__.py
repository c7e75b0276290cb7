from .ranking import Ranking, infer_ranking
from .reduction import (
    OrientedEquation,
    OrientedSystem,
    Reduction,
    is_member,
    orient,
    reduce,
    reduce_nf,
)
from .verification import (
    DeterminingEquation,
    determining_equations,
    verify_solution_map,
    verify_symmetry,
)

__all__ = [
    "Ranking",
    "infer_ranking",
    "OrientedEquation",
    "OrientedSystem",
    "Reduction",
    "orient",
    "reduce",
    "reduce_nf",
    "is_member",
    "DeterminingEquation",
    "determining_equations",
    "verify_solution_map",
    "verify_symmetry",
]
