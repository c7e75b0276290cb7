from .lifting import (
    ContactCheck,
    LiftedMapping,
    Mapping,
    lift,
    pullback,
    pullback_nf,
    verify_contact,
)
from .matrix import symbolic_inverse, total_jacobian

__all__ = [
    "Mapping",
    "LiftedMapping",
    "ContactCheck",
    "lift",
    "pullback",
    "pullback_nf",
    "verify_contact",
    "symbolic_inverse",
    "total_jacobian",
]
