from .context import JetContext, MultiIndex, multi_indices, multi_indices_upto, rename_to_context
from .total import (
    jet_of_solution,
    total_derivative,
    total_derivative_multi,
    total_derivative_multi_nf,
    total_derivative_nf,
)

__all__ = [
    "JetContext",
    "MultiIndex",
    "multi_indices",
    "multi_indices_upto",
    "rename_to_context",
    "total_derivative",
    "total_derivative_multi",
    "total_derivative_nf",
    "total_derivative_multi_nf",
    "jet_of_solution",
]
