from .param_mapping import (
    ParamMapping,
    build_param_mapping,
    param_contact_residuals,
    prolong_param,
    series_substitute_residual,
    series_substitute_residuals,
)
from .series import ParamSeries, expand_in_parameter
from .symmetry import (
    flow_ode_residual,
    h_condition,
    initial_values,
    verify_h_condition,
    verify_param_symmetry,
)

__all__ = [
    "ParamSeries",
    "expand_in_parameter",
    "ParamMapping",
    "build_param_mapping",
    "prolong_param",
    "param_contact_residuals",
    "series_substitute_residual",
    "series_substitute_residuals",
    "h_condition",
    "verify_h_condition",
    "verify_param_symmetry",
    "flow_ode_residual",
    "initial_values",
]
