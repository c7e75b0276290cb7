import os

from typing_extensions import TypedDict


class JetmapsConfig(TypedDict):
    spot_checks: int
    seed: int
    float_tolerance: float
    max_matrix_size: int
    max_clearing_rounds: int
    reduce_pass_limit: int
    default_trunc: int
    log_level: str


DEFAULT_CONFIG: JetmapsConfig = {
    # Report settings
    "spot_checks": 3,
    "seed": int(os.getenv("JETMAPS_SEED", "0")),
    "float_tolerance": 1e-9,
    # Algebra limits
    "max_matrix_size": 4,
    "max_clearing_rounds": 64,
    "reduce_pass_limit": 10000,
    # Series settings
    "default_trunc": 6,
    # Logging
    "log_level": os.getenv("JETMAPS_LOG_LEVEL", "WARNING"),
}
