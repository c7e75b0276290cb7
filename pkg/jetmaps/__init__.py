"""Exact lifting of contact mappings and their verification against PDE systems."""

from jetmaps.config import get_config, reset_config, set_config
from jetmaps.errors import JetmapsError
from jetmaps.report import Report, Verdict

__version__ = "0.1.0"

__all__ = ["JetmapsError", "Report", "Verdict", "get_config", "set_config", "reset_config"]
