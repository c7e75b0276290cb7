# jetmaps/config.py

from typing import Any, Dict, Optional

import jetmaps.default_config as default_config
from jetmaps.errors import JetmapsError

# Process-wide settings; callers get copies, never the live dict
_config: Optional[Dict[str, Any]] = None


def initialize_config():
    """Load the defaults unless a configuration is already active."""
    global _config
    if _config is None:
        _config = dict(default_config.DEFAULT_CONFIG)


def set_config(overrides: Dict[str, Any]):
    """Override individual settings; unknown keys are rejected."""
    unknown = sorted(set(overrides) - set(default_config.DEFAULT_CONFIG))
    if unknown:
        raise JetmapsError(f"unknown setting(s): {', '.join(unknown)}")
    initialize_config()
    _config.update(overrides)


def reset_config():
    """Back to the defaults, e.g. between tests."""
    global _config
    _config = None
    initialize_config()


def get_config() -> Dict[str, Any]:
    if _config is None:
        initialize_config()
    return _config.copy()


initialize_config()
