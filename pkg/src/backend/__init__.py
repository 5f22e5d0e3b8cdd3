"""Backend package initialisation."""

from .config import (
    DEFAULT_MESH_SIZE,
    DEFAULT_PRECISION,
    PRESETS_PATH,
    WORKERS,
    get_config,
    validate_config,
)
from .run_config import RunConfig, load_run_config, parse_run_config

__all__ = [
    "DEFAULT_MESH_SIZE",
    "DEFAULT_PRECISION",
    "PRESETS_PATH",
    "RunConfig",
    "WORKERS",
    "get_config",
    "load_run_config",
    "parse_run_config",
    "validate_config",
]
