"""
Configuration settings for the toolkit.
Includes worker pool size, preset paths and numerical defaults.
"""

import os
from pathlib import Path

from dotenv import load_dotenv

from utils import ConfigurationError

PROJECT_ROOT = Path(__file__).parent.parent.parent

load_dotenv(PROJECT_ROOT / ".env")


# Sweep execution

WORKERS = int(os.getenv("WORKERS", "4"))

# Geometry presets

PRESETS_PATH = Path(os.getenv("PRESETS_PATH", str(PROJECT_ROOT / "data/presets/geometries.yaml")))

# Numerical defaults

DEFAULT_PRECISION = int(os.getenv("DEFAULT_PRECISION", "12"))
DEFAULT_MESH_SIZE = float(os.getenv("DEFAULT_MESH_SIZE", "0.05"))

PRECISION_RANGE = (6, 17)


def validate_config() -> None:
    """
    Validate the environment configuration.

    Raises:
        ConfigurationError: If a setting is out of range.
    """
    if WORKERS < 1:
        raise ConfigurationError("WORKERS must be at least 1", context="WORKERS")
    lo, hi = PRECISION_RANGE
    if not lo <= DEFAULT_PRECISION <= hi:
        raise ConfigurationError(f"DEFAULT_PRECISION must lie in {lo}..{hi}", context="DEFAULT_PRECISION")
    if not DEFAULT_MESH_SIZE > 0.0:
        raise ConfigurationError("DEFAULT_MESH_SIZE must be positive", context="DEFAULT_MESH_SIZE")


def get_config() -> dict:
    """
    Get the current configuration settings.

    Returns:
        A dictionary of configuration settings.
    """
    validate_config()
    return {
        "WORKERS": WORKERS,
        "PRESETS_PATH": str(PRESETS_PATH),
        "DEFAULT_PRECISION": DEFAULT_PRECISION,
        "DEFAULT_MESH_SIZE": DEFAULT_MESH_SIZE,
        "PRECISION_RANGE": tuple(PRECISION_RANGE),
    }
