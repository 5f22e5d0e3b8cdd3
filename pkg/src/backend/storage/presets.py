"""Named geometry presets stored as YAML."""

from __future__ import annotations

from pathlib import Path

import yaml

from utils import ConfigurationError, WSLogger

logger = WSLogger.get_logger(__name__)


def load_presets(path: Path) -> dict[str, dict]:
    """Load the preset table.

    Args:
        path: The YAML file mapping preset names to geometry keys.

    Returns:
        The presets; empty when the file does not exist.

    Raises:
        ConfigurationError: If the file is not a mapping of mappings.
    """
    if not path.exists():
        logger.warning(f"Preset file {path} does not exist.")
        return {}
    try:
        data = yaml.safe_load(path.read_text(encoding="utf-8")) or {}
    except yaml.YAMLError as e:
        raise ConfigurationError("Preset file is not valid YAML", context=str(path)) from e
    if not isinstance(data, dict) or not all(isinstance(v, dict) for v in data.values()):
        raise ConfigurationError("Preset file must map names to geometry tables", context=str(path))
    return data


def get_preset(name: str, path: Path) -> dict:
    """Return a copy of one preset.

    Raises:
        ConfigurationError: If the preset is unknown.
    """
    presets = load_presets(path)
    if name not in presets:
        raise ConfigurationError(f"Unknown geometry preset '{name}'", context={"available": sorted(presets)})
    return dict(presets[name])
