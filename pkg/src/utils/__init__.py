"""Utilities module."""

from .errors import (
    ApplicationError,
    ConfigurationError,
    EmptyBandError,
    ExportError,
    GeometryError,
    IncompatibleSourceError,
    InvalidInputError,
    SolverError,
    SupportViolationError,
    ThresholdError,
)
from .logging import WSLogger
from .text import format_real, round_real

__all__ = [
    "ApplicationError",
    "ConfigurationError",
    "EmptyBandError",
    "ExportError",
    "GeometryError",
    "IncompatibleSourceError",
    "InvalidInputError",
    "SolverError",
    "SupportViolationError",
    "ThresholdError",
    "WSLogger",
    "format_real",
    "round_real",
]
