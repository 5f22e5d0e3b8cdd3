"""List of custom exceptions for the waveguide toolkit."""

import logging
from typing import Any


class ApplicationError(Exception):
    """
    Base class for application errors.

    Attributes:
        context: Additional context about the error.
    """

    LOG_LEVEL = "error"
    EXIT_CODE = 1

    def __init__(self, message: str | None = None, context: Any = None) -> None:
        """Initialise ApplicationError.

        Args:
            message: An optional error message.
            context: Additional context about the error.
        """
        super().__init__(message)
        self.context = context

    def _log(self) -> None:
        """Log the error details."""
        logger = logging.getLogger(__name__)
        log_func = getattr(logger, self.LOG_LEVEL)
        log_func(f"{self.__class__.__name__}: {self} (context: {self.context})")

    def handle(self) -> None:
        """Handle the error."""
        self._log()


class ConfigurationError(ApplicationError):
    """Raised for run-config and environment configuration errors."""

    LOG_LEVEL = "error"
    EXIT_CODE = 2


class InvalidInputError(ApplicationError):
    """Raised when an operation's precondition is violated."""

    LOG_LEVEL = "error"
    EXIT_CODE = 2


class GeometryError(ApplicationError):
    """Raised for invalid cross-sections, meshes and out-of-domain points."""

    LOG_LEVEL = "error"
    EXIT_CODE = 2


class SolverError(ApplicationError):
    """Raised when an eigensolver or linear solve cannot be trusted."""

    LOG_LEVEL = "error"
    EXIT_CODE = 3


class ThresholdError(ApplicationError):
    """Raised when a frequency sits on (or numerically next to) a threshold."""

    LOG_LEVEL = "warning"
    EXIT_CODE = 3


class IncompatibleSourceError(ApplicationError):
    """Raised when a source violates the compatibility conditions."""

    LOG_LEVEL = "error"
    EXIT_CODE = 3


class SupportViolationError(ApplicationError):
    """Raised when a supported field leaves the cylindrical part of a guide."""

    LOG_LEVEL = "error"
    EXIT_CODE = 3


class ExportError(ApplicationError):
    """Raised when an export cannot be written or read back."""

    LOG_LEVEL = "error"
    EXIT_CODE = 3


class EmptyBandError(ApplicationError):
    """Raised when threshold skipping leaves no frequency to sweep."""

    LOG_LEVEL = "warning"
    EXIT_CODE = 4
