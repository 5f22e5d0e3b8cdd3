"""Centralised error handling for the toolkit."""

from utils import ApplicationError, ConfigurationError, WSLogger

logger = WSLogger.get_logger(__name__)


def handle_error(error: Exception) -> int:
    """Handle errors by logging them and returning an exit code.

    Args:
        error: The exception to handle.

    Returns:
        The error's EXIT_CODE for application errors (2 for configuration and
        input problems, 3 for solver problems, 4 for an empty sweep band),
        1 for unexpected errors.
    """
    if isinstance(error, ConfigurationError):
        error.handle()
        logger.critical("Configuration error - exiting")
        return error.EXIT_CODE

    elif isinstance(error, ApplicationError):
        error.handle()
        return error.EXIT_CODE

    else:
        logger.exception("Unhandled exception")
        return 1
