import logging

from pydantic import ValidationError

from app.errors import CapExceededError, StorageError

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_CAP_EXCEEDED = 2
EXIT_IO = 3


class CommandError(Exception):
    """A failed command: the process exits with ``exit_code`` after printing ``detail``."""

    def __init__(self, exit_code: int, detail: str):
        super().__init__(detail)
        self.exit_code = exit_code
        self.detail = detail


def command_error(e: Exception, action: str) -> CommandError:
    """Translate a domain failure into the exit code the CLI reports."""
    if isinstance(e, CommandError):
        return e
    if isinstance(e, CapExceededError):
        return CommandError(EXIT_CAP_EXCEEDED, f"{action}: {e}")
    if isinstance(e, (StorageError, OSError)):
        return CommandError(EXIT_IO, f"{action}: {e}")
    if isinstance(e, ValidationError):
        return CommandError(EXIT_USAGE, f"{action}: invalid input: {e}")
    if isinstance(e, ValueError):
        return CommandError(EXIT_USAGE, f"{action}: {e}")
    logger.exception(f"Unexpected failure during {action}")
    return CommandError(EXIT_USAGE, f"Failed to {action}")
