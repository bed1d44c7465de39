"""
Error Handlers
Map exceptions to process exit codes and one-line JSON error reports
"""

import json
import logging
import sys
from typing import IO, Optional

from pydantic import ValidationError

from src.utils.errors import ConfigError, GaaviError, OutOfRange, ParseError, StreamKindMismatch

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_FAILURE = 1
EXIT_USAGE = 2

_USAGE_ERRORS = (ParseError, ConfigError, OutOfRange, StreamKindMismatch)


def _report(payload: dict, stream: Optional[IO[str]]) -> None:
    stream = stream or sys.stderr
    stream.write(json.dumps({"success": False, "error": payload}) + "\n")


def handle_exception(exc: BaseException, stream: Optional[IO[str]] = None) -> int:
    """
    Report `exc` on stderr and return the exit code

    Input and configuration problems exit with 2, other domain errors and
    unexpected failures with 1.
    """
    if isinstance(exc, ValidationError):
        details = [
            {
                "field": ".".join(str(loc) for loc in error["loc"]),
                "message": error["msg"],
                "type": error["type"],
            }
            for error in exc.errors()
        ]
        logger.warning(f"Validation error: {details}")
        _report({"code": "VALIDATION_ERROR", "message": "Configuration validation failed", "details": details}, stream)
        return EXIT_USAGE

    if isinstance(exc, _USAGE_ERRORS):
        logger.warning(f"{exc.code}: {exc.message}")
        _report(exc.to_dict(), stream)
        return EXIT_USAGE

    if isinstance(exc, GaaviError):
        logger.error(f"{exc.code}: {exc.message}")
        _report(exc.to_dict(), stream)
        return EXIT_FAILURE

    logger.error(f"Unhandled exception: {exc}", exc_info=exc)
    _report({"code": "INTERNAL_ERROR", "message": "An unexpected error occurred", "details": str(exc)}, stream)
    return EXIT_FAILURE
