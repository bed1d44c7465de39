"""
Error Types
Exception hierarchy shared by all modules
"""

from typing import Any, Dict, Iterable, Optional


class GaaviError(Exception):
    """Base class for all domain errors"""

    code = "GAAVI_ERROR"

    def __init__(self, message: str, details: Optional[Dict[str, Any]] = None):
        super().__init__(message)
        self.message = message
        self.details = details or {}

    def to_dict(self) -> Dict[str, Any]:
        """Serializable error payload"""
        return {
            "code": self.code,
            "message": self.message,
            "details": self.details,
        }


class OutOfRange(GaaviError):
    """One or more configuration fields violate their range constraints"""

    code = "OUT_OF_RANGE"

    def __init__(self, fields: Iterable[str], message: Optional[str] = None):
        self.fields = list(fields)
        self.field = self.fields[0] if self.fields else None
        super().__init__(
            message or f"Out of range: {', '.join(self.fields)}",
            {"fields": self.fields},
        )


class InvalidInput(GaaviError):
    code = "INVALID_INPUT"


class DimensionMismatch(GaaviError):
    code = "DIMENSION_MISMATCH"

    def __init__(self, expected: int, got: int):
        super().__init__(
            f"Expected dimension {expected}, got {got}",
            {"expected": expected, "got": got},
        )


class BoundViolated(GaaviError):
    code = "BOUND_VIOLATED"

    def __init__(self, value: float, bound: float):
        super().__init__(
            f"|f(x)| = {abs(value)} exceeds declared bound {bound}",
            {"value": value, "bound": bound},
        )


class StreamKindMismatch(GaaviError):
    code = "STREAM_KIND_MISMATCH"


class ParseError(GaaviError):
    """Malformed stream input; line numbers are 1-based and count the header"""

    code = "PARSE_ERROR"

    def __init__(self, line: int, reason: str):
        self.line = line
        self.reason = reason
        super().__init__(f"line {line}: {reason}", {"line": line, "reason": reason})


class ConfigError(GaaviError):
    code = "CONFIG_ERROR"
