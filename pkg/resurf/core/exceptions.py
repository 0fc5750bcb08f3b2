"""
Custom exceptions for resurf
"""

from typing import Any

import structlog

logger = structlog.get_logger()


class ResurfException(Exception):
    """Base exception for the resurf library."""

    exit_code = 1

    def __init__(
        self,
        message: str,
        error_code: str | None = None,
        details: dict[str, Any] | None = None,
    ):
        self.message = message
        self.error_code = error_code
        self.details = details or {}
        super().__init__(self.message)


class ParseError(ResurfException):
    """Raised when text input does not match the polynomial grammar."""

    exit_code = 2

    def __init__(self, message: str, text: str = "", position: int = 0):
        caret = f"\n  {text}\n  {' ' * position}^" if text else ""
        super().__init__(
            f"{message} at position {position}{caret}",
            error_code="parse_error",
            details={"position": position, "text": text},
        )
        self.position = position


class ValidationError(ResurfException):
    """Raised when input data has the wrong shape, arity or range."""

    exit_code = 2


class ArithmeticDomainError(ResurfException):
    """Raised when an exact arithmetic operation is outside its domain."""

    exit_code = 2


class InvalidPencilError(ResurfException):
    """Raised when two cubics do not span a valid pencil."""

    exit_code = 3


class NotEllipticError(ResurfException):
    """Raised when a Weierstrass model has identically zero discriminant."""

    exit_code = 4


class InconsistentSurfaceError(ResurfException):
    """Raised when a model is not a rational elliptic surface."""

    exit_code = 5


class NotRealizableError(InconsistentSurfaceError):
    """Raised when a trivial lattice is missing from the classification table."""


class EliminationError(ResurfException):
    """Raised when exact elimination cannot certify its result."""

    exit_code = 5


class ErrorHandler:
    @staticmethod
    def handle_exception(exc: ResurfException) -> dict[str, Any]:
        logger.error(
            "Command failed",
            error=exc.message,
            error_code=exc.error_code,
            exit_code=exc.exit_code,
        )
        return ErrorHandler.format_error(
            exc.message, details=exc.error_code, code=exc.exit_code
        )

    @staticmethod
    def format_error(
        message: str, details: str | None = None, code: int = 2
    ) -> dict[str, Any]:
        return {"error": message, "details": details, "code": code}
