"""
Unit tests for settings and error formatting
"""

import pytest
from pydantic import ValidationError as PydanticValidationError

from resurf.config import Settings, configure, get_settings
from resurf.core.exceptions import (
    ErrorHandler,
    InconsistentSurfaceError,
    InvalidPencilError,
    NotEllipticError,
    NotRealizableError,
    ParseError,
    ValidationError,
)


class TestSettings:
    """Test settings validation."""

    def test_defaults(self):
        """Test default values."""
        settings = Settings()
        assert settings.output_format == "json"
        assert settings.log_level == "WARNING"
        assert settings.json_indent is None

    def test_log_level_normalized(self):
        """Test case-insensitive log levels."""
        assert Settings(log_level="debug").log_level == "DEBUG"

    @pytest.mark.parametrize(
        "overrides",
        [
            {"output_format": "xml"},
            {"log_level": "LOUD"},
            {"max_smooth_samples": 12},
            {"chart_search_radius": 0},
            {"database_url": "sqlite://"},
        ],
    )
    def test_invalid(self, overrides):
        """Test rejected values and unknown keys."""
        with pytest.raises(PydanticValidationError):
            Settings(**overrides)

    def test_environment_is_ignored(self, monkeypatch):
        """Test that settings only come from explicit overrides."""
        monkeypatch.setenv("OUTPUT_FORMAT", "summary")
        assert Settings().output_format == "json"

    def test_configure_replaces_global(self):
        """Test the module-level settings instance."""
        configure(output_format="summary", json_indent=2)
        assert get_settings().output_format == "summary"
        assert get_settings().json_indent == 2
        configure()
        assert get_settings().output_format == "json"


class TestErrorHandler:
    """Test exit codes and error payloads."""

    @pytest.mark.parametrize(
        "exc,code",
        [
            (ParseError("Unexpected token", "t +", 3), 2),
            (ValidationError("bad arity"), 2),
            (InvalidPencilError("common factor"), 3),
            (NotEllipticError("zero discriminant"), 4),
            (InconsistentSurfaceError("euler sum"), 5),
            (NotRealizableError("table miss"), 5),
        ],
    )
    def test_exit_codes(self, exc, code):
        """Test the exit code of every error kind."""
        assert exc.exit_code == code
        assert ErrorHandler.handle_exception(exc)["code"] == code

    def test_payload(self):
        """Test the error JSON shape."""
        payload = ErrorHandler.handle_exception(
            InconsistentSurfaceError("Euler sum 6", error_code="euler_sum")
        )
        assert payload == {"error": "Euler sum 6", "details": "euler_sum", "code": 5}

    def test_parse_error_caret(self):
        """Test the caret under the offending character."""
        exc = ParseError("Unknown variable 's'", "t + s", 4)
        assert exc.message.endswith("t + s\n      ^")
        assert exc.details == {"position": 4, "text": "t + s"}
