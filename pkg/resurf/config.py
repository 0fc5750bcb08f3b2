"""
Configuration management for resurf
"""

from pydantic import Field, field_validator
from pydantic_settings import (
    BaseSettings,
    PydanticBaseSettingsSource,
    SettingsConfigDict,
)


class Settings(BaseSettings):
    """Application settings, populated from command line flags only."""

    model_config = SettingsConfigDict(validate_default=True, extra="forbid")

    # Application
    app_name: str = "resurf"
    version: str = "0.1.0"
    log_level: str = Field(default="WARNING")
    # Output
    output_format: str = Field(default="json")
    json_indent: int | None = Field(default=None)
    # Elimination
    chart_search_radius: int = Field(default=2, ge=1)
    max_smooth_samples: int = Field(default=13)

    @field_validator("output_format")
    @classmethod
    def validate_output_format(cls, v: str) -> str:
        if v not in ("json", "summary"):
            raise ValueError("output_format must be 'json' or 'summary'")
        return v

    @field_validator("log_level")
    @classmethod
    def validate_log_level(cls, v: str) -> str:
        level = v.upper()
        if level not in ("DEBUG", "INFO", "WARNING", "ERROR", "CRITICAL"):
            raise ValueError(f"Unknown log level: {v}")
        return level

    @field_validator("max_smooth_samples")
    @classmethod
    def validate_smooth_samples(cls, v: int) -> int:
        # the pencil discriminant has degree at most 12
        if v < 13:
            raise ValueError("max_smooth_samples must be at least 13")
        return v

    @classmethod
    def settings_customise_sources(
        cls,
        settings_cls: type[BaseSettings],
        init_settings: PydanticBaseSettingsSource,
        env_settings: PydanticBaseSettingsSource,
        dotenv_settings: PydanticBaseSettingsSource,
        file_secret_settings: PydanticBaseSettingsSource,
    ) -> tuple[PydanticBaseSettingsSource, ...]:
        return (init_settings,)


# Global settings instance
settings = Settings()


def get_settings() -> Settings:
    """Get the active settings instance."""
    return settings


def configure(**overrides: object) -> Settings:
    """Replace the global settings with values taken from command line flags."""
    global settings
    settings = Settings(**overrides)  # type: ignore[arg-type]
    return settings
