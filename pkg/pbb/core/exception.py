"""Configuration exceptions used by pbb"""

from typing import Self

from pydantic import BaseModel, ValidationError


class ConfigError(BaseModel):
    """A single rejected configuration value"""

    message: str
    location: str | None = None

    def __str__(self) -> str:
        """Renders the error with its location prefix"""
        return self.message if self.location is None else f'{self.location}: {self.message}'


class ConfigException(ValueError):
    """Raised when a budget, certificate file or seeds file cannot be resolved"""

    def __init__(self, message: str, errors: list[ConfigError]):
        """Initializes the exception

        Args:
            message: Summary of what was being resolved
            errors: The individual rejected values
        """
        detail = '; '.join(str(error) for error in errors)
        super().__init__(f'{message}: {detail}' if detail else message)
        self._errors = errors

    @classmethod
    def from_validation(cls, message: str, error: ValidationError) -> Self:
        """Wraps a pydantic validation failure

        Args:
            message: Summary of what was being resolved
            error: The pydantic error

        Returns:
            The equivalent configuration exception
        """
        errors = [
            ConfigError(message=entry['msg'], location='.'.join(str(part) for part in entry['loc']) or None)
            for entry in error.errors()
        ]
        return cls(message, errors)

    @property
    def error_count(self) -> int:
        """The number of configuration errors associated with this exception"""
        return len(self._errors)

    @property
    def errors(self) -> list[ConfigError]:
        """The list of configuration errors"""
        return self._errors
