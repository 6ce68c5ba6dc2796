"""Exceptions for the power index process package."""

from __future__ import annotations


class PowerIndexError(Exception):
    """Base exception for power index process errors."""


class InvalidSizeError(PowerIndexError):
    """A generator or sweep was asked for an unsupported size."""


class InvalidVertexError(PowerIndexError):
    """A vertex id is out of range."""


class InvalidWinConditionError(PowerIndexError):
    """Win condition is not an exact fraction in [1/2, 1)."""


class InvalidConfigurationError(PowerIndexError):
    """Configuration text or bits are malformed."""


class ConfigurationLengthError(InvalidConfigurationError):
    """Configuration length does not match the graph."""


class GraphParseError(PowerIndexError):
    """Graph text could not be parsed."""

    def __init__(self, message: str, line: int | None = None) -> None:
        """Initialise the error with an optional 1-based line number."""
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)
        self.line = line


class InfiniteDiameterError(PowerIndexError):
    """Graph is disconnected."""


class LabelError(PowerIndexError):
    """Graph does not carry the role labels an operation needs."""


class InvalidWaveError(PowerIndexError):
    """Wave descriptor violates the interrupter parity rule."""


class InconclusiveError(PowerIndexError):
    """A run exhausted its step budget before repeating."""


class UnsupportedSemanticsError(PowerIndexError):
    """Operation is only defined under strict threshold semantics."""
