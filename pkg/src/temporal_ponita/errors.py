"""Module Errors."""

from __future__ import annotations

from pathlib import Path


class ModelError(Exception):
    """Base error of the classifier package."""

    def __init__(self: ModelError, message: str) -> None:
        """ModelError init."""
        self.message = message
        super().__init__(self.message)


class ConfigError(ModelError, ValueError):
    """A model or run configuration is invalid."""


class InvalidInputError(ModelError, ValueError):
    """The input clip does not match the configured graph."""


class CheckpointError(ModelError):
    """A checkpoint directory is missing, incomplete or inconsistent."""

    def __init__(self: CheckpointError, path: str | Path, reason: str) -> None:
        """CheckpointError init."""
        self.path = Path(path)
        super().__init__(f"bad checkpoint {self.path}: {reason}")
