"""Module Errors."""

from __future__ import annotations

from pathlib import Path


class SignDataError(Exception):
    """Base error of the sign data package."""

    def __init__(self: SignDataError, message: str) -> None:
        """SignDataError init."""
        self.message = message
        super().__init__(self.message)


class ManifestReadError(SignDataError):
    """The manifest file could not be read or decoded."""

    def __init__(self: ManifestReadError, path: str | Path, reason: str) -> None:
        """ManifestReadError init."""
        self.path = Path(path)
        super().__init__(f"cannot read manifest {self.path}: {reason}")


class ManifestFormatError(SignDataError):
    """The manifest document does not follow the schema."""


class PoseFileError(SignDataError):
    """Base error for `.ngtp` pose files."""

    reason = "invalid pose file"

    def __init__(self: PoseFileError, path: str | Path, detail: str = "") -> None:
        """PoseFileError init."""
        self.path = Path(path)
        suffix = f" ({detail})" if detail else ""
        super().__init__(f"{self.reason}: {self.path}{suffix}")


class NotAPoseFileError(PoseFileError):
    """The file does not start with the pose magic."""

    reason = "not a pose file"


class TruncatedPoseFileError(PoseFileError):
    """The payload length does not match the header dimensions."""

    reason = "truncated file"


class UnsupportedLandmarkCountError(PoseFileError):
    """The header declares a landmark layout other than 75 x 3."""

    reason = "unsupported landmark count"


class EmptyPoseFileError(PoseFileError):
    """The header declares zero frames."""

    reason = "no frames"


class NonFinitePoseFileError(PoseFileError):
    """The payload holds NaN or infinite coordinates."""

    reason = "non-finite coordinates"


class ClipLoadError(SignDataError):
    """A clip referenced by a manifest failed to load."""

    def __init__(self: ClipLoadError, path: str | Path, cause: Exception) -> None:
        """ClipLoadError init."""
        self.path = Path(path)
        self.cause = cause
        super().__init__(f"failed to load {self.path}: {cause}")


class EmptyManifestError(SignDataError):
    """An aggregate was requested over a manifest without entries."""

    def __init__(self: EmptyManifestError) -> None:
        """EmptyManifestError init."""
        super().__init__("no clips")


class InvalidArgumentError(SignDataError, ValueError):
    """An argument is outside its documented domain."""
