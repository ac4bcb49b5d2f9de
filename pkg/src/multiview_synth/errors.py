"""Module Errors."""

from __future__ import annotations


class SynthError(Exception):
    """Base error of the synthetic generator."""

    def __init__(self: SynthError, message: str) -> None:
        """SynthError init."""
        self.message = message
        super().__init__(self.message)


class BehindCameraError(SynthError):
    """A point lies at or behind the camera plane."""

    def __init__(self: BehindCameraError, azimuth_deg: float, depth: float) -> None:
        """BehindCameraError init."""
        self.azimuth_deg = azimuth_deg
        self.depth = depth
        super().__init__(f"behind camera: depth {depth:.4g} at azimuth {azimuth_deg:g} deg")
