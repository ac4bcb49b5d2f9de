"""Module Settings."""

from __future__ import annotations

import os
from dataclasses import dataclass
from pathlib import Path

from dotenv import load_dotenv

DEFAULT_FRAMES = 64
"""Fixed clip length used for batching when nothing else is configured."""


def _flag(value: str | None) -> bool:
    return value is not None and value.strip().lower() in {"1", "true", "yes", "on"}


@dataclass(frozen=True)
class Settings:
    """Interface representing the environment configuration."""

    debugging: bool = False
    tracing: bool = False
    workers: int = 1
    frames: int = DEFAULT_FRAMES


def load_settings(dotenv_path: str | Path | None = None) -> Settings:
    """Load settings from the environment and an optional `.env` file.

    Variables already present in the environment win over the `.env` file.

    Parameters
    ----------
    dotenv_path : str | Path | None, optional
        The `.env` file to read, by default the first one found upwards.

    Returns
    -------
    Settings
        The parsed settings.
    """
    load_dotenv(dotenv_path=dotenv_path, override=False)

    return Settings(
        debugging=_flag(os.getenv("GEOMSIGN_DEBUG")),
        tracing=_flag(os.getenv("GEOMSIGN_TRACE")),
        workers=max(1, int(os.getenv("GEOMSIGN_WORKERS", "1"))),
        frames=max(1, int(os.getenv("GEOMSIGN_FRAMES", str(DEFAULT_FRAMES)))),
    )
