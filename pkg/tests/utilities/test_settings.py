"""Tests Settings."""

import os
from pathlib import Path

import pytest
from utilities.settings import DEFAULT_FRAMES, load_settings


@pytest.fixture(autouse=True)
def environment(monkeypatch: pytest.MonkeyPatch) -> None:
    """Isolate os.environ from values written by load_dotenv."""
    clean = {key: val for key, val in os.environ.items() if not key.startswith("GEOMSIGN_")}
    monkeypatch.setattr(os, "environ", clean)


def test_defaults(tmp_path: Path) -> None:
    """Test defaults when nothing is configured."""
    settings = load_settings(tmp_path / "missing.env")

    assert not settings.debugging
    assert not settings.tracing
    assert settings.workers == 1
    assert settings.frames == DEFAULT_FRAMES


def test_dotenv_file(tmp_path: Path) -> None:
    """Test values read from a .env file."""
    dotenv = tmp_path / ".env"
    dotenv.write_text("GEOMSIGN_DEBUG=true\nGEOMSIGN_WORKERS=4\nGEOMSIGN_FRAMES=32\n", encoding="utf-8")

    settings = load_settings(dotenv)

    assert settings.debugging
    assert not settings.tracing
    assert settings.workers == 4
    assert settings.frames == 32


def test_environment_wins(tmp_path: Path) -> None:
    """Test that the environment overrides the .env file."""
    os.environ["GEOMSIGN_FRAMES"] = "16"
    dotenv = tmp_path / ".env"
    dotenv.write_text("GEOMSIGN_FRAMES=32\n", encoding="utf-8")

    assert load_settings(dotenv).frames == 16
