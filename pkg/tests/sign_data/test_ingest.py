"""Tests Ingest."""

import json
from pathlib import Path

import numpy as np
import pytest
from sign_data import (
    ClipLoadError,
    ManifestReadError,
    SignerId,
    ViewAngle,
    ingest_directory,
    load_manifest,
    load_pose_file,
)


def test_ingest(tmp_path: Path) -> None:
    """Test conversion of named rasters and skipping of stray files."""
    source = tmp_path / "raw"
    source.mkdir()
    raster = np.random.default_rng(1).random((6, 75, 3)).astype(np.float32)
    np.save(source / "3_S2_Left.npy", raster)
    np.save(source / "notes.npy", raster)

    vocabulary = tmp_path / "vocabulary.json"
    vocabulary.write_text(
        json.dumps([{"gloss_id": 3, "label": "TREE", "handedness": "One", "strong_handshape": "5"}]),
        encoding="utf-8",
    )

    manifest = ingest_directory(source, vocabulary, tmp_path / "out")
    loaded = load_manifest(tmp_path / "out" / "manifest.json")

    assert loaded == manifest
    assert [entry.clip_id for entry in loaded.entries] == ["3_S2_Left"]

    entry = loaded.entries[0]
    seq = load_pose_file(loaded.resolve(entry), entry)

    assert (seq.signer, seq.view) == (SignerId.S2, ViewAngle.Left)
    assert seq.frames.tobytes() == raster.tobytes()


def test_missing_vocabulary(tmp_path: Path) -> None:
    """Test that an unreadable vocabulary is an I/O error."""
    with pytest.raises(ManifestReadError):
        ingest_directory(tmp_path, tmp_path / "missing.json", tmp_path / "out")


def test_bad_raster(tmp_path: Path) -> None:
    """Test that a raster with NaN coordinates names the offending file."""
    source = tmp_path / "raw"
    source.mkdir()
    raster = np.zeros((2, 75, 3))
    raster[0, 0, 0] = np.nan
    np.save(source / "0_S1_Front.npy", raster)

    vocabulary = tmp_path / "vocabulary.json"
    vocabulary.write_text(
        json.dumps([{"gloss_id": 0, "label": "HOUSE", "handedness": "One", "strong_handshape": "B"}]),
        encoding="utf-8",
    )

    with pytest.raises(ClipLoadError, match="0_S1_Front.npy"):
        ingest_directory(source, vocabulary, tmp_path / "out")
