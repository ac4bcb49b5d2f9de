"""Shared fixtures."""

from __future__ import annotations

from collections.abc import Callable
from pathlib import Path

import numpy as np
import pytest
from multiview_synth import generate_dataset
from sign_data import DatasetManifest, GlossEntry, Handedness, ManifestEntry, SignerId, ViewAngle, write_pose_file

VocabularyFactory = Callable[[int], tuple[GlossEntry, ...]]
ClipWriter = Callable[[Path, int, SignerId, ViewAngle, np.ndarray], ManifestEntry]


@pytest.fixture()
def make_vocabulary() -> VocabularyFactory:
    """Build one-handed vocabularies with ids 0..size-1."""

    def build(size: int) -> tuple[GlossEntry, ...]:
        return tuple(
            GlossEntry(gloss_id=gloss_id, label=f"GLOSS-{gloss_id}", handedness=Handedness.One, strong_handshape="B")
            for gloss_id in range(size)
        )

    return build


@pytest.fixture()
def write_clip() -> ClipWriter:
    """Write one pose file under `root/poses` and return its entry."""

    def write(root: Path, gloss_id: int, signer: SignerId, view: ViewAngle, frames: np.ndarray) -> ManifestEntry:
        entry = ManifestEntry.create("", signer, view, gloss_id)
        relative = f"poses/{entry.clip_id}.ngtp"
        write_pose_file(root / relative, frames)
        return ManifestEntry.create(relative, signer, view, gloss_id)

    return write


@pytest.fixture(scope="session")
def synthetic(tmp_path_factory: pytest.TempPathFactory) -> DatasetManifest:
    """Four classes, signers S1, S2, S3 and A in three views, eight frames."""
    return generate_dataset(4, 4, 8, 7, tmp_path_factory.mktemp("synthetic"))


@pytest.fixture(scope="session")
def synthetic_sb(tmp_path_factory: pytest.TempPathFactory) -> DatasetManifest:
    """Three classes with all five signers, Sb in the Front view only."""
    return generate_dataset(3, 5, 8, 11, tmp_path_factory.mktemp("synthetic_sb"))
