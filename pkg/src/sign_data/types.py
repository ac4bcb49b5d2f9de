"""Module Types.

Domain vocabulary shared by every package: signers, views, glosses, clips
and manifests. All records are immutable once built.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum
from pathlib import Path

import numpy as np

NUM_LANDMARKS = 75
NUM_COORDS = 3
MAX_GLOSS_ID = 199

LANDMARK_LAYOUT: dict[str, slice] = {
    "face": slice(0, 11),
    "body": slice(11, 25),
    "legs": slice(25, 33),
    "left_hand": slice(33, 54),
    "right_hand": slice(54, 75),
}
"""Slices of the 75-landmark raster: 33 pose points followed by two hands."""


class SignerId(Enum):
    """Signer tags of the multi-view corpus."""

    S1 = "S1"
    S2 = "S2"
    S3 = "S3"
    A = "A"
    Sb = "Sb"

    @property
    def is_human(self: SignerId) -> bool:
        """Whether the signer is a person (everyone but the avatar)."""
        return self is not SignerId.A

    @property
    def is_test_eligible(self: SignerId) -> bool:
        """Whether clips of this signer may appear in a test list."""
        return self in HUMAN_TEST_SIGNERS


HUMAN_TEST_SIGNERS: tuple[SignerId, ...] = (SignerId.S1, SignerId.S2, SignerId.S3)


class ViewAngle(Enum):
    """Camera views of the capture rig."""

    Left = "Left"
    Front = "Front"
    Right = "Right"

    @property
    def azimuth_deg(self: ViewAngle) -> float:
        """Signed azimuth of the camera in degrees."""
        return {"Left": -25.0, "Front": 0.0, "Right": 25.0}[self.value]

    @property
    def letter(self: ViewAngle) -> str:
        """Single-letter code used in table notation (l, f, r)."""
        return self.value[0].lower()


ALL_VIEWS: tuple[ViewAngle, ...] = (ViewAngle.Left, ViewAngle.Front, ViewAngle.Right)


class Handedness(Enum):
    """Handedness classes: one-handed, symmetric and asymmetric two-handed."""

    One = "One"
    TwoSym = "TwoSym"
    TwoAsym = "TwoAsym"


@dataclass(frozen=True)
class GlossEntry:
    """Interface representing one sign of the vocabulary."""

    gloss_id: int
    label: str
    handedness: Handedness
    strong_handshape: str
    weak_handshape: str | None = None


def clip_identifier(gloss_id: int, signer: SignerId, view: ViewAngle) -> str:
    """Build the clip identifier `{gloss_id}_{signer}_{view}`."""
    return f"{gloss_id}_{signer.value}_{view.value}"


@dataclass(frozen=True)
class ManifestEntry:
    """Interface representing one clip reference of a manifest."""

    clip_id: str
    path: str
    signer: SignerId
    view: ViewAngle
    gloss_id: int

    @classmethod
    def create(
        cls: type[ManifestEntry],
        path: str,
        signer: SignerId,
        view: ViewAngle,
        gloss_id: int,
    ) -> ManifestEntry:
        """Create an entry whose identifier is derived from its triple."""
        return cls(
            clip_id=clip_identifier(gloss_id, signer, view),
            path=path,
            signer=signer,
            view=view,
            gloss_id=gloss_id,
        )

    @property
    def triple(self: ManifestEntry) -> tuple[SignerId, ViewAngle, int]:
        """The (signer, view, gloss_id) key."""
        return (self.signer, self.view, self.gloss_id)


@dataclass(frozen=True)
class DatasetManifest:
    """Interface representing a dataset: clip references and vocabulary.

    `root` is the directory relative clip paths are resolved against; it is
    not part of structural equality.
    """

    entries: tuple[ManifestEntry, ...]
    vocabulary: tuple[GlossEntry, ...]
    root: Path = field(default=Path(), compare=False)

    def resolve(self: DatasetManifest, entry: ManifestEntry) -> Path:
        """Resolve the pose file path of an entry."""
        path = Path(entry.path)
        return path if path.is_absolute() else self.root / path

    def by_clip_id(self: DatasetManifest) -> dict[str, ManifestEntry]:
        """Index entries by clip identifier."""
        return {entry.clip_id: entry for entry in self.entries}

    def gloss_ids(self: DatasetManifest) -> list[int]:
        """Sorted gloss identifiers of the vocabulary."""
        return sorted(gloss.gloss_id for gloss in self.vocabulary)


@dataclass(frozen=True, eq=False)
class PoseSequence:
    """Interface representing one sign clip as a T x 75 x 3 landmark raster.

    Coordinates are normalized image coordinates (x, y) plus a depth
    estimate z. A failed keypoint is the exact triple (0, 0, 0).
    """

    frames: np.ndarray
    signer: SignerId
    view: ViewAngle
    gloss_id: int
    fps: float = 25.0

    def __post_init__(self: PoseSequence) -> None:
        """Validate and freeze the raster."""
        frames = np.array(self.frames, copy=True)

        if frames.ndim != 3 or frames.shape[1:] != (NUM_LANDMARKS, NUM_COORDS):  # noqa: PLR2004
            msg = f"expected T x {NUM_LANDMARKS} x {NUM_COORDS}, got {frames.shape}"
            raise ValueError(msg)

        if frames.shape[0] < 1:
            msg = "a pose sequence needs at least one frame"
            raise ValueError(msg)

        if not np.all(np.isfinite(frames)):
            msg = "pose sequence contains non-finite values"
            raise ValueError(msg)

        frames.flags.writeable = False
        object.__setattr__(self, "frames", frames)

    @property
    def num_frames(self: PoseSequence) -> int:
        """Number of frames T_c."""
        return int(self.frames.shape[0])

    @property
    def clip_id(self: PoseSequence) -> str:
        """Clip identifier of the sequence."""
        return clip_identifier(self.gloss_id, self.signer, self.view)


def parse_clip_identifier(clip_id: str) -> tuple[int, SignerId, ViewAngle]:
    """Split a clip identifier back into (gloss_id, signer, view)."""
    gloss, signer, view = clip_id.split("_")
    return int(gloss), SignerId(signer), ViewAngle(view)
