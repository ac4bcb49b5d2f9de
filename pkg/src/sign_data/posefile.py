"""Module Pose File.

Binary `.ngtp` layout, little-endian:

    magic    4 bytes   b"NGTP"
    version  uint32
    dims     3 x uint32 (T_c, N_lm, C)
    payload  T_c * N_lm * C float32, row-major (frame, landmark, coordinate)
"""

from __future__ import annotations

from pathlib import Path

import numpy as np

from .errors import (
    EmptyPoseFileError,
    NonFinitePoseFileError,
    NotAPoseFileError,
    TruncatedPoseFileError,
    UnsupportedLandmarkCountError,
)
from .types import NUM_COORDS, NUM_LANDMARKS, ManifestEntry, PoseSequence

POSE_MAGIC = b"NGTP"
POSE_VERSION = 1
HEADER_BYTES = 20
POSE_SUFFIX = ".ngtp"

_HEADER_DTYPE = np.dtype("<u4")
_PAYLOAD_DTYPE = np.dtype("<f4")


def encode_pose(frames: np.ndarray) -> bytes:
    """Encode a T x 75 x 3 raster as `.ngtp` bytes."""
    raster = np.ascontiguousarray(frames, dtype=_PAYLOAD_DTYPE)
    header = np.array([POSE_VERSION, *raster.shape], dtype=_HEADER_DTYPE)
    return POSE_MAGIC + header.tobytes() + raster.tobytes()


def decode_pose(raw: bytes, path: str | Path = "<bytes>") -> np.ndarray:
    """Decode `.ngtp` bytes into a float32 raster.

    Raises
    ------
    NotAPoseFileError
        Wrong magic or a header shorter than 20 bytes.
    UnsupportedLandmarkCountError
        The header declares a layout other than 75 x 3.
    TruncatedPoseFileError
        The payload length does not match the declared dimensions.
    EmptyPoseFileError
        The header declares zero frames.
    NonFinitePoseFileError
        The payload holds NaN or infinite values.
    """
    if len(raw) < HEADER_BYTES or raw[:4] != POSE_MAGIC:
        raise NotAPoseFileError(path)

    _, frames, landmarks, coords = (
        int(value) for value in np.frombuffer(raw, dtype=_HEADER_DTYPE, count=4, offset=4)
    )

    if landmarks != NUM_LANDMARKS or coords != NUM_COORDS:
        raise UnsupportedLandmarkCountError(path, f"{landmarks} x {coords}")

    if frames == 0:
        raise EmptyPoseFileError(path)

    expected = frames * landmarks * coords * _PAYLOAD_DTYPE.itemsize
    payload = raw[HEADER_BYTES:]

    if len(payload) != expected:
        raise TruncatedPoseFileError(path, f"expected {expected} bytes, got {len(payload)}")

    raster = np.frombuffer(payload, dtype=_PAYLOAD_DTYPE).reshape(frames, landmarks, coords)

    if not np.all(np.isfinite(raster)):
        bad = int(np.count_nonzero(~np.isfinite(raster)))
        raise NonFinitePoseFileError(path, f"{bad} values")

    return raster


def write_pose_file(path: str | Path, frames: np.ndarray) -> Path:
    """Write a raster to an `.ngtp` file and return its path."""
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_bytes(encode_pose(frames))
    return path


def load_pose_file(
    path: str | Path,
    entry: ManifestEntry,
    fps: float = 25.0,
) -> PoseSequence:
    """Load a pose file and attach the manifest metadata.

    Parameters
    ----------
    path : str | Path
        The `.ngtp` file.
    entry : ManifestEntry
        The manifest entry describing the clip.
    fps : float, optional
        Frame rate of the clip, by default 25.

    Returns
    -------
    PoseSequence
        A sequence whose frames equal the payload bit-exactly.
    """
    frames = decode_pose(Path(path).read_bytes(), path=path)

    return PoseSequence(
        frames=frames,
        signer=entry.signer,
        view=entry.view,
        gloss_id=entry.gloss_id,
        fps=fps,
    )
