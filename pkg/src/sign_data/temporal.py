"""Module Temporal."""

from __future__ import annotations

from dataclasses import replace
from typing import TypeVar

import numpy as np

from .errors import InvalidArgumentError

DEFAULT_TARGET_FRAMES = 64


def resample_indices(num_frames: int, target: int) -> np.ndarray:
    """Source frame index for each output frame: floor(i * T_c / T_target)."""
    if target < 1:
        msg = f"T_target must be >= 1, got {target}"
        raise InvalidArgumentError(msg)

    return (np.arange(target, dtype=np.int64) * num_frames) // target


SequenceT = TypeVar("SequenceT")


def resample_time(seq: SequenceT, target: int = DEFAULT_TARGET_FRAMES) -> SequenceT:
    """Resample a sequence to a fixed number of frames.

    Output frame i copies input frame floor(i * T_c / T_target); nothing is
    interpolated, so failed (zero) keypoints stay exactly zero. Works on any
    frozen dataclass exposing a `frames` array with time on axis 0.

    Parameters
    ----------
    seq : SequenceT
        A PoseSequence or a ReducedGraphSequence.
    target : int, optional
        The number of output frames, by default 64.

    Returns
    -------
    SequenceT
        A sequence of the same type with `target` frames and the same metadata.
    """
    indices = resample_indices(seq.frames.shape[0], target)
    return replace(seq, frames=np.take(seq.frames, indices, axis=0))
