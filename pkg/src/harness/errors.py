"""Module Errors."""

from __future__ import annotations

from collections.abc import Sequence


class HarnessError(Exception):
    """Base error of the training and experiment harness."""

    def __init__(self: HarnessError, message: str) -> None:
        """HarnessError init."""
        self.message = message
        super().__init__(self.message)


class EmptySplitError(HarnessError):
    """A split needed for training or evaluation has no clips."""

    def __init__(self: EmptySplitError, split: str) -> None:
        """EmptySplitError init."""
        self.split = split
        super().__init__(f"empty {split} split")


class TrainingDivergedError(HarnessError):
    """Training produced non-finite values."""

    def __init__(self: TrainingDivergedError, epoch: int, batch: int, op: str) -> None:
        """TrainingDivergedError init."""
        self.epoch = epoch
        self.batch = batch
        self.op = op
        super().__init__(f"training diverged: epoch {epoch}, batch {batch}, op {op}")


class MissingClipsError(HarnessError):
    """Clips named by a plan are absent from the dataset."""

    def __init__(self: MissingClipsError, clip_ids: Sequence[str]) -> None:
        """MissingClipsError init."""
        self.clip_ids = tuple(clip_ids)
        shown = ", ".join(self.clip_ids[:5])
        more = f" (+{len(self.clip_ids) - 5} more)" if len(self.clip_ids) > 5 else ""  # noqa: PLR2004
        super().__init__(f"missing clips: {shown}{more}")


class InvalidTopKError(HarnessError, ValueError):
    """k lies outside [1, number of classes]."""

    def __init__(self: InvalidTopKError, k: int, classes: int) -> None:
        """InvalidTopKError init."""
        self.k = k
        self.classes = classes
        super().__init__(f"k must lie in [1, {classes}], got {k}")
