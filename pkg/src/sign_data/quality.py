"""Module Quality.

Keypoint extraction diagnostics and dataset statistics.

A keypoint is failed when its (x, y, z) triple is exactly (0, 0, 0), the
value the landmark extractor returns when detection fails. Partial zeros
count as valid.
"""

from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from pathlib import Path
from typing import NamedTuple

import numpy as np
import pandas as pd
from utilities import logger

from .errors import ClipLoadError, EmptyManifestError, SignDataError
from .posefile import load_pose_file
from .types import NUM_LANDMARKS, DatasetManifest, Handedness, ManifestEntry, PoseSequence

REPORT_COLUMNS = ["gloss_id", "signer", "view", "frames", "success_ratio"]


def failed_mask(frames: np.ndarray) -> np.ndarray:
    """Boolean T x N mask of failed keypoints."""
    return np.all(frames == 0, axis=-1)


def keypoint_success_ratio(seq: PoseSequence) -> float:
    """Fraction of successfully extracted keypoints: 1 - failed / (T_c * 75)."""
    failed = int(np.count_nonzero(failed_mask(seq.frames)))
    return 1.0 - failed / (seq.num_frames * NUM_LANDMARKS)


class ClipQuality(NamedTuple):
    """Interface representing the diagnostics of one clip."""

    clip_id: str
    gloss_id: int
    signer: str
    view: str
    human: bool
    frames: int
    failed: int
    success_ratio: float
    never_detected: int


@dataclass(frozen=True)
class QualityReport:
    """Interface representing aggregated keypoint diagnostics.

    Per-sign and dataset ratios are weighted by clip frame counts, i.e. they
    are successful cells over total cells.
    """

    per_sign_success: dict[int, float]
    dataset_success: float
    failed_counts: dict[int, int]
    per_sign_view_success: dict[tuple[int, str], float]
    human_success: float | None
    synthetic_success: float | None
    synthetic_never_detected: float | None
    clips: tuple[ClipQuality, ...] = field(default=())

    def to_frame(self: QualityReport) -> pd.DataFrame:
        """Per-clip rows with the CSV report columns."""
        frame = pd.DataFrame([clip._asdict() for clip in self.clips])

        if frame.empty:
            return pd.DataFrame(columns=REPORT_COLUMNS)

        return frame[REPORT_COLUMNS]

    def notes(self: QualityReport) -> list[str]:
        """Human-readable remarks attached to the report."""
        notes = []

        if self.synthetic_never_detected:
            notes.append(
                "synthetic clips leave"
                f" {self.synthetic_never_detected * NUM_LANDMARKS:.0f}/{NUM_LANDMARKS}"
                " landmark slots empty in every frame; their success ratio carries"
                " that constant failure floor",
            )

        return notes


def clip_quality(entry: ManifestEntry, seq: PoseSequence) -> ClipQuality:
    """Diagnostics of one loaded clip."""
    mask = failed_mask(seq.frames)
    failed = int(np.count_nonzero(mask))

    return ClipQuality(
        clip_id=entry.clip_id,
        gloss_id=entry.gloss_id,
        signer=entry.signer.value,
        view=entry.view.value,
        human=entry.signer.is_human,
        frames=seq.num_frames,
        failed=failed,
        success_ratio=1.0 - failed / (seq.num_frames * NUM_LANDMARKS),
        never_detected=int(np.count_nonzero(np.all(mask, axis=0))),
    )


def _load_quality(manifest: DatasetManifest, entry: ManifestEntry) -> ClipQuality:
    path = manifest.resolve(entry)

    try:
        seq = load_pose_file(path, entry)
    except (OSError, SignDataError) as err:
        raise ClipLoadError(path, err) from err

    return clip_quality(entry, seq)


def _weighted(rows: pd.DataFrame) -> float:
    cells = rows["frames"].sum() * NUM_LANDMARKS
    return float(1.0 - rows["failed"].sum() / cells)


def summarize(clips: list[ClipQuality]) -> QualityReport:
    """Aggregate per-clip diagnostics into a report.

    Raises
    ------
    EmptyManifestError
        If there are no clips.
    """
    if not clips:
        raise EmptyManifestError

    clips = sorted(clips, key=lambda clip: clip.clip_id)
    frame = pd.DataFrame([clip._asdict() for clip in clips])

    per_sign = {int(key): _weighted(rows) for key, rows in frame.groupby("gloss_id")}
    per_sign_view = {
        (int(gloss), str(view)): _weighted(rows)
        for (gloss, view), rows in frame.groupby(["gloss_id", "view"])
    }
    failed_counts = {
        int(key): int(val) for key, val in frame.groupby("gloss_id")["failed"].sum().items()
    }

    human = frame[frame["human"]]
    synthetic = frame[~frame["human"]]

    return QualityReport(
        per_sign_success=per_sign,
        dataset_success=_weighted(frame),
        failed_counts=failed_counts,
        per_sign_view_success=per_sign_view,
        human_success=_weighted(human) if not human.empty else None,
        synthetic_success=_weighted(synthetic) if not synthetic.empty else None,
        synthetic_never_detected=(
            float(synthetic["never_detected"].min()) / NUM_LANDMARKS
            if not synthetic.empty
            else None
        ),
        clips=tuple(clips),
    )


def dataset_quality(manifest: DatasetManifest, workers: int = 1) -> QualityReport:
    """Compute keypoint diagnostics for every clip of a manifest.

    Clips are loaded on `workers` threads; partial results are merged in
    clip-identifier order so the report does not depend on scheduling.

    Parameters
    ----------
    manifest : DatasetManifest
        The dataset.
    workers : int, optional
        Number of loader threads, by default 1.

    Returns
    -------
    QualityReport
        Per-sign, per-view and dataset success ratios.

    Raises
    ------
    EmptyManifestError
        If the manifest has no entries.
    ClipLoadError
        If a referenced file cannot be loaded; names the offending path.
    """
    if not manifest.entries:
        raise EmptyManifestError

    if workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            clips = list(pool.map(lambda entry: _load_quality(manifest, entry), manifest.entries))
    else:
        clips = [_load_quality(manifest, entry) for entry in manifest.entries]

    report = summarize(clips)

    logger.event_(
        "quality",
        clips=len(clips),
        dataset_success=report.dataset_success,
        human=report.human_success,
        synthetic=report.synthetic_success,
    )

    return report


@dataclass(frozen=True)
class StatsReport:
    """Interface representing dataset composition counts."""

    clips_per_signer: dict[str, int]
    clips_per_view: dict[str, int]
    handedness: dict[str, int]
    strong_handshapes: dict[str, int]
    weak_handshapes: dict[str, int]


def _counts(series: pd.Series) -> dict[str, int]:
    return {str(key): int(val) for key, val in series.value_counts().sort_index().items()}


def dataset_stats(manifest: DatasetManifest) -> StatsReport:
    """Count clips per signer and view, and summarize the vocabulary.

    Parameters
    ----------
    manifest : DatasetManifest
        The dataset; files are not opened.

    Returns
    -------
    StatsReport
        Clip counts, handedness histogram and handshape frequencies.
    """
    entries = pd.DataFrame(
        {
            "signer": [entry.signer.value for entry in manifest.entries],
            "view": [entry.view.value for entry in manifest.entries],
        },
    )
    vocabulary = pd.DataFrame(
        {
            "handedness": [gloss.handedness.name for gloss in manifest.vocabulary],
            "strong": [gloss.strong_handshape for gloss in manifest.vocabulary],
            "weak": [gloss.weak_handshape for gloss in manifest.vocabulary],
        },
    )

    handedness = {kind.name: 0 for kind in Handedness}
    handedness.update(_counts(vocabulary["handedness"]) if not vocabulary.empty else {})

    return StatsReport(
        clips_per_signer=_counts(entries["signer"]) if not entries.empty else {},
        clips_per_view=_counts(entries["view"]) if not entries.empty else {},
        handedness=handedness,
        strong_handshapes=_counts(vocabulary["strong"]) if not vocabulary.empty else {},
        weak_handshapes=_counts(vocabulary["weak"].dropna()) if not vocabulary.empty else {},
    )


def write_quality_csv(report: QualityReport, path: str | Path) -> Path:
    """Write the per-clip quality rows as CSV."""
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    report.to_frame().to_csv(path, index=False, float_format="%.6f")
    return path
