"""Package Sign Data."""

from .errors import (
    ClipLoadError,
    EmptyManifestError,
    EmptyPoseFileError,
    InvalidArgumentError,
    ManifestFormatError,
    ManifestReadError,
    NonFinitePoseFileError,
    NotAPoseFileError,
    PoseFileError,
    SignDataError,
    TruncatedPoseFileError,
    UnsupportedLandmarkCountError,
)
from .ingest import ingest_directory
from .manifest import Violation, load_manifest, save_manifest, validate_manifest
from .posefile import load_pose_file, write_pose_file
from .quality import (
    QualityReport,
    StatsReport,
    dataset_quality,
    dataset_stats,
    keypoint_success_ratio,
)
from .temporal import resample_time
from .types import (
    ALL_VIEWS,
    HUMAN_TEST_SIGNERS,
    NUM_LANDMARKS,
    DatasetManifest,
    GlossEntry,
    Handedness,
    ManifestEntry,
    PoseSequence,
    SignerId,
    ViewAngle,
    clip_identifier,
)

__all__ = [
    "ALL_VIEWS",
    "HUMAN_TEST_SIGNERS",
    "NUM_LANDMARKS",
    "ClipLoadError",
    "DatasetManifest",
    "EmptyManifestError",
    "EmptyPoseFileError",
    "GlossEntry",
    "Handedness",
    "InvalidArgumentError",
    "ManifestEntry",
    "ManifestFormatError",
    "ManifestReadError",
    "NonFinitePoseFileError",
    "NotAPoseFileError",
    "PoseFileError",
    "PoseSequence",
    "QualityReport",
    "SignDataError",
    "SignerId",
    "StatsReport",
    "TruncatedPoseFileError",
    "UnsupportedLandmarkCountError",
    "ViewAngle",
    "Violation",
    "clip_identifier",
    "dataset_quality",
    "dataset_stats",
    "ingest_directory",
    "keypoint_success_ratio",
    "load_manifest",
    "load_pose_file",
    "resample_time",
    "save_manifest",
    "validate_manifest",
    "write_pose_file",
]
