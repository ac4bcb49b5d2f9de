"""Package Harness."""

from .config import TRAIN_SETTINGS_KEYS, TrainSettings, load_run_config, run_config_to_dict, split_run_config
from .data import SignDataset
from .errors import EmptySplitError, HarnessError, InvalidTopKError, MissingClipsError, TrainingDivergedError
from .evaluation import Scores, evaluate
from .experiment import (
    METRIC_COLUMNS,
    FoldScore,
    MetricsRow,
    MetricsTable,
    aggregate_scores,
    build_plans,
    relative_drops,
    relative_increase,
    run_experiment,
)
from .metrics import label_ranks, mean_std, topk_accuracy
from .report import format_gain, gain_frame, metrics_frame, render_markdown, report
from .training import EpochRecord, TrainRun, evaluate_split, train, write_run

__all__ = [
    "METRIC_COLUMNS",
    "TRAIN_SETTINGS_KEYS",
    "EmptySplitError",
    "EpochRecord",
    "FoldScore",
    "HarnessError",
    "InvalidTopKError",
    "MetricsRow",
    "MetricsTable",
    "MissingClipsError",
    "Scores",
    "SignDataset",
    "TrainRun",
    "TrainSettings",
    "TrainingDivergedError",
    "aggregate_scores",
    "build_plans",
    "evaluate",
    "evaluate_split",
    "format_gain",
    "gain_frame",
    "label_ranks",
    "load_run_config",
    "mean_std",
    "metrics_frame",
    "relative_drops",
    "relative_increase",
    "render_markdown",
    "report",
    "run_config_to_dict",
    "run_experiment",
    "split_run_config",
    "topk_accuracy",
    "train",
    "write_run",
]
