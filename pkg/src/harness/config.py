"""Module Config.

A run configuration is one flat JSON object mixing model fields and training
fields, e.g. {"hidden_dim": 32, "variant": "Baseline", "batch_size": 16}.
"""

from __future__ import annotations

import json
from collections.abc import Mapping
from dataclasses import asdict, dataclass, fields
from pathlib import Path
from typing import Any

from temporal_ponita import MODEL_CONFIG_KEYS, ConfigError, ModelConfig
from utilities import settings


@dataclass(frozen=True)
class TrainSettings:
    """Interface representing the optimizer and stopping settings.

    `target_train_top1` ends training early once the epoch's training Top-1
    reaches it; None disables the check.
    """

    batch_size: int = 32
    learning_rate: float = 5e-3
    warmup_steps: int = 100
    weight_decay: float = 1e-3
    patience: int = 25
    max_epochs: int = 500
    frames: int = settings.frames
    target_train_top1: float | None = None

    def __post_init__(self: TrainSettings) -> None:
        """Check ranges."""
        if self.batch_size < 1 or self.max_epochs < 1 or self.frames < 1:
            msg = "batch_size, max_epochs and frames must be >= 1"
            raise ConfigError(msg)

        if self.patience < 0 or self.warmup_steps < 0 or self.weight_decay < 0 or self.learning_rate <= 0:
            msg = "patience, warmup_steps and weight_decay must be >= 0, learning_rate > 0"
            raise ConfigError(msg)


TRAIN_SETTINGS_KEYS = frozenset(item.name for item in fields(TrainSettings))


def split_run_config(document: Mapping[str, Any]) -> tuple[ModelConfig, TrainSettings]:
    """Split a flat run configuration into model and training parts.

    Raises
    ------
    ConfigError
        On keys that belong to neither part, or invalid values.
    """
    unknown = sorted(set(document) - MODEL_CONFIG_KEYS - TRAIN_SETTINGS_KEYS)

    if unknown:
        msg = f"unknown config keys: {', '.join(unknown)}"
        raise ConfigError(msg)

    model = {key: val for key, val in document.items() if key in MODEL_CONFIG_KEYS}
    train = {key: val for key, val in document.items() if key in TRAIN_SETTINGS_KEYS}

    try:
        return ModelConfig.from_dict(model), TrainSettings(**train)
    except TypeError as exc:
        raise ConfigError(str(exc)) from exc


def load_run_config(path: str | Path | None, num_classes: int | None = None) -> tuple[ModelConfig, TrainSettings]:
    """Read a run configuration file; None gives the defaults.

    `num_classes`, when given, fills in the class count unless the file
    sets one.

    Raises
    ------
    OSError
        If the file cannot be read.
    ConfigError
        If the file is not a JSON object or holds invalid values.
    """
    document: dict[str, Any] = {}

    if path is not None:
        text = Path(path).read_text(encoding="utf-8")

        try:
            document = json.loads(text)
        except json.JSONDecodeError as exc:
            msg = f"config {path} is not JSON: {exc}"
            raise ConfigError(msg) from exc

        if not isinstance(document, dict):
            msg = f"config {path} must hold a JSON object"
            raise ConfigError(msg)

    if num_classes is not None:
        document.setdefault("num_classes", num_classes)

    return split_run_config(document)


def run_config_to_dict(config: ModelConfig, train_settings: TrainSettings) -> dict[str, Any]:
    """Flat JSON-ready mapping of both parts."""
    return {**config.to_dict(), **asdict(train_settings)}
