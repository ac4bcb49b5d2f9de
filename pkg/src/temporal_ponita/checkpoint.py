"""Module Checkpoint.

On-disk layout of a trained model:

    <dir>/checkpoint.json      names, shapes, dtype, step, model config
    <dir>/params/<name>.bin    one little-endian raw blob per parameter

Files are written with fixed key order so identical parameters give
identical bytes.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any

import numpy as np
from diff_engine import Tensor
from utilities import logger

from .config import ModelConfig
from .errors import CheckpointError, ConfigError
from .model import parameter_shapes

CHECKPOINT_FILE = "checkpoint.json"
PARAMS_DIR = "params"
CHECKPOINT_VERSION = 1


@dataclass(frozen=True)
class Checkpoint:
    """Interface representing a loaded checkpoint."""

    config: ModelConfig
    params: dict[str, Tensor]
    step: int
    metadata: dict[str, Any] = field(default_factory=dict)


def _blob_dtype(dtype: np.dtype) -> np.dtype:
    return np.dtype(dtype).newbyteorder("<")


def save_checkpoint(
    directory: str | Path,
    params: dict[str, Tensor],
    config: ModelConfig,
    step: int,
    metadata: dict[str, Any] | None = None,
) -> Path:
    """Write a checkpoint directory and return the manifest path."""
    directory = Path(directory)
    (directory / PARAMS_DIR).mkdir(parents=True, exist_ok=True)

    dtypes = {param.dtype.name for param in params.values()}
    if len(dtypes) != 1:
        msg = f"parameters must share one dtype, got {sorted(dtypes)}"
        raise CheckpointError(directory, msg)

    for name, param in params.items():
        blob = np.ascontiguousarray(param.data, dtype=_blob_dtype(param.dtype))
        (directory / PARAMS_DIR / f"{name}.bin").write_bytes(blob.tobytes())

    document = {
        "version": CHECKPOINT_VERSION,
        "step": int(step),
        "dtype": dtypes.pop(),
        "names": list(params),
        "shapes": {name: list(param.shape) for name, param in params.items()},
        "config": config.to_dict(),
        "metadata": metadata or {},
    }
    path = directory / CHECKPOINT_FILE
    path.write_text(json.dumps(document, indent=2) + "\n", encoding="utf-8")

    logger.debug_(msg=f"checkpoint written: {path} (step {step})")

    return path


def load_checkpoint(directory: str | Path) -> Checkpoint:
    """Read a checkpoint directory.

    Raises
    ------
    CheckpointError
        If the manifest or a blob is missing, or shapes disagree with the
        stored config.
    """
    directory = Path(directory)
    path = directory / CHECKPOINT_FILE

    try:
        document = json.loads(path.read_text(encoding="utf-8"))
    except (OSError, json.JSONDecodeError) as exc:
        raise CheckpointError(directory, str(exc)) from exc

    try:
        config = ModelConfig.from_dict(document["config"])
        dtype = _blob_dtype(document["dtype"])
        names = list(document["names"])
        shapes = {name: tuple(shape) for name, shape in document["shapes"].items()}
        step = int(document["step"])
    except (KeyError, TypeError, ValueError, ConfigError) as exc:
        raise CheckpointError(directory, f"malformed manifest: {exc}") from exc

    expected = parameter_shapes(config)
    if names != list(expected) or any(shapes.get(name) != shape for name, shape in expected.items()):
        raise CheckpointError(directory, "parameter names or shapes do not match the config")

    params: dict[str, Tensor] = {}

    for name in names:
        blob = directory / PARAMS_DIR / f"{name}.bin"

        try:
            raw = blob.read_bytes()
        except OSError as exc:
            raise CheckpointError(directory, str(exc)) from exc

        if len(raw) != int(np.prod(shapes[name])) * dtype.itemsize:
            raise CheckpointError(directory, f"blob {blob.name} has {len(raw)} bytes")

        values = np.frombuffer(raw, dtype=dtype).reshape(shapes[name])
        params[name] = Tensor(values, requires_grad=True, dtype=dtype.newbyteorder("="))

    return Checkpoint(config=config, params=params, step=step, metadata=dict(document.get("metadata", {})))
