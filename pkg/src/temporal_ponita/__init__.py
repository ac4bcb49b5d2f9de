"""Package Temporal Ponita."""

from .attributes import lift_graph, orientation_grid, pair_attributes, polynomial_features
from .checkpoint import Checkpoint, load_checkpoint, save_checkpoint
from .config import MODEL_CONFIG_KEYS, InputFeatureMode, ModelConfig, Variant
from .errors import CheckpointError, ConfigError, InvalidInputError, ModelError
from .layers import aggregate, kernel_basis, ponita_spatial_block, shared_basis, temporal_block
from .model import (
    decay_names,
    default_graph,
    forward,
    forward_batch,
    init_params,
    node_features,
    parameter_count,
    parameter_shapes,
    predict,
)

__all__ = [
    "MODEL_CONFIG_KEYS",
    "Checkpoint",
    "CheckpointError",
    "ConfigError",
    "InputFeatureMode",
    "InvalidInputError",
    "ModelConfig",
    "ModelError",
    "Variant",
    "aggregate",
    "decay_names",
    "default_graph",
    "forward",
    "forward_batch",
    "init_params",
    "kernel_basis",
    "lift_graph",
    "load_checkpoint",
    "node_features",
    "orientation_grid",
    "pair_attributes",
    "parameter_count",
    "parameter_shapes",
    "polynomial_features",
    "ponita_spatial_block",
    "predict",
    "save_checkpoint",
    "shared_basis",
    "temporal_block",
]
