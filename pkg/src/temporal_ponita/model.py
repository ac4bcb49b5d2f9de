"""Module Model.

The spatio-temporal classifier: node features are embedded, passed through
`num_layers` (spatial block, temporal block) pairs, pooled over time and
nodes, and mapped to class logits. Positions enter only through the pair
attributes, so with the invariant attributes the logits do not change when
every frame is rotated or translated in the image plane.
"""

from __future__ import annotations

from collections.abc import Mapping

import numpy as np
from diff_engine import Tensor, linear, mean_over_axes, sum_over_axes
from sign_graph.skeleton import NUM_NODES, MessageGraph, ReducedGraphSequence, default_edges, message_graph
from utilities import derive_rng

from .attributes import lift_graph, pair_attributes, polynomial_features
from .config import InputFeatureMode, ModelConfig
from .errors import InvalidInputError
from .layers import kernel_basis, ponita_spatial_block, shared_basis, temporal_block

INIT_STREAM = 17
PREDICT_BATCH = 32


def parameter_shapes(config: ModelConfig) -> dict[str, tuple[int, ...]]:
    """Names and shapes of every parameter, in a fixed order."""
    hidden, wide = config.hidden_dim, config.hidden_dim * config.widening_factor
    shapes: dict[str, tuple[int, ...]] = {
        "embed.weight": (config.input_dim, hidden),
        "embed.bias": (hidden,),
        "basis.weight": (config.poly_dim, config.basis_dim),
    }

    for index in range(config.num_layers):
        spatial, temporal = f"layers.{index}.spatial", f"layers.{index}.temporal"
        shapes[f"{spatial}.kernel.weight"] = (config.basis_dim, hidden)
        shapes[f"{spatial}.norm.scale"] = (hidden,)
        shapes[f"{spatial}.norm.shift"] = (hidden,)
        shapes[f"{spatial}.linear1.weight"] = (hidden, wide)
        shapes[f"{spatial}.linear1.bias"] = (wide,)
        shapes[f"{spatial}.linear2.weight"] = (wide, hidden)
        shapes[f"{spatial}.linear2.bias"] = (hidden,)

        if config.layer_scale > 0:
            shapes[f"{spatial}.layer_scale"] = (hidden,)

        for conv in ("conv1", "conv2"):
            shapes[f"{temporal}.{conv}.weight"] = (config.temporal_kernel, hidden, hidden)
            shapes[f"{temporal}.{conv}.bias"] = (hidden,)

    shapes["head.weight"] = (hidden, config.num_classes)
    shapes["head.bias"] = (config.num_classes,)
    return shapes


def parameter_count(config: ModelConfig) -> int:
    """Total number of scalar parameters."""
    return sum(int(np.prod(shape)) for shape in parameter_shapes(config).values())


def decay_names(config: ModelConfig) -> frozenset[str]:
    """Parameters that receive weight decay: the temporal convolution kernels."""
    return frozenset(
        name for name in parameter_shapes(config) if ".temporal." in name and name.endswith(".weight")
    )


def init_params(config: ModelConfig, seed: int, dtype: np.dtype | None = None) -> dict[str, Tensor]:
    """Initialize parameters from the seed.

    Weights are drawn from N(0, 1 / fan_in) (fan_in = K * C_in for time
    convolutions), norm scales are ones, biases and shifts zeros, and the
    residual scale is filled with `config.layer_scale`. Each parameter has its
    own random stream.
    """
    params: dict[str, Tensor] = {}

    for position, (name, shape) in enumerate(parameter_shapes(config).items()):
        if name.endswith((".bias", ".shift")):
            values = np.zeros(shape)
        elif name.endswith(".scale"):
            values = np.ones(shape)
        elif name.endswith(".layer_scale"):
            values = np.full(shape, config.layer_scale)
        else:
            fan_in = int(np.prod(shape[:-1]))
            values = derive_rng(seed, INIT_STREAM, position).normal(0.0, 1.0 / np.sqrt(fan_in), size=shape)

        params[name] = Tensor(values, requires_grad=True, dtype=dtype)

    return params


def node_features(frames: np.ndarray, config: ModelConfig) -> np.ndarray:
    """One-hot node identity per node (plus depth), repeated over orientation slots.

    Returns an array of shape (..., T, N * M, input_dim).
    """
    frames = np.asarray(frames)
    identity = np.broadcast_to(np.eye(config.num_nodes), (*frames.shape[:-1], config.num_nodes))

    if config.input_feature_mode is InputFeatureMode.NodeIdPlusDepth:
        identity = np.concatenate([identity, frames[..., 2:3]], axis=-1)

    if config.num_orientations > 1:
        identity = np.repeat(identity, config.num_orientations, axis=-2)

    return identity


def default_graph(config: ModelConfig) -> MessageGraph:
    """The bone graph with self loops for the 27-node layout."""
    if config.num_nodes != NUM_NODES:
        msg = f"no default graph for {config.num_nodes} nodes, pass one explicitly"
        raise InvalidInputError(msg)
    return message_graph(default_edges(), NUM_NODES)


def forward_batch(
    frames: np.ndarray,
    config: ModelConfig,
    params: Mapping[str, Tensor],
    graph: MessageGraph | None = None,
) -> Tensor:
    """Logits of a batch of clips.

    Parameters
    ----------
    frames : np.ndarray
        Node coordinates of shape (B, T, N, 3); only x, y feed the pair
        attributes, z feeds the node features when enabled.
    config : ModelConfig
        The hyperparameters the parameters were built with.
    params : Mapping[str, Tensor]
        The named parameters.
    graph : MessageGraph | None, optional
        Message edges over the N nodes, by default the bone graph.

    Returns
    -------
    Tensor
        Shape (B, num_classes).

    Raises
    ------
    InvalidInputError
        If the clips do not have `config.num_nodes` nodes with 3 coordinates.
    """
    frames = np.asarray(frames)

    if frames.ndim != 4 or frames.shape[2] != config.num_nodes or frames.shape[3] != 3:  # noqa: PLR2004
        msg = f"expected B x T x {config.num_nodes} x 3 node coordinates, got {frames.shape}"
        raise InvalidInputError(msg)

    graph = graph or default_graph(config)

    if graph.num_nodes != config.num_nodes:
        msg = f"graph has {graph.num_nodes} nodes, the model {config.num_nodes}"
        raise InvalidInputError(msg)

    dtype = params["embed.weight"].dtype
    positions = frames[..., :2].astype(np.float64)
    attributes = pair_attributes(positions, graph, config.variant, config.num_orientations)
    poly = Tensor(polynomial_features(attributes, config.poly_degree), dtype=dtype)
    lifted = lift_graph(graph, config.num_orientations)

    features = Tensor(node_features(frames, config), dtype=dtype)
    features = linear(features, params["embed.weight"], params["embed.bias"])
    basis = shared_basis(poly, params["basis.weight"])

    for index in range(config.num_layers):
        spatial, temporal = f"layers.{index}.spatial", f"layers.{index}.temporal"
        kernels = kernel_basis(basis, params[f"{spatial}.kernel.weight"])
        features = ponita_spatial_block(features, kernels, lifted, params, spatial)
        features = temporal_block(features, params, temporal)

    pooled = mean_over_axes(features, (-3, -2))
    return linear(pooled, params["head.weight"], params["head.bias"])


def forward(
    reduced: ReducedGraphSequence,
    config: ModelConfig,
    params: Mapping[str, Tensor],
) -> Tensor:
    """Logits (num_classes,) of one clip reduced to the sign graph."""
    if reduced.frames.shape[1] != config.num_nodes:
        msg = f"clip has {reduced.frames.shape[1]} nodes, the model {config.num_nodes}"
        raise InvalidInputError(msg)

    graph = message_graph(reduced.edges, config.num_nodes)
    logits = forward_batch(reduced.frames[None], config, params, graph)
    return sum_over_axes(logits, 0)


def predict(
    frames: np.ndarray,
    config: ModelConfig,
    params: Mapping[str, Tensor],
    graph: MessageGraph | None = None,
    batch_size: int = PREDICT_BATCH,
) -> np.ndarray:
    """Logits of many clips as a (B, num_classes) array, evaluated in chunks."""
    frames = np.asarray(frames)
    chunks = [
        forward_batch(frames[start : start + batch_size], config, params, graph).data
        for start in range(0, frames.shape[0], batch_size)
    ]
    return np.concatenate(chunks, axis=0) if chunks else np.zeros((0, config.num_classes))
