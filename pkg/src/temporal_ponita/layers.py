"""Module Layers.

Building blocks of the classifier, written as functions over a flat mapping
of named parameters. A layer is a spatial ConvNeXt-style block followed by a
temporal block.
"""

from __future__ import annotations

from collections.abc import Mapping

from diff_engine import (
    Tensor,
    add,
    conv1d_time,
    gather_rows,
    gelu,
    layer_norm,
    linear,
    matmul,
    multiply,
    segment_sum,
)
from sign_graph.skeleton import MessageGraph

from .errors import InvalidInputError


def shared_basis(poly: Tensor, basis_weight: Tensor) -> Tensor:
    """Polynomial attribute features -> linear(basis_dim) -> GeLU."""
    return gelu(matmul(poly, basis_weight))


def kernel_basis(basis: Tensor, kernel_weight: Tensor) -> Tensor:
    """Per-edge, per-channel message kernels of one layer, shape (..., T, E, hidden).

    `basis` is the output of `shared_basis`. Equal attributes give equal kernels.
    """
    return matmul(basis, kernel_weight)


def aggregate(features: Tensor, kernels: Tensor, graph: MessageGraph) -> Tensor:
    """Depthwise messages: m_i = sum over edges (i <- j) of kernel(i, j) * f_j."""
    if features.shape[-2] != graph.num_nodes:
        msg = f"features have {features.shape[-2]} nodes, the graph {graph.num_nodes}"
        raise InvalidInputError(msg)

    messages = multiply(kernels, gather_rows(features, graph.senders, axis=-2))
    return segment_sum(messages, graph.receivers, graph.num_nodes, axis=-2)


def ponita_spatial_block(
    features: Tensor,
    kernels: Tensor,
    graph: MessageGraph,
    params: Mapping[str, Tensor],
    prefix: str,
) -> Tensor:
    """Message passing, layer norm and a widened pointwise MLP with a residual.

    Parameters
    ----------
    features : Tensor
        Node features of shape (..., T, N, hidden).
    kernels : Tensor
        Edge kernels of shape (..., T, E, hidden).
    graph : MessageGraph
        The message edges, self loops included.
    params : Mapping[str, Tensor]
        Needs `{prefix}.norm.scale`, `.norm.shift`, `.linear1.weight`,
        `.linear1.bias`, `.linear2.weight`, `.linear2.bias`, and
        `.layer_scale` when residual scaling is enabled.
    prefix : str
        Name prefix of the block parameters.

    Returns
    -------
    Tensor
        Shape (..., T, N, hidden).
    """
    branch = aggregate(features, kernels, graph)
    branch = layer_norm(branch, params[f"{prefix}.norm.scale"], params[f"{prefix}.norm.shift"])
    branch = gelu(linear(branch, params[f"{prefix}.linear1.weight"], params[f"{prefix}.linear1.bias"]))
    branch = linear(branch, params[f"{prefix}.linear2.weight"], params[f"{prefix}.linear2.bias"])

    scale = params.get(f"{prefix}.layer_scale")
    if scale is not None:
        branch = multiply(branch, scale)

    return add(features, branch)


def temporal_block(features: Tensor, params: Mapping[str, Tensor], prefix: str) -> Tensor:
    """Two time convolutions with GeLU, per node, and a residual connection."""
    branch = gelu(conv1d_time(features, params[f"{prefix}.conv1.weight"], params[f"{prefix}.conv1.bias"]))
    branch = gelu(conv1d_time(branch, params[f"{prefix}.conv2.weight"], params[f"{prefix}.conv2.bias"]))
    return add(features, branch)
