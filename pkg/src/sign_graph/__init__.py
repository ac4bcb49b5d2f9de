"""Package Sign Graph."""

from .skeleton import (
    NUM_NODES,
    MessageGraph,
    NodeMap,
    ReducedGraphSequence,
    SkeletonEdges,
    adjacency,
    default_edges,
    default_node_map,
    dump_graph,
    is_connected,
    message_graph,
    normalized_adjacency,
    reduce,
)

__all__ = [
    "NUM_NODES",
    "MessageGraph",
    "NodeMap",
    "ReducedGraphSequence",
    "SkeletonEdges",
    "adjacency",
    "default_edges",
    "default_node_map",
    "dump_graph",
    "is_connected",
    "message_graph",
    "normalized_adjacency",
    "reduce",
]
