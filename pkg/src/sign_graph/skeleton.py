"""Module Skeleton.

The 27-node sign graph: 7 body nodes, then 10 nodes per hand (left hand
first). Hand nodes are the wrist, the thumb tip and the base and tip of the
four fingers. Edges approximate the bone structure and form a spanning tree.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from typing import NamedTuple

import numpy as np
from sign_data.types import LANDMARK_LAYOUT, NUM_LANDMARKS, SignerId, ViewAngle

NUM_NODES = 27
NUM_BODY_NODES = 7
NUM_HAND_NODES = 10

# Offsets inside a 21-point hand: wrist, thumb tip, then (base, tip) per finger.
HAND_OFFSETS = (0, 4, 5, 8, 9, 12, 13, 16, 17, 20)
HAND_NAMES = (
    "wrist",
    "thumb_tip",
    "index_base",
    "index_tip",
    "middle_base",
    "middle_tip",
    "ring_base",
    "ring_tip",
    "pinky_base",
    "pinky_tip",
)
BODY_NODES = (
    ("nose", 0),
    ("left_shoulder", 11),
    ("right_shoulder", 12),
    ("left_elbow", 13),
    ("right_elbow", 14),
    ("left_wrist", 15),
    ("right_wrist", 16),
)


@dataclass(frozen=True)
class NodeMap:
    """Interface representing the landmark index of every graph node."""

    indices: tuple[int, ...]
    names: tuple[str, ...]

    def __post_init__(self: NodeMap) -> None:
        """Check the 7 + 10 + 10 layout."""
        if len(self.indices) != NUM_NODES or len(self.names) != NUM_NODES:
            msg = f"a node map has exactly {NUM_NODES} entries"
            raise ValueError(msg)

        if len(set(self.indices)) != NUM_NODES:
            msg = "node map indices must be unique"
            raise ValueError(msg)

        if not all(0 <= index < NUM_LANDMARKS for index in self.indices):
            msg = f"node map indices must lie in [0, {NUM_LANDMARKS - 1}]"
            raise ValueError(msg)

    def hand(self: NodeMap, side: str) -> tuple[int, ...]:
        """Landmark indices of the `left` or `right` hand nodes."""
        start = NUM_BODY_NODES if side == "left" else NUM_BODY_NODES + NUM_HAND_NODES
        return self.indices[start : start + NUM_HAND_NODES]


class SkeletonEdges(NamedTuple):
    """Interface representing the undirected bone edges of the sign graph."""

    edges: tuple[tuple[int, int], ...]
    self_loops: bool = True


class MessageGraph(NamedTuple):
    """Directed message edges: node `receivers[e]` gathers from `senders[e]`."""

    senders: np.ndarray
    receivers: np.ndarray
    num_nodes: int

    @property
    def num_edges(self: MessageGraph) -> int:
        """Number of directed edges, self loops included."""
        return int(self.senders.shape[0])


def default_node_map() -> NodeMap:
    """Select the 27 graph nodes from the 75-landmark layout."""
    indices = [index for _, index in BODY_NODES]
    names = [name for name, _ in BODY_NODES]

    for side in ("left", "right"):
        base = LANDMARK_LAYOUT[f"{side}_hand"].start
        indices.extend(base + offset for offset in HAND_OFFSETS)
        names.extend(f"{side}_hand_{name}" for name in HAND_NAMES)

    return NodeMap(indices=tuple(indices), names=tuple(names))


def default_edges() -> SkeletonEdges:
    """Build the 26 bone edges of the sign graph.

    Shoulders bridge through the nose, each arm is a shoulder-elbow-wrist
    chain, each body wrist joins its hand wrist, the hand wrist joins the
    thumb tip and every finger base, and every finger base joins its tip.
    """
    edges = [
        (0, 1),
        (0, 2),
        (1, 3),
        (3, 5),
        (2, 4),
        (4, 6),
    ]

    for body_wrist, start in ((5, NUM_BODY_NODES), (6, NUM_BODY_NODES + NUM_HAND_NODES)):
        edges.append((body_wrist, start))
        edges.append((start, start + 1))

        for finger in range(4):
            finger_base = start + 2 + 2 * finger
            edges.append((start, finger_base))
            edges.append((finger_base, finger_base + 1))

    return SkeletonEdges(edges=tuple(edges), self_loops=True)


def is_connected(edges: SkeletonEdges, num_nodes: int = NUM_NODES) -> bool:
    """Breadth-first search from node 0 reaches every node."""
    neighbours: dict[int, list[int]] = {node: [] for node in range(num_nodes)}

    for left, right in edges.edges:
        neighbours[left].append(right)
        neighbours[right].append(left)

    seen = {0}
    queue = deque([0])

    while queue:
        node = queue.popleft()

        for other in neighbours[node]:
            if other not in seen:
                seen.add(other)
                queue.append(other)

    return len(seen) == num_nodes


def message_graph(edges: SkeletonEdges, num_nodes: int = NUM_NODES) -> MessageGraph:
    """Expand undirected edges into both directions, then append self loops.

    Parameters
    ----------
    edges : SkeletonEdges
        The undirected edges; `self_loops` adds one (i, i) edge per node.
    num_nodes : int, optional
        Number of nodes, by default 27.

    Returns
    -------
    MessageGraph
        Sender and receiver index arrays.
    """
    senders = []
    receivers = []

    for left, right in edges.edges:
        senders.extend((right, left))
        receivers.extend((left, right))

    if edges.self_loops:
        senders.extend(range(num_nodes))
        receivers.extend(range(num_nodes))

    return MessageGraph(
        senders=np.asarray(senders, dtype=np.int64),
        receivers=np.asarray(receivers, dtype=np.int64),
        num_nodes=num_nodes,
    )


def adjacency(edges: SkeletonEdges, self_loops: bool, num_nodes: int = NUM_NODES) -> np.ndarray:
    """Symmetric 0/1 adjacency matrix, optionally with ones on the diagonal."""
    matrix = np.zeros((num_nodes, num_nodes), dtype=np.float64)

    for left, right in edges.edges:
        matrix[left, right] = 1.0
        matrix[right, left] = 1.0

    if self_loops:
        matrix += np.eye(num_nodes)

    return matrix


def normalized_adjacency(
    edges: SkeletonEdges,
    self_loops: bool = True,
    num_nodes: int = NUM_NODES,
) -> np.ndarray:
    """Symmetrically normalized adjacency D^(-1/2) A D^(-1/2).

    Isolated nodes (degree 0) keep a zero row.
    """
    matrix = adjacency(edges, self_loops, num_nodes)
    degree = matrix.sum(axis=1)
    inv_sqrt = np.zeros_like(degree)
    np.divide(1.0, np.sqrt(degree), out=inv_sqrt, where=degree > 0)
    return inv_sqrt[:, None] * matrix * inv_sqrt[None, :]


@dataclass(frozen=True, eq=False)
class ReducedGraphSequence:
    """Interface representing a clip reduced to the sign graph, T x 27 x 3."""

    frames: np.ndarray
    node_map: NodeMap
    edges: SkeletonEdges
    signer: SignerId
    view: ViewAngle
    gloss_id: int
    fps: float = 25.0

    def __post_init__(self: ReducedGraphSequence) -> None:
        """Check the raster shape and freeze it."""
        frames = np.array(self.frames, copy=True)

        if frames.ndim != 3 or frames.shape[1] != len(self.node_map.indices):  # noqa: PLR2004
            msg = f"expected T x {len(self.node_map.indices)} x 3, got {frames.shape}"
            raise ValueError(msg)

        frames.flags.writeable = False
        object.__setattr__(self, "frames", frames)

    @property
    def num_frames(self: ReducedGraphSequence) -> int:
        """Number of frames."""
        return int(self.frames.shape[0])


def reduce(
    seq: object,
    node_map: NodeMap | None = None,
    edges: SkeletonEdges | None = None,
) -> ReducedGraphSequence:
    """Gather the graph nodes from every frame; coordinates are not altered.

    Parameters
    ----------
    seq : PoseSequence | ReducedGraphSequence
        The clip. An already reduced clip can be reduced again with a map
        whose indices address its own nodes.
    node_map : NodeMap | None, optional
        The node selection, by default `default_node_map()`.
    edges : SkeletonEdges | None, optional
        The bone edges, by default `default_edges()`.

    Returns
    -------
    ReducedGraphSequence
        frames[t][k] == seq.frames[t][node_map.indices[k]].
    """
    node_map = node_map or default_node_map()
    edges = edges or default_edges()
    frames = seq.frames

    if max(node_map.indices) >= frames.shape[1]:
        msg = f"node map addresses landmark {max(node_map.indices)} of {frames.shape[1]}"
        raise ValueError(msg)

    return ReducedGraphSequence(
        frames=frames[:, list(node_map.indices), :],
        node_map=node_map,
        edges=edges,
        signer=seq.signer,
        view=seq.view,
        gloss_id=seq.gloss_id,
        fps=seq.fps,
    )


def dump_graph(node_map: NodeMap, edges: SkeletonEdges) -> dict[str, object]:
    """JSON-ready description of the node map, edges and node degrees."""
    degree = adjacency(edges, self_loops=False).sum(axis=1)

    return {
        "nodes": [
            {"node": node, "name": name, "landmark": index, "degree": int(degree[node])}
            for node, (name, index) in enumerate(zip(node_map.names, node_map.indices, strict=True))
        ],
        "edges": [list(edge) for edge in edges.edges],
        "self_loops": edges.self_loops,
    }
