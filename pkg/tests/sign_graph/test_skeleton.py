"""Tests Skeleton."""

import numpy as np
import pytest
from sign_data import PoseSequence, SignerId, ViewAngle, resample_time
from sign_graph import (
    NUM_NODES,
    NodeMap,
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


def sequence(frames: int = 40) -> PoseSequence:
    """Random 75-landmark clip."""
    raster = np.random.default_rng(frames).random((frames, 75, 3))
    return PoseSequence(frames=raster, signer=SignerId.S2, view=ViewAngle.Left, gloss_id=9)


def test_node_map() -> None:
    """Test the 7 + 10 + 10 node selection."""
    node_map = default_node_map()

    assert len(node_map.indices) == 27
    assert len(node_map.hand("left")) == 10
    assert len(node_map.hand("right")) == 10
    assert len(set(node_map.indices)) == 27
    assert max(node_map.indices) < 75
    assert node_map.names[0] == "nose"
    assert node_map.hand("left")[0] == 33
    assert node_map.hand("right")[-1] == 74


def test_node_map_rejects_duplicates() -> None:
    """Test the uniqueness check."""
    with pytest.raises(ValueError, match="unique"):
        NodeMap(indices=(0,) * 27, names=("n",) * 27)


def test_edges_form_tree() -> None:
    """Test the spanning-tree property."""
    edges = default_edges()

    assert len(edges.edges) == 26
    assert len(edges.edges) == NUM_NODES - 1
    assert is_connected(edges)


def test_disconnected() -> None:
    """Test that dropping a bone disconnects the graph."""
    edges = default_edges()

    assert not is_connected(SkeletonEdges(edges=edges.edges[1:]))


def test_message_graph() -> None:
    """Test both directions plus self loops."""
    graph = message_graph(default_edges())

    assert graph.num_edges == 2 * 26 + 27
    assert (int(graph.receivers[0]), int(graph.senders[0])) == default_edges().edges[0]
    np.testing.assert_array_equal(graph.senders[-27:], np.arange(27))


def test_reduce_gathers() -> None:
    """Test shape and value spot checks of the gather."""
    seq = sequence()
    reduced = reduce(seq)
    indices = default_node_map().indices

    assert reduced.frames.shape == (40, 27, 3)
    assert (reduced.signer, reduced.view, reduced.gloss_id) == (SignerId.S2, ViewAngle.Left, 9)

    for t, k in ((0, 0), (13, 12), (39, 26)):
        np.testing.assert_array_equal(reduced.frames[t, k], seq.frames[t, indices[k]])


def test_reduce_identity_map() -> None:
    """Test reducing an already reduced clip with the identity map."""
    reduced = reduce(sequence())
    identity = NodeMap(indices=tuple(range(27)), names=default_node_map().names)

    np.testing.assert_array_equal(reduce(reduced, identity).frames, reduced.frames)


def test_reduce_commutes_with_resample() -> None:
    """Test reduce(resample(s)) == resample(reduce(s))."""
    seq = sequence(23)

    np.testing.assert_array_equal(
        reduce(resample_time(seq, 8)).frames,
        resample_time(reduce(seq), 8).frames,
    )


def test_adjacency_row_sums() -> None:
    """Test degree + 1 row sums with self loops."""
    edges = default_edges()
    with_loops = adjacency(edges, self_loops=True)
    without = adjacency(edges, self_loops=False)

    np.testing.assert_array_equal(with_loops.sum(axis=1), without.sum(axis=1) + 1)


def test_normalized_adjacency() -> None:
    """Test symmetry and the two-node hand evaluation."""
    matrix = normalized_adjacency(default_edges())

    np.testing.assert_allclose(matrix, matrix.T)

    toy = normalized_adjacency(SkeletonEdges(edges=((0, 1),)), self_loops=True, num_nodes=2)

    np.testing.assert_allclose(toy, np.full((2, 2), 0.5))


def test_dump_graph() -> None:
    """Test the JSON description."""
    document = dump_graph(default_node_map(), default_edges())

    assert len(document["nodes"]) == 27
    assert len(document["edges"]) == 26
    assert document["nodes"][0] == {"node": 0, "name": "nose", "landmark": 0, "degree": 2}
    assert sum(node["degree"] for node in document["nodes"]) == 52
