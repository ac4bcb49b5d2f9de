"""Tests Attributes."""

import numpy as np
import pytest
from sign_graph.skeleton import MessageGraph, default_edges, message_graph
from temporal_ponita import Variant, lift_graph, orientation_grid, pair_attributes, polynomial_features


def rotate(points: np.ndarray, degrees: float, shift: tuple[float, float] = (0.0, 0.0)) -> np.ndarray:
    """Rotate (..., 2) points about the origin, then translate."""
    angle = np.deg2rad(degrees)
    matrix = np.array([[np.cos(angle), -np.sin(angle)], [np.sin(angle), np.cos(angle)]])
    return points @ matrix.T + np.asarray(shift)


@pytest.fixture()
def graph() -> MessageGraph:
    """The bone graph with self loops."""
    return message_graph(default_edges())


def test_invariant_distance(graph: MessageGraph) -> None:
    """Test that distances survive a rotation by 137 degrees and a translation in binary32."""
    positions = np.random.default_rng(0).uniform(0.0, 1.0, size=(4, 27, 2))
    moved = rotate(positions, 137.0, (0.3, -0.7))

    before = pair_attributes(positions.astype(np.float32), graph)
    after = pair_attributes(moved.astype(np.float32), graph)

    assert before.shape == (4, graph.num_edges, 1)
    assert np.allclose(before, after, atol=1e-6)


def test_invariant_reflection(graph: MessageGraph) -> None:
    """Test that distances survive a mirror of the image plane."""
    positions = np.random.default_rng(1).uniform(0.0, 1.0, size=(3, 27, 2))
    mirrored = positions * np.array([-1.0, 1.0])

    assert np.allclose(pair_attributes(positions, graph), pair_attributes(mirrored, graph), atol=1e-12)


def test_baseline_displacement(graph: MessageGraph) -> None:
    """Test that raw displacements ignore translations and follow rotations."""
    positions = np.random.default_rng(2).uniform(0.0, 1.0, size=(3, 27, 2))

    before = pair_attributes(positions, graph, Variant.Baseline)
    shifted = pair_attributes(positions + 0.4, graph, Variant.Baseline)
    rotated = pair_attributes(rotate(positions, 137.0), graph, Variant.Baseline)

    assert before.shape == (3, graph.num_edges, 2)
    assert np.allclose(before, shifted, atol=1e-12)
    assert np.allclose(rotate(before, 137.0), rotated, atol=1e-12)
    assert not np.allclose(before, rotated, atol=1e-3)


def test_self_loops_zero(graph: MessageGraph) -> None:
    """Test that self-loop attributes are zero distance."""
    positions = np.random.default_rng(3).uniform(size=(2, 27, 2))
    loops = graph.senders == graph.receivers

    assert np.all(pair_attributes(positions, graph)[:, loops] == 0)


def test_orientation_grid() -> None:
    """Test unit directions spaced by 2 pi / M."""
    grid = orientation_grid(4)

    assert np.allclose(grid, [[1, 0], [0, 1], [-1, 0], [0, -1]], atol=1e-12)


def test_lift_graph(graph: MessageGraph) -> None:
    """Test slot edges of the lifted graph."""
    lifted = lift_graph(graph, 3)

    assert lifted.num_nodes == 27 * 3
    assert lifted.num_edges == graph.num_edges * 9
    assert lifted.receivers[:9].tolist() == [graph.receivers[0] * 3 + m for m in range(3) for _ in range(3)]
    assert lifted.senders[:9].tolist() == [graph.senders[0] * 3 + n for _ in range(3) for n in range(3)]
    assert lift_graph(graph, 1) is graph


def test_lifted_attributes_permute(graph: MessageGraph) -> None:
    """Test that a rotation by one grid step permutes the orientation slots."""
    num = 4
    positions = np.random.default_rng(4).uniform(size=(2, 27, 2))

    before = pair_attributes(positions, graph, Variant.Invariant, num)
    after = pair_attributes(rotate(positions, 90.0), graph, Variant.Invariant, num)

    slots = before.reshape(2, graph.num_edges, num, num, 3)
    moved = after.reshape(2, graph.num_edges, num, num, 3)
    shifted = np.roll(np.roll(slots, 1, axis=2), 1, axis=3)

    assert before.shape == (2, graph.num_edges * num * num, 3)
    assert np.allclose(moved, shifted, atol=1e-12)


def test_polynomial_features() -> None:
    """Test monomials up to degree two."""
    attributes = np.array([[2.0, 3.0]])

    features = polynomial_features(attributes, 2)

    assert features.tolist() == [[1.0, 2.0, 3.0, 4.0, 6.0, 6.0, 9.0]]
    assert polynomial_features(attributes, 0).tolist() == [[1.0]]
