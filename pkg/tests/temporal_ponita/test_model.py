"""Tests Model."""

import numpy as np
import pytest
from diff_engine import default_dtype, gradient_check, softmax_cross_entropy
from sign_data import SignerId, ViewAngle
from sign_graph.skeleton import MessageGraph, ReducedGraphSequence, default_edges, default_node_map
from temporal_ponita import (
    InputFeatureMode,
    InvalidInputError,
    ModelConfig,
    Variant,
    forward,
    forward_batch,
    init_params,
    node_features,
    predict,
)

TOY = ModelConfig(hidden_dim=8, num_layers=2, temporal_kernel=3, basis_dim=8, widening_factor=2, num_classes=5)


def clips(seed: int, batch: int = 2, frames: int = 4) -> np.ndarray:
    """Random node coordinates of shape (batch, frames, 27, 3)."""
    rng = np.random.default_rng(seed)
    xy = rng.uniform(0.0, 1.0, size=(batch, frames, 27, 2))
    depth = rng.uniform(3.5, 4.5, size=(batch, frames, 27, 1))
    return np.concatenate([xy, depth], axis=-1)


def transform(frames: np.ndarray, degrees: float, shift: tuple[float, float], mirror: bool = False) -> np.ndarray:
    """Rotate, optionally mirror, and translate the x, y coordinates of every frame."""
    angle = np.deg2rad(degrees)
    matrix = np.array([[np.cos(angle), -np.sin(angle)], [np.sin(angle), np.cos(angle)]])

    if mirror:
        matrix = matrix @ np.diag([-1.0, 1.0])

    moved = frames.copy()
    moved[..., :2] = frames[..., :2] @ matrix.T + np.asarray(shift)
    return moved


def relative_gap(first: np.ndarray, second: np.ndarray) -> float:
    """Largest difference relative to the largest magnitude."""
    return float(np.abs(first - second).max() / np.abs(first).max())


def test_logits_shape() -> None:
    """Test one row of class logits per clip."""
    logits = forward_batch(clips(0, batch=3), TOY, init_params(TOY, 0))

    assert logits.shape == (3, 5)
    assert logits.dtype == np.float32


def test_invariant_logits() -> None:
    """Test that the invariant variant ignores rotations and translations of the image plane."""
    params = init_params(TOY, 1)
    frames = clips(1)
    reference = forward_batch(frames, TOY, params).data

    for degrees, shift in ((137.0, (0.3, -0.7)), (-20.0, (5.0, 2.0)), (270.0, (0.0, 0.0))):
        moved = forward_batch(transform(frames, degrees, shift), TOY, params).data
        assert relative_gap(reference, moved) < 1e-4


def test_invariant_logits_mirror() -> None:
    """Test that distance attributes also ignore reflections."""
    params = init_params(TOY, 2)
    frames = clips(2)

    reference = forward_batch(frames, TOY, params).data
    mirrored = forward_batch(transform(frames, 30.0, (0.1, 0.1), mirror=True), TOY, params).data

    assert relative_gap(reference, mirrored) < 1e-4


def test_invariant_logits_binary64() -> None:
    """Test the invariance in binary64."""
    params = init_params(TOY, 3, dtype=np.float64)
    frames = clips(3)

    reference = forward_batch(frames, TOY, params).data
    moved = forward_batch(transform(frames, 137.0, (0.3, -0.7)), TOY, params).data

    assert relative_gap(reference, moved) < 1e-10


def test_baseline_sees_rotation() -> None:
    """Test that displacement attributes change the logits under a rotation but not a translation."""
    config = TOY.with_overrides(variant=Variant.Baseline)
    params = init_params(config, 4)
    frames = clips(4)
    reference = forward_batch(frames, config, params).data

    rotated = forward_batch(transform(frames, 137.0, (0.0, 0.0)), config, params).data
    shifted = forward_batch(transform(frames, 0.0, (0.3, -0.7)), config, params).data

    assert np.abs(reference - rotated).max() > 1e-3
    assert relative_gap(reference, shifted) < 1e-4


def test_orientation_grid_invariance() -> None:
    """Test that the lifted model ignores rotations by a grid step."""
    config = TOY.with_overrides(num_orientations=4)
    params = init_params(config, 5)
    frames = clips(5)

    reference = forward_batch(frames, config, params).data
    moved = forward_batch(transform(frames, 90.0, (0.2, 0.4)), config, params).data

    assert relative_gap(reference, moved) < 1e-4


def test_full_model_gradient() -> None:
    """Test every parameter gradient of the classifier against finite differences."""
    config = TOY.with_overrides(num_layers=1)
    params = init_params(config, 6, dtype=np.float64)
    frames = clips(6)
    labels = np.array([1, 4])

    with default_dtype(np.float64):
        error = gradient_check(
            lambda: softmax_cross_entropy(forward_batch(frames, config, params), labels),
            list(params.values()),
            floor=1e-6,
        )

    assert error < 1e-4


def test_forward_single_clip() -> None:
    """Test that a reduced clip scores like the same clip in a batch."""
    params = init_params(TOY, 7)
    frames = clips(7, batch=1)[0]
    reduced = ReducedGraphSequence(
        frames=frames,
        node_map=default_node_map(),
        edges=default_edges(),
        signer=SignerId.S1,
        view=ViewAngle.Front,
        gloss_id=0,
    )

    logits = forward(reduced, TOY, params)

    assert logits.shape == (5,)
    assert np.allclose(logits.data, forward_batch(frames[None], TOY, params).data[0], rtol=1e-5, atol=1e-6)


def test_predict_chunks() -> None:
    """Test that chunked prediction matches one batch."""
    params = init_params(TOY, 8)
    frames = clips(8, batch=5)

    chunked = predict(frames, TOY, params, batch_size=2)

    assert np.allclose(chunked, forward_batch(frames, TOY, params).data, rtol=1e-5, atol=1e-6)
    assert predict(frames[:0], TOY, params).shape == (0, 5)


def test_init_deterministic() -> None:
    """Test seeded initialization."""
    first, second, other = init_params(TOY, 9), init_params(TOY, 9), init_params(TOY, 10)

    assert all(np.array_equal(first[name].data, second[name].data) for name in first)
    assert not np.array_equal(first["embed.weight"].data, other["embed.weight"].data)
    assert np.all(first["layers.0.spatial.norm.scale"].data == 1)
    assert np.all(first["head.bias"].data == 0)


def test_node_features() -> None:
    """Test one-hot identities, the depth column and orientation slots."""
    frames = clips(0, batch=1, frames=2)

    plain = node_features(frames, TOY)
    depth = node_features(frames, TOY.with_overrides(input_feature_mode=InputFeatureMode.NodeIdPlusDepth))
    lifted = node_features(frames, TOY.with_overrides(num_orientations=3))

    assert plain.shape == (1, 2, 27, 27)
    assert np.array_equal(plain[0, 0], np.eye(27))
    assert np.array_equal(depth[..., -1], frames[..., 2])
    assert lifted.shape == (1, 2, 81, 27)


@pytest.mark.parametrize("shape", [(2, 4, 26, 3), (2, 4, 27, 2), (4, 27, 3)])
def test_invalid_input(shape: tuple[int, ...]) -> None:
    """Test clips that do not fit the graph."""
    with pytest.raises(InvalidInputError):
        forward_batch(np.zeros(shape), TOY, init_params(TOY, 0))


def test_graph_size_mismatch() -> None:
    """Test a message graph over another node count."""
    graph = MessageGraph(senders=np.array([0]), receivers=np.array([0]), num_nodes=3)

    with pytest.raises(InvalidInputError):
        forward_batch(clips(0), TOY, init_params(TOY, 0), graph)
