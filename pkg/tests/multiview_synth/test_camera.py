"""Tests Camera."""

import numpy as np
import pytest
from multiview_synth import BehindCameraError, CameraRig, camera_frame, project


def test_origin() -> None:
    """Test that the origin projects to the image center at the rig distance."""
    for azimuth in (-25.0, 0.0, 25.0):
        assert np.allclose(project(np.zeros(3), azimuth), [0.5, 0.5, 4.0], atol=1e-12)


def test_rotation_oracle() -> None:
    """Test the camera frame against an explicit rotation about the vertical axis."""
    points = np.random.default_rng(3).uniform(-1.0, 1.0, size=(50, 3))
    rig = CameraRig()

    for azimuth in (-25.0, 0.0, 25.0, 60.0):
        angle = np.deg2rad(azimuth)
        expected = np.stack(
            [
                np.cos(angle) * points[:, 0] - np.sin(angle) * points[:, 2],
                points[:, 1],
                np.sin(angle) * points[:, 0] + np.cos(angle) * points[:, 2] + rig.distance_m,
            ],
            axis=-1,
        )
        assert np.allclose(camera_frame(points, azimuth, rig), expected, atol=1e-12)


def test_pinhole() -> None:
    """Test the front projection u = 0.5 + f x / z."""
    rig = CameraRig(focal=2.0)
    point = np.array([0.4, -0.2, 1.0])

    projected = project(point, 0.0, rig)

    assert np.allclose(projected, [0.5 + 2.0 * 0.4 / 5.0, 0.5 - 2.0 * 0.2 / 5.0, 5.0])


def test_mirror() -> None:
    """Test that mirroring x and the azimuth mirrors the image about the center."""
    points = np.random.default_rng(5).uniform(-0.5, 0.5, size=(20, 3))
    mirrored = points * np.array([-1.0, 1.0, 1.0])

    left = project(points, -25.0)
    right = project(mirrored, 25.0)

    assert np.allclose(left[:, 0] - 0.5, 0.5 - right[:, 0], atol=1e-12)
    assert np.allclose(left[:, 1:], right[:, 1:], atol=1e-12)


def test_keeps_shape() -> None:
    """Test batched input."""
    assert project(np.zeros((4, 27, 3)), 25.0).shape == (4, 27, 3)


def test_behind_camera() -> None:
    """Test that a point at or behind the camera plane is rejected."""
    with pytest.raises(BehindCameraError) as info:
        project(np.array([[0.0, 0.0, 0.0], [0.0, 0.0, -5.0]]), 0.0)

    assert info.value.depth == pytest.approx(-1.0)
