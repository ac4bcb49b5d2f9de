"""Module Camera.

Pinhole cameras on a horizontal arc around the signer. The vertical axis is
y, pointing down as in image coordinates; the signer faces the Front camera,
which looks along +z from `distance_m` in front of the origin.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from scipy.spatial.transform import Rotation

from .errors import BehindCameraError

DEFAULT_AZIMUTHS = (-25.0, 0.0, 25.0)
DEFAULT_DISTANCE = 4.0
DEFAULT_FOCAL = 1.6


@dataclass(frozen=True)
class CameraRig:
    """Interface representing the three-camera capture rig."""

    azimuths_deg: tuple[float, ...] = DEFAULT_AZIMUTHS
    distance_m: float = DEFAULT_DISTANCE
    focal: float = DEFAULT_FOCAL
    image_center: tuple[float, float] = (0.5, 0.5)


def camera_frame(points3d: np.ndarray, azimuth_deg: float, rig: CameraRig) -> np.ndarray:
    """Points expressed in the camera frame of the camera at `azimuth_deg`."""
    rotation = Rotation.from_euler("y", -azimuth_deg, degrees=True)
    flat = np.asarray(points3d, dtype=np.float64).reshape(-1, 3)
    rotated = rotation.apply(flat)
    rotated[:, 2] += rig.distance_m
    return rotated.reshape(np.shape(points3d))


def project(
    points3d: np.ndarray,
    azimuth_deg: float,
    rig: CameraRig | None = None,
) -> np.ndarray:
    """Pinhole-project points (meters) into normalized image coordinates.

    Parameters
    ----------
    points3d : np.ndarray
        Array of shape (..., 3) in meters.
    azimuth_deg : float
        Camera azimuth; the scene is rotated by -azimuth about y.
    rig : CameraRig | None, optional
        The rig, by default CameraRig().

    Returns
    -------
    np.ndarray
        Array of shape (..., 3): x, y normalized, z the camera-frame depth.

    Raises
    ------
    BehindCameraError
        If any point has depth <= 0.
    """
    rig = rig or CameraRig()
    cam = camera_frame(points3d, azimuth_deg, rig)
    depth = cam[..., 2]

    if np.any(depth <= 0):
        raise BehindCameraError(azimuth_deg, float(np.min(depth)))

    center_x, center_y = rig.image_center
    return np.stack(
        [
            center_x + rig.focal * cam[..., 0] / depth,
            center_y + rig.focal * cam[..., 1] / depth,
            depth,
        ],
        axis=-1,
    )
