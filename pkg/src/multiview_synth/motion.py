"""Module Motion.

Procedural sign motions on the 27-node skeleton. A class template is a rest
pose plus, for every node and axis, a short sum of sinusoids. Nodes of one
hand share the hand trajectory so the hand moves rigidly, fingers add a small
articulation of their own, and elbows follow at half amplitude.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from sign_data.types import Handedness
from sign_graph.skeleton import NUM_BODY_NODES, NUM_HAND_NODES, NUM_NODES

MAX_AMPLITUDE = 0.5
NUM_HARMONICS = 3
HAND_HARMONICS = 2

LEFT_HAND = range(NUM_BODY_NODES, NUM_BODY_NODES + NUM_HAND_NODES)
RIGHT_HAND = range(NUM_BODY_NODES + NUM_HAND_NODES, NUM_NODES)
LEFT_ELBOW, RIGHT_ELBOW, LEFT_WRIST, RIGHT_WRIST = 3, 4, 5, 6

# Rest pose in meters: y down, the signer faces -z (towards the Front camera).
BODY_REST = np.array(
    [
        [0.00, -0.40, -0.08],
        [0.18, -0.25, 0.00],
        [-0.18, -0.25, 0.00],
        [0.26, 0.02, -0.02],
        [-0.26, 0.02, -0.02],
        [0.20, 0.10, -0.25],
        [-0.20, 0.10, -0.25],
    ],
)
# Hand offsets from the wrist for a left hand, fingers pointing up.
HAND_REST = np.array(
    [
        [0.000, 0.000, 0.000],
        [-0.045, -0.060, -0.020],
        [-0.025, -0.090, 0.000],
        [-0.030, -0.170, 0.000],
        [-0.005, -0.095, 0.000],
        [-0.005, -0.180, 0.000],
        [0.015, -0.090, 0.000],
        [0.020, -0.165, 0.000],
        [0.035, -0.080, 0.000],
        [0.045, -0.140, 0.000],
    ],
)


@dataclass(frozen=True, eq=False)
class MotionTemplate:
    """Interface representing the motion of one sign class.

    `harmonics` has shape (27, 3, H, 3): per node and axis, H triples of
    (amplitude in meters, frequency in Hz, phase in radians).
    """

    gloss_id: int
    harmonics: np.ndarray
    base_pose: np.ndarray

    def __post_init__(self: MotionTemplate) -> None:
        """Check shapes and the reach bound."""
        if self.base_pose.shape != (NUM_NODES, 3):
            msg = f"base pose must be {NUM_NODES} x 3, got {self.base_pose.shape}"
            raise ValueError(msg)

        if self.harmonics.ndim != 4 or self.harmonics.shape[:2] != (NUM_NODES, 3):  # noqa: PLR2004
            msg = f"harmonics must be {NUM_NODES} x 3 x H x 3, got {self.harmonics.shape}"
            raise ValueError(msg)

        if np.any(np.abs(self.harmonics[..., 0]) > MAX_AMPLITUDE):
            msg = f"harmonic amplitudes must not exceed {MAX_AMPLITUDE} m"
            raise ValueError(msg)


@dataclass(frozen=True)
class SignerStyle:
    """Interface representing how one signer performs every class."""

    amplitude_scale: float = 1.0
    phase_offset: float = 0.0
    translation: tuple[float, float, float] = (0.0, 0.0, 0.0)


def sample_style(rng: np.random.Generator) -> SignerStyle:
    """Draw a signer style: scale in [0.8, 1.2], phase and translation offsets."""
    return SignerStyle(
        amplitude_scale=float(rng.uniform(0.8, 1.2)),
        phase_offset=float(rng.uniform(-0.5, 0.5)),
        translation=tuple(float(val) for val in rng.uniform(-0.05, 0.05, size=3)),
    )


def _hand_trajectory(rng: np.random.Generator, scale: float) -> np.ndarray:
    """Random (3, HAND_HARMONICS, 3) trajectory harmonics."""
    trajectory = np.empty((3, HAND_HARMONICS, 3))
    trajectory[..., 0] = rng.uniform(0.03, 0.18, size=(3, HAND_HARMONICS)) * scale
    trajectory[..., 1] = rng.uniform(0.5, 2.0, size=(3, HAND_HARMONICS))
    trajectory[..., 2] = rng.uniform(0.0, 2 * np.pi, size=(3, HAND_HARMONICS))
    return trajectory


def _mirror(trajectory: np.ndarray) -> np.ndarray:
    """Mirror a trajectory about the sagittal plane (x flips sign)."""
    mirrored = trajectory.copy()
    mirrored[0, :, 2] += np.pi
    return mirrored


def _rest_pose(rng: np.random.Generator) -> np.ndarray:
    """Rest pose with a class-specific handshape (finger curl)."""
    pose = np.zeros((NUM_NODES, 3))
    pose[:NUM_BODY_NODES] = BODY_REST

    for hand, wrist, side in ((LEFT_HAND, LEFT_WRIST, 1.0), (RIGHT_HAND, RIGHT_WRIST, -1.0)):
        offsets = HAND_REST * np.array([side, 1.0, 1.0])
        curl = rng.uniform(0.35, 1.0, size=NUM_HAND_NODES)
        curl[:2] = 1.0
        offsets = offsets * curl[:, None]
        offsets[1:, 2] -= (1.0 - curl[1:]) * 0.05
        pose[list(hand)] = BODY_REST[wrist] + np.array([0.0, -0.02, 0.0]) + offsets

    return pose


def sample_template(
    gloss_id: int,
    rng: np.random.Generator,
    handedness: Handedness = Handedness.One,
) -> MotionTemplate:
    """Draw the motion template of one class.

    The right hand is dominant. One-handed signs keep the left hand at rest,
    symmetric signs mirror the dominant trajectory and asymmetric signs give
    the weak hand a smaller independent one.
    """
    base_pose = _rest_pose(rng)
    harmonics = np.zeros((NUM_NODES, 3, NUM_HARMONICS, 3))
    harmonics[..., 1] = 1.0

    dominant = _hand_trajectory(rng, 1.0)
    weak = {
        Handedness.One: np.zeros_like(dominant),
        Handedness.TwoSym: _mirror(dominant),
        Handedness.TwoAsym: _hand_trajectory(rng, 0.5),
    }[handedness]

    for hand, wrist, elbow, trajectory in (
        (RIGHT_HAND, RIGHT_WRIST, RIGHT_ELBOW, dominant),
        (LEFT_HAND, LEFT_WRIST, LEFT_ELBOW, weak),
    ):
        for node in (*hand, wrist):
            harmonics[node, :, :HAND_HARMONICS] = trajectory

        harmonics[elbow, :, :HAND_HARMONICS] = trajectory * np.array([0.5, 1.0, 1.0])

        for node in hand[1:]:
            harmonics[node, :, HAND_HARMONICS, 0] = rng.uniform(0.0, 0.02, size=3)
            harmonics[node, :, HAND_HARMONICS, 1] = rng.uniform(1.0, 3.0, size=3)
            harmonics[node, :, HAND_HARMONICS, 2] = rng.uniform(0.0, 2 * np.pi, size=3)

    # Head and shoulders sway slightly.
    for node in range(LEFT_ELBOW):
        harmonics[node, :, HAND_HARMONICS, 0] = rng.uniform(0.0, 0.01, size=3)
        harmonics[node, :, HAND_HARMONICS, 1] = rng.uniform(0.3, 1.0, size=3)
        harmonics[node, :, HAND_HARMONICS, 2] = rng.uniform(0.0, 2 * np.pi, size=3)

    return MotionTemplate(gloss_id=gloss_id, harmonics=harmonics, base_pose=base_pose)


def animate(
    template: MotionTemplate,
    style: SignerStyle,
    frames: int,
    fps: float = 25.0,
) -> np.ndarray:
    """Evaluate a template for one signer.

    Parameters
    ----------
    template : MotionTemplate
        The class motion.
    style : SignerStyle
        The signer's amplitude scale, phase offset and translation.
    frames : int
        Number of frames.
    fps : float, optional
        Frame rate, by default 25.

    Returns
    -------
    np.ndarray
        Node positions in meters, shape (frames, 27, 3).
    """
    time = np.arange(frames, dtype=np.float64) / fps
    amplitude = template.harmonics[..., 0] * style.amplitude_scale
    frequency = template.harmonics[..., 1]
    phase = template.harmonics[..., 2] + style.phase_offset

    # (T, nodes, axes, harmonics) -> sum over harmonics
    angle = 2 * np.pi * frequency[None] * time[:, None, None, None] + phase[None]
    displacement = np.sum(amplitude[None] * np.sin(angle), axis=-1)

    return template.base_pose[None] + np.asarray(style.translation)[None, None] + displacement
