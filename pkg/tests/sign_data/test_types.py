"""Tests Types."""

import numpy as np
import pytest
from sign_data import NUM_LANDMARKS, PoseSequence, SignerId, ViewAngle, clip_identifier
from sign_data.types import LANDMARK_LAYOUT, parse_clip_identifier


def test_signer_flags() -> None:
    """Test humanity and test eligibility of every signer tag."""
    assert [signer.is_human for signer in SignerId] == [True, True, True, False, True]
    assert [signer.is_test_eligible for signer in SignerId] == [True, True, True, False, False]


def test_view_azimuths() -> None:
    """Test the rig azimuths and letters."""
    assert ViewAngle.Left.azimuth_deg == -25.0
    assert ViewAngle.Front.azimuth_deg == 0.0
    assert ViewAngle.Right.azimuth_deg == 25.0
    assert [view.letter for view in ViewAngle] == ["l", "f", "r"]


def test_landmark_layout() -> None:
    """Test that the layout slices tile the 75 landmarks."""
    covered = sorted(index for part in LANDMARK_LAYOUT.values() for index in range(NUM_LANDMARKS)[part])

    assert covered == list(range(NUM_LANDMARKS))
    assert len(range(NUM_LANDMARKS)[LANDMARK_LAYOUT["left_hand"]]) == 21


def test_clip_identifier() -> None:
    """Test building and parsing clip identifiers."""
    clip_id = clip_identifier(7, SignerId.S1, ViewAngle.Front)

    assert clip_id == "7_S1_Front"
    assert parse_clip_identifier(clip_id) == (7, SignerId.S1, ViewAngle.Front)


def test_pose_sequence_frozen() -> None:
    """Test that a sequence copies and freezes its raster."""
    raster = np.ones((2, NUM_LANDMARKS, 3), dtype=np.float32)
    seq = PoseSequence(frames=raster, signer=SignerId.S2, view=ViewAngle.Left, gloss_id=3)
    raster[0, 0, 0] = 5.0

    assert seq.frames[0, 0, 0] == 1.0
    assert seq.num_frames == 2
    assert seq.clip_id == "3_S2_Left"

    with pytest.raises(ValueError, match="read-only"):
        seq.frames[0, 0, 0] = 2.0


@pytest.mark.parametrize(
    "raster",
    [
        np.zeros((2, 74, 3)),
        np.zeros((0, NUM_LANDMARKS, 3)),
        np.full((1, NUM_LANDMARKS, 3), np.nan),
    ],
)
def test_pose_sequence_rejects(raster: np.ndarray) -> None:
    """Test layout, length and finiteness checks."""
    with pytest.raises(ValueError):  # noqa: PT011
        PoseSequence(frames=raster, signer=SignerId.S1, view=ViewAngle.Front, gloss_id=0)
