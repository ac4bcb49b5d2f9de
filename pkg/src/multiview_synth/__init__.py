"""Package Multi-view Synth."""

from .camera import CameraRig, camera_frame, project
from .errors import BehindCameraError, SynthError
from .generator import embed_nodes, generate_dataset, render_views, signer_views
from .motion import MotionTemplate, SignerStyle, animate, sample_style, sample_template

__all__ = [
    "BehindCameraError",
    "CameraRig",
    "MotionTemplate",
    "SignerStyle",
    "SynthError",
    "animate",
    "camera_frame",
    "embed_nodes",
    "generate_dataset",
    "project",
    "render_views",
    "sample_style",
    "sample_template",
    "signer_views",
]
