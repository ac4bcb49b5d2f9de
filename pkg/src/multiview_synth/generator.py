"""Module Generator.

Desk-scale multi-view benchmark: one motion template per class, one style per
signer, every (class, signer) motion rendered through the rig views into
75-landmark pose files. The 48 landmark slots outside the sign graph stay
zero.
"""

from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from pathlib import Path

import numpy as np
from sign_data.manifest import save_manifest
from sign_data.posefile import POSE_SUFFIX, write_pose_file
from sign_data.types import (
    ALL_VIEWS,
    NUM_LANDMARKS,
    DatasetManifest,
    GlossEntry,
    Handedness,
    ManifestEntry,
    SignerId,
    ViewAngle,
)
from sign_graph.skeleton import NodeMap, default_node_map
from utilities import derive_rng, logger

from .camera import CameraRig, project
from .errors import SynthError
from .motion import MotionTemplate, SignerStyle, animate, sample_style, sample_template

SIGNER_ORDER = (SignerId.S1, SignerId.S2, SignerId.S3, SignerId.A, SignerId.Sb)
HANDSHAPES = ("B", "5", "1", "A", "S", "C", "O", "V", "T", "Y")
HANDEDNESS_WEIGHTS = (122, 63, 15)
CLIP_NOISE_M = 0.002

TEMPLATE_STREAM, STYLE_STREAM, CLIP_STREAM, VOCAB_STREAM = 0, 1, 2, 3


def signer_views(signer: SignerId) -> tuple[ViewAngle, ...]:
    """Views a signer is rendered in: Sb only exists as a Front clip."""
    return (ViewAngle.Front,) if signer is SignerId.Sb else ALL_VIEWS


def sample_gloss(gloss_id: int, rng: np.random.Generator) -> GlossEntry:
    """Draw a vocabulary entry with the corpus handedness proportions."""
    weights = np.asarray(HANDEDNESS_WEIGHTS, dtype=np.float64)
    handedness = list(Handedness)[int(rng.choice(len(weights), p=weights / weights.sum()))]
    strong = str(rng.choice(HANDSHAPES))

    weak = None
    if handedness is Handedness.TwoSym:
        weak = strong
    elif handedness is Handedness.TwoAsym:
        weak = str(rng.choice(HANDSHAPES))

    return GlossEntry(
        gloss_id=gloss_id,
        label=f"SYN-{gloss_id:03d}",
        handedness=handedness,
        strong_handshape=strong,
        weak_handshape=weak,
    )


def embed_nodes(nodes: np.ndarray, node_map: NodeMap) -> np.ndarray:
    """Place (T, 27, 3) node coordinates into a zeroed (T, 75, 3) raster."""
    raster = np.zeros((nodes.shape[0], NUM_LANDMARKS, 3), dtype=np.float32)
    raster[:, list(node_map.indices), :] = nodes
    return raster


def render_views(
    template: MotionTemplate,
    style: SignerStyle,
    views: tuple[ViewAngle, ...],
    frames: int,
    rng: np.random.Generator,
    rig: CameraRig,
    fps: float = 25.0,
) -> dict[ViewAngle, np.ndarray]:
    """Animate one signer performing one class and project it per view."""
    motion = animate(template, style, frames, fps)
    motion = motion + rng.normal(0.0, CLIP_NOISE_M, size=motion.shape)
    return {view: project(motion, view.azimuth_deg, rig) for view in views}


def generate_dataset(
    n_classes: int,
    n_signers: int,
    frames_per_clip: int,
    seed: int,
    out: str | Path,
    rig: CameraRig | None = None,
    workers: int = 1,
) -> DatasetManifest:
    """Generate a labeled multi-view skeleton dataset.

    Parameters
    ----------
    n_classes : int
        Number of sign classes, at least 2.
    n_signers : int
        Number of signers, 2 to 5, tagged S1, S2, S3, A, Sb in that order.
    frames_per_clip : int
        Frames per clip.
    seed : int
        Experiment seed; every (class, signer) pair has its own stream.
    out : str | Path
        Output directory for `poses/*.ngtp` and `manifest.json`.
    rig : CameraRig | None, optional
        The camera rig, by default CameraRig().
    workers : int, optional
        Render threads; the output bytes do not depend on it.

    Returns
    -------
    DatasetManifest
        The written manifest: n_classes x n_signers x 3 clips (Sb adds one
        Front clip per class).
    """
    if n_classes < 2 or not 2 <= n_signers <= len(SIGNER_ORDER):  # noqa: PLR2004
        msg = f"need n_classes >= 2 and 2 <= n_signers <= 5, got {n_classes}, {n_signers}"
        raise SynthError(msg)

    if frames_per_clip < 1:
        msg = f"frames_per_clip must be >= 1, got {frames_per_clip}"
        raise SynthError(msg)

    rig = rig or CameraRig()
    out = Path(out)
    node_map = default_node_map()
    signers = SIGNER_ORDER[:n_signers]

    vocabulary = tuple(
        sample_gloss(gloss_id, derive_rng(seed, VOCAB_STREAM, gloss_id))
        for gloss_id in range(n_classes)
    )
    templates = [
        sample_template(gloss.gloss_id, derive_rng(seed, TEMPLATE_STREAM, gloss.gloss_id), gloss.handedness)
        for gloss in vocabulary
    ]
    styles = [sample_style(derive_rng(seed, STYLE_STREAM, index)) for index in range(n_signers)]

    def render(pair: tuple[int, int]) -> list[ManifestEntry]:
        gloss_id, index = pair
        signer = signers[index]
        rendered = render_views(
            templates[gloss_id],
            styles[index],
            signer_views(signer),
            frames_per_clip,
            derive_rng(seed, CLIP_STREAM, gloss_id, index),
            rig,
        )
        entries = []

        for view, nodes in rendered.items():
            entry = ManifestEntry.create("", signer, view, gloss_id)
            relative = Path("poses") / f"{entry.clip_id}{POSE_SUFFIX}"
            write_pose_file(out / relative, embed_nodes(nodes, node_map))
            entries.append(ManifestEntry.create(relative.as_posix(), signer, view, gloss_id))

        return entries

    pairs = [(gloss_id, index) for gloss_id in range(n_classes) for index in range(n_signers)]

    if workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            batches = list(pool.map(render, pairs))
    else:
        batches = [render(pair) for pair in pairs]

    entries = tuple(sorted((entry for batch in batches for entry in batch), key=lambda e: e.clip_id))
    manifest = DatasetManifest(entries=entries, vocabulary=vocabulary, root=out)
    save_manifest(manifest, out / "manifest.json")

    logger.event_(
        "synth",
        classes=n_classes,
        signers=n_signers,
        frames=frames_per_clip,
        clips=len(entries),
        seed=seed,
    )

    return manifest
