"""Module Ingest.

Convert extracted landmark rasters stored as `.npy` arrays, one file per clip
named `{gloss_id}_{signer}_{view}.npy`, into `.ngtp` pose files plus a
manifest.
"""

from __future__ import annotations

import json
import re
from pathlib import Path

import numpy as np
from utilities import logger

from .errors import ClipLoadError, ManifestFormatError, ManifestReadError
from .manifest import parse_manifest, save_manifest
from .posefile import POSE_SUFFIX, write_pose_file
from .types import DatasetManifest, ManifestEntry, PoseSequence, SignerId, ViewAngle

CLIP_NAME = re.compile(r"^(?P<gloss>\d+)_(?P<signer>S1|S2|S3|A|Sb)_(?P<view>Left|Front|Right)$")


def load_vocabulary(path: str | Path) -> DatasetManifest:
    """Read a vocabulary JSON list into an entry-less manifest."""
    path = Path(path)

    try:
        items = json.loads(path.read_text(encoding="utf-8"))
    except (OSError, json.JSONDecodeError) as err:
        raise ManifestReadError(path, str(err)) from err

    if not isinstance(items, list):
        msg = f"{path}: vocabulary must be a JSON list"
        raise ManifestFormatError(msg)

    return parse_manifest({"version": 1, "vocabulary": items, "entries": []})


def ingest_directory(
    source: str | Path,
    vocabulary: str | Path,
    out: str | Path,
) -> DatasetManifest:
    """Convert a directory of `.npy` rasters into pose files and a manifest.

    Files whose stem does not match `{gloss_id}_{signer}_{view}` are skipped
    with a warning.

    Parameters
    ----------
    source : str | Path
        Directory holding the `.npy` rasters.
    vocabulary : str | Path
        JSON list of vocabulary entries.
    out : str | Path
        Output directory for `poses/*.ngtp` and `manifest.json`.

    Returns
    -------
    DatasetManifest
        The written manifest.

    Raises
    ------
    ClipLoadError
        If a raster cannot be read or is not a finite T x 75 x 3 array.
    """
    source, out = Path(source), Path(out)
    vocab = load_vocabulary(vocabulary).vocabulary
    entries = []

    for path in sorted(source.glob("*.npy")):
        match = CLIP_NAME.match(path.stem)

        if match is None:
            logger.warn_(f"Skip {path.name} - name is not gloss_signer_view")
            continue

        signer = SignerId(match["signer"])
        view = ViewAngle(match["view"])
        gloss_id = int(match["gloss"])

        # PoseSequence validates the 75 x 3 layout before anything is written.
        try:
            seq = PoseSequence(
                frames=np.load(path).astype(np.float32),
                signer=signer,
                view=view,
                gloss_id=gloss_id,
            )
        except (OSError, ValueError) as err:
            raise ClipLoadError(path, err) from err
        relative = Path("poses") / f"{seq.clip_id}{POSE_SUFFIX}"
        write_pose_file(out / relative, seq.frames)
        entries.append(ManifestEntry.create(relative.as_posix(), signer, view, gloss_id))

    manifest = DatasetManifest(entries=tuple(entries), vocabulary=vocab, root=out)
    save_manifest(manifest, out / "manifest.json")

    logger.info_(f"Ingested {len(entries)} clips into {out}")

    return manifest
