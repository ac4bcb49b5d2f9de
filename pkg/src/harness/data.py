"""Module Data.

Clips as model input: loaded from the manifest, resampled to a fixed number
of frames, reduced to the 27-node graph and cached by clip identifier.
"""

from __future__ import annotations

import threading
from collections.abc import Sequence
from concurrent.futures import ThreadPoolExecutor

import numpy as np
from sign_data import ClipLoadError, DatasetManifest, SignDataError, load_pose_file, resample_time
from sign_graph import NodeMap, SkeletonEdges, default_edges, default_node_map, reduce
from utilities import logger

from .errors import MissingClipsError


class SignDataset:
    """Interface representing the reduced, fixed-length clips of a manifest."""

    def __init__(
        self: SignDataset,
        manifest: DatasetManifest,
        frames: int,
        node_map: NodeMap | None = None,
        edges: SkeletonEdges | None = None,
    ) -> None:
        """Initiate a dataset.

        Parameters
        ----------
        manifest : DatasetManifest
            The clips and their files.
        frames : int
            Fixed clip length after resampling.
        node_map : NodeMap | None, optional
            Node selection, by default the 27-node map.
        edges : SkeletonEdges | None, optional
            Bone edges, by default the 26-edge tree.
        """
        self.manifest = manifest
        self.frames = frames
        self.node_map = node_map or default_node_map()
        self.edges = edges or default_edges()
        self.entries = manifest.by_clip_id()
        self._cache: dict[str, np.ndarray] = {}
        self._lock = threading.Lock()

    def __len__(self: SignDataset) -> int:
        """Number of clips in the manifest."""
        return len(self.entries)

    def _load(self: SignDataset, clip_id: str) -> np.ndarray:
        entry = self.entries[clip_id]
        path = self.manifest.resolve(entry)

        try:
            seq = load_pose_file(path, entry)
        except (OSError, SignDataError) as err:
            raise ClipLoadError(path, err) from err

        reduced = reduce(resample_time(seq, self.frames), self.node_map, self.edges)
        return np.asarray(reduced.frames, dtype=np.float32)

    def clip(self: SignDataset, clip_id: str) -> np.ndarray:
        """The (frames, 27, 3) node coordinates of one clip."""
        with self._lock:
            cached = self._cache.get(clip_id)

        if cached is None:
            if clip_id not in self.entries:
                raise MissingClipsError([clip_id])

            cached = self._load(clip_id)

            with self._lock:
                self._cache[clip_id] = cached

        return cached

    def preload(self: SignDataset, clip_ids: Sequence[str], workers: int = 1) -> None:
        """Load clips into the cache, optionally on several threads."""
        missing = [clip_id for clip_id in clip_ids if clip_id not in self.entries]
        if missing:
            raise MissingClipsError(missing)

        pending = [clip_id for clip_id in dict.fromkeys(clip_ids) if clip_id not in self._cache]

        if workers > 1 and len(pending) > 1:
            with ThreadPoolExecutor(max_workers=workers) as pool:
                list(pool.map(self.clip, pending))
        else:
            for clip_id in pending:
                self.clip(clip_id)

        logger.debug_(msg=f"dataset cache: {len(self._cache)} clips")

    def arrays(self: SignDataset, clip_ids: Sequence[str]) -> tuple[np.ndarray, np.ndarray]:
        """Stacked inputs (B, frames, 27, 3) and gloss labels (B,).

        Raises
        ------
        MissingClipsError
            If a clip identifier is not in the manifest.
        """
        self.preload(clip_ids)

        if not clip_ids:
            return np.zeros((0, self.frames, len(self.node_map.indices), 3), dtype=np.float32), np.zeros(
                0,
                dtype=np.int64,
            )

        frames = np.stack([self.clip(clip_id) for clip_id in clip_ids])
        labels = np.asarray([self.entries[clip_id].gloss_id for clip_id in clip_ids], dtype=np.int64)
        return frames, labels
