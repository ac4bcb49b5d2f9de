"""Module Manifest.

A manifest is a JSON sidecar describing the pose files of a dataset:

    {"version": 1, "vocabulary": [...], "entries": [...]}
"""

from __future__ import annotations

import json
from collections import Counter
from pathlib import Path
from typing import Any, NamedTuple

from utilities import logger

from .errors import ManifestFormatError, ManifestReadError
from .types import (
    MAX_GLOSS_ID,
    DatasetManifest,
    GlossEntry,
    Handedness,
    ManifestEntry,
    SignerId,
    ViewAngle,
    clip_identifier,
)

MANIFEST_VERSION = 1


class Violation(NamedTuple):
    """Interface representing one broken manifest rule."""

    subject: str
    rule: str
    detail: str

    def __str__(self: Violation) -> str:
        """Render as `subject: rule (detail)`."""
        return f"{self.subject}: {self.rule} ({self.detail})"


def gloss_to_dict(gloss: GlossEntry) -> dict[str, Any]:
    """Serialize a vocabulary entry."""
    return {
        "gloss_id": gloss.gloss_id,
        "label": gloss.label,
        "handedness": gloss.handedness.name,
        "strong_handshape": gloss.strong_handshape,
        "weak_handshape": gloss.weak_handshape,
    }


def entry_to_dict(entry: ManifestEntry) -> dict[str, Any]:
    """Serialize a clip entry."""
    return {
        "clip_id": entry.clip_id,
        "path": entry.path,
        "signer": entry.signer.name,
        "view": entry.view.name,
        "gloss_id": entry.gloss_id,
    }


def manifest_to_dict(manifest: DatasetManifest) -> dict[str, Any]:
    """Serialize a manifest to its JSON document."""
    return {
        "version": MANIFEST_VERSION,
        "vocabulary": [gloss_to_dict(gloss) for gloss in manifest.vocabulary],
        "entries": [entry_to_dict(entry) for entry in manifest.entries],
    }


def parse_manifest(document: dict[str, Any], root: Path = Path()) -> DatasetManifest:
    """Parse a manifest JSON document.

    Parameters
    ----------
    document : dict[str, Any]
        The decoded JSON document.
    root : Path, optional
        Directory relative clip paths resolve against.

    Returns
    -------
    DatasetManifest
        The parsed manifest. Rules are not checked here, see validate_manifest.

    Raises
    ------
    ManifestFormatError
        If the version, a field or an enumeration value is wrong.
    """
    if document.get("version") != MANIFEST_VERSION:
        msg = f"unsupported manifest version {document.get('version')!r}"
        raise ManifestFormatError(msg)

    try:
        vocabulary = tuple(
            GlossEntry(
                gloss_id=int(item["gloss_id"]),
                label=str(item["label"]),
                handedness=Handedness[item["handedness"]],
                strong_handshape=str(item["strong_handshape"]),
                weak_handshape=item.get("weak_handshape"),
            )
            for item in document["vocabulary"]
        )
        entries = tuple(
            ManifestEntry(
                clip_id=str(item["clip_id"]),
                path=str(item["path"]),
                signer=SignerId[item["signer"]],
                view=ViewAngle[item["view"]],
                gloss_id=int(item["gloss_id"]),
            )
            for item in document["entries"]
        )
    except (KeyError, TypeError, ValueError) as err:
        msg = f"malformed manifest field: {err!r}"
        raise ManifestFormatError(msg) from err

    return DatasetManifest(entries=entries, vocabulary=vocabulary, root=root)


def load_manifest(path: str | Path) -> DatasetManifest:
    """Read and parse a manifest file.

    Raises
    ------
    ManifestReadError
        If the file cannot be read or is not JSON.
    ManifestFormatError
        If the JSON does not follow the schema.
    """
    path = Path(path)

    try:
        document = json.loads(path.read_text(encoding="utf-8"))
    except (OSError, json.JSONDecodeError) as err:
        raise ManifestReadError(path, str(err)) from err

    manifest = parse_manifest(document, root=path.parent)

    logger.debug_(
        f"Loaded manifest {path} - {len(manifest.entries)} clips,"
        f" {len(manifest.vocabulary)} glosses",
    )

    return manifest


def save_manifest(manifest: DatasetManifest, path: str | Path) -> Path:
    """Write a manifest as indented JSON and return its path."""
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(
        json.dumps(manifest_to_dict(manifest), indent=2) + "\n",
        encoding="utf-8",
    )
    return path


def _vocabulary_violations(vocabulary: tuple[GlossEntry, ...]) -> list[Violation]:
    violations = []
    counts = Counter(gloss.gloss_id for gloss in vocabulary)

    for gloss_id, count in sorted(counts.items()):
        if count > 1:
            violations.append(
                Violation(f"gloss {gloss_id}", "duplicate gloss", f"{count} entries"),
            )

    for gloss in vocabulary:
        subject = f"gloss {gloss.gloss_id}"

        if not 0 <= gloss.gloss_id <= MAX_GLOSS_ID:
            violations.append(
                Violation(subject, "gloss out of range", f"expected 0..{MAX_GLOSS_ID}"),
            )

        one_handed = gloss.handedness is Handedness.One
        has_weak = gloss.weak_handshape is not None

        if one_handed == has_weak:
            violations.append(
                Violation(
                    subject,
                    "weak handshape mismatch",
                    f"handedness {gloss.handedness.name}, weak {gloss.weak_handshape!r}",
                ),
            )

    return violations


def validate_manifest(manifest: DatasetManifest) -> list[Violation]:
    """Check every manifest rule.

    Rules: unique (signer, view, gloss_id) triples, known gloss ids, clip
    identifiers derived from their triple, and the vocabulary rules (unique
    ids in range, weak handshape present iff the sign is two-handed).

    Parameters
    ----------
    manifest : DatasetManifest
        The parsed manifest.

    Returns
    -------
    list[Violation]
        Empty if and only if the manifest is valid.
    """
    violations = _vocabulary_violations(manifest.vocabulary)
    known = {gloss.gloss_id for gloss in manifest.vocabulary}
    seen: dict[tuple[SignerId, ViewAngle, int], str] = {}

    for entry in manifest.entries:
        if entry.triple in seen:
            violations.append(
                Violation(entry.clip_id, "duplicate triple", f"first seen as {seen[entry.triple]}"),
            )
        else:
            seen[entry.triple] = entry.clip_id

        if entry.gloss_id not in known:
            violations.append(
                Violation(entry.clip_id, "unknown gloss", f"gloss_id {entry.gloss_id}"),
            )

        expected = clip_identifier(entry.gloss_id, entry.signer, entry.view)

        if entry.clip_id != expected:
            violations.append(
                Violation(entry.clip_id, "clip identifier mismatch", f"expected {expected}"),
            )

    logger.debug_(f"Manifest validation - {len(violations)} violations")

    return violations
