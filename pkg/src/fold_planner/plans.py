"""Module Plans.

Train / validation / test fold structure.

Block protocol: three blocks, one per human test signer. Per gloss, the test
list holds the test signer's clip in the test view; every clip of that signer
for that gloss is removed from the pool, and the remaining S1/S2/S3/A clips of
the training views rotate through validation fold by fold. Sb joins training
as a Front clip when requested.

Novel-signer protocol: S3 is held out entirely; S1, S2 (and optionally the
avatar and Sb) train, with a seeded 10% validation holdout.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any, NamedTuple

from sign_data.types import (
    ALL_VIEWS,
    HUMAN_TEST_SIGNERS,
    DatasetManifest,
    SignerId,
    ViewAngle,
    clip_identifier,
    parse_clip_identifier,
)
from utilities import derive_rng, logger

from .errors import InvalidViewCountError, MissingClipError

POOL_SIGNERS = (SignerId.S1, SignerId.S2, SignerId.S3, SignerId.A)
BLOCK_KIND = "blocks"
NOVEL_KIND = "novel_signer"
NOVEL_VAL_STREAM = 0x5E1


class GlossSplit(NamedTuple):
    """Interface representing the clip assignment of one gloss."""

    train: tuple[str, ...]
    val: tuple[str, ...]
    test: tuple[str, ...]
    test_signer: SignerId


def folds_per_block(num_views: int) -> int:
    """Folds per block: 3 for single-view training, 6 otherwise."""
    if num_views not in (1, 2, 3):
        raise InvalidViewCountError(num_views)
    return 3 if num_views == 1 else 6


def expected_counts(num_views: int, include_sb: bool) -> tuple[int, int, int]:
    """Per-gloss (train, val, test) counts of the block protocol."""
    train, val = {1: (2, 1), 2: (5, 1), 3: (7, 2)}[num_views]
    return train + int(include_sb), val, 1


def order_views(views: set[ViewAngle] | tuple[ViewAngle, ...] | list[ViewAngle]) -> tuple[ViewAngle, ...]:
    """Views in left, front, right order without duplicates."""
    return tuple(view for view in ALL_VIEWS if view in set(views))


def views_notation(views: tuple[ViewAngle, ...]) -> str:
    """Letter code of a view set, e.g. `lfr` or `f`."""
    return "".join(view.letter for view in order_views(views))


def signers_notation(signers: set[SignerId]) -> str:
    """Signer code of a training pool, e.g. `123A` or `12A+Sb`."""
    code = "".join(tag.value.removeprefix("S") for tag in POOL_SIGNERS if tag in signers)
    return f"{code}+Sb" if SignerId.Sb in signers else code


@dataclass(frozen=True)
class FoldPlan:
    """Interface representing one train/validation/test fold."""

    kind: str
    test_signer: SignerId
    test_view: ViewAngle
    fold_index: int
    block_index: int
    include_sb: bool
    include_avatar: bool
    views_in_training: tuple[ViewAngle, ...]
    seed: int
    assignments: dict[int, GlossSplit] = field(default_factory=dict)

    @property
    def name(self: FoldPlan) -> str:
        """Stable file-friendly name, e.g. `blocks_b0_f2`."""
        return f"{self.kind}_b{self.block_index}_f{self.fold_index}"

    def train_clips(self: FoldPlan) -> list[str]:
        """Every training clip, in gloss order."""
        return [clip for split in self._splits() for clip in split.train]

    def val_clips(self: FoldPlan) -> list[str]:
        """Every validation clip, in gloss order."""
        return [clip for split in self._splits() for clip in split.val]

    def test_clips(self: FoldPlan, view: ViewAngle | None = None) -> list[str]:
        """Test clips, optionally re-targeted to another camera view.

        The test signer's clips of a gloss never enter train or validation,
        so the same signer's clip in any view is a valid test clip.
        """
        if view is None:
            return [clip for split in self._splits() for clip in split.test]

        return [
            clip_identifier(gloss_id, split.test_signer, view)
            for gloss_id, split in sorted(self.assignments.items())
        ]

    def training_signers(self: FoldPlan) -> set[SignerId]:
        """Signers with at least one training or validation clip."""
        return {parse_clip_identifier(clip)[1] for clip in self.train_clips() + self.val_clips()}

    def signers_notation(self: FoldPlan) -> str:
        """Training signer code, e.g. `23A` or `12A+Sb`."""
        return signers_notation(self.training_signers())

    def _splits(self: FoldPlan) -> list[GlossSplit]:
        return [self.assignments[key] for key in sorted(self.assignments)]


def _available(manifest: DatasetManifest) -> set[tuple[int, SignerId, ViewAngle]]:
    return {(entry.gloss_id, entry.signer, entry.view) for entry in manifest.entries}


def _require(
    available: set[tuple[int, SignerId, ViewAngle]],
    gloss_id: int,
    signer: SignerId,
    view: ViewAngle,
) -> str:
    if (gloss_id, signer, view) not in available:
        raise MissingClipError(gloss_id, signer, view)
    return clip_identifier(gloss_id, signer, view)


def _default_test_view(views: tuple[ViewAngle, ...]) -> ViewAngle:
    return ViewAngle.Front if ViewAngle.Front in views else views[0]


def make_blocks(
    manifest: DatasetManifest,
    views: set[ViewAngle] | tuple[ViewAngle, ...],
    include_sb: bool,
    seed: int = 0,
    test_view: ViewAngle | None = None,
    rotate_signers: bool = False,
) -> list[FoldPlan]:
    """Generate the three cross-validation blocks of the multi-view protocol.

    Parameters
    ----------
    manifest : DatasetManifest
        Must hold S1, S2, S3 and A (and Sb Front when `include_sb`) for every
        gloss in every training view.
    views : set[ViewAngle] | tuple[ViewAngle, ...]
        Training views, 1 to 3 of them.
    include_sb : bool
        Add the SignBank Front clip to every training list.
    seed : int, optional
        Recorded in the plans, by default 0.
    test_view : ViewAngle | None, optional
        Primary test view, by default Front when trained on Front.
    rotate_signers : bool, optional
        Rotate the test signer across glosses inside a block so every
        signer is tested on some signs and trains on the others, by default
        False (one test signer per block).

    Returns
    -------
    list[FoldPlan]
        3 blocks x k folds, k = 3 for one view and 6 otherwise.

    Raises
    ------
    InvalidViewCountError
        If `views` does not hold 1, 2 or 3 views.
    MissingClipError
        If a required clip is absent.
    """
    ordered = order_views(views)
    num_folds = folds_per_block(len(ordered))
    num_val = 2 if len(ordered) == len(ALL_VIEWS) else 1
    primary = test_view or _default_test_view(ordered)
    available = _available(manifest)
    plans = []

    for block, anchor in enumerate(HUMAN_TEST_SIGNERS):
        pools: dict[int, tuple[list[str], str, SignerId, list[str]]] = {}

        for gloss_id in manifest.gloss_ids():
            test_signer = (
                HUMAN_TEST_SIGNERS[(block + gloss_id) % len(HUMAN_TEST_SIGNERS)]
                if rotate_signers
                else anchor
            )
            pool = sorted(
                _require(available, gloss_id, signer, view)
                for signer in POOL_SIGNERS
                if signer is not test_signer
                for view in ordered
            )
            extra = [_require(available, gloss_id, SignerId.Sb, ViewAngle.Front)] if include_sb else []
            test = _require(available, gloss_id, test_signer, primary)
            pools[gloss_id] = (pool, test, test_signer, extra)

        for fold in range(num_folds):
            assignments = {}

            for gloss_id, (pool, test, test_signer, extra) in pools.items():
                positions = {(num_val * fold + offset) % len(pool) for offset in range(num_val)}
                assignments[gloss_id] = GlossSplit(
                    train=tuple(clip for index, clip in enumerate(pool) if index not in positions)
                    + tuple(extra),
                    val=tuple(pool[index] for index in sorted(positions)),
                    test=(test,),
                    test_signer=test_signer,
                )

            plans.append(
                FoldPlan(
                    kind=BLOCK_KIND,
                    test_signer=anchor,
                    test_view=primary,
                    fold_index=fold,
                    block_index=block,
                    include_sb=include_sb,
                    include_avatar=True,
                    views_in_training=ordered,
                    seed=seed,
                    assignments=assignments,
                ),
            )

    logger.event_(
        "plans",
        kind=BLOCK_KIND,
        views=views_notation(ordered),
        include_sb=include_sb,
        folds=len(plans),
    )

    return plans


def make_novel_signer_split(
    manifest: DatasetManifest,
    include_sb: bool,
    include_avatar: bool,
    seed: int = 0,
    views: tuple[ViewAngle, ...] = ALL_VIEWS,
    avatar_views: tuple[ViewAngle, ...] | None = None,
    val_fraction: float = 0.1,
) -> FoldPlan:
    """Hold out S3 entirely and train on S1, S2 (+A, +Sb).

    Parameters
    ----------
    manifest : DatasetManifest
        The dataset.
    include_sb : bool
        Add the SignBank Front clip of every gloss to the pool.
    include_avatar : bool
        Add the avatar clips in `avatar_views` to the pool.
    seed : int, optional
        Seed of the validation holdout, by default 0.
    views : tuple[ViewAngle, ...], optional
        Views of S1/S2 training clips and of S3 test clips, by default all.
    avatar_views : tuple[ViewAngle, ...] | None, optional
        Avatar views, by default `views`.
    val_fraction : float, optional
        Fraction of the pool held out for validation, by default 0.1.

    Returns
    -------
    FoldPlan
        A single plan; per gloss the test list holds S3 in every view.
    """
    ordered = order_views(views)
    avatar = order_views(avatar_views or ordered) if include_avatar else ()
    available = _available(manifest)
    pools: dict[int, list[str]] = {}
    tests: dict[int, tuple[str, ...]] = {}

    for gloss_id in manifest.gloss_ids():
        pool = [
            _require(available, gloss_id, signer, view)
            for signer in (SignerId.S1, SignerId.S2)
            for view in ordered
        ]
        pool += [_require(available, gloss_id, SignerId.A, view) for view in avatar]

        if include_sb:
            pool.append(_require(available, gloss_id, SignerId.Sb, ViewAngle.Front))

        pools[gloss_id] = sorted(pool)
        tests[gloss_id] = tuple(
            _require(available, gloss_id, SignerId.S3, view) for view in ordered
        )

    every = sorted(clip for pool in pools.values() for clip in pool)
    num_val = max(1, round(val_fraction * len(every)))
    order = derive_rng(seed, NOVEL_VAL_STREAM).permutation(len(every))
    held_out = {every[index] for index in order[:num_val]}

    assignments = {
        gloss_id: GlossSplit(
            train=tuple(clip for clip in pool if clip not in held_out),
            val=tuple(clip for clip in pool if clip in held_out),
            test=tests[gloss_id],
            test_signer=SignerId.S3,
        )
        for gloss_id, pool in pools.items()
    }

    logger.event_(
        "plans",
        kind=NOVEL_KIND,
        views=views_notation(ordered),
        include_sb=include_sb,
        include_avatar=include_avatar,
        val=num_val,
    )

    return FoldPlan(
        kind=NOVEL_KIND,
        test_signer=SignerId.S3,
        test_view=_default_test_view(ordered),
        fold_index=0,
        block_index=0,
        include_sb=include_sb,
        include_avatar=include_avatar,
        views_in_training=ordered,
        seed=seed,
        assignments=assignments,
    )


def check_plan(plan: FoldPlan) -> list[str]:
    """List every broken fold invariant of a plan; empty when the plan is sound."""
    problems = []
    num_views = len(plan.views_in_training)

    for gloss_id, split in sorted(plan.assignments.items()):
        train, val, test = set(split.train), set(split.val), set(split.test)

        if train & val or train & test or val & test:
            problems.append(f"gloss {gloss_id}: overlapping lists")

        for clip in test:
            signer = parse_clip_identifier(clip)[1]

            if not signer.is_test_eligible:
                problems.append(f"gloss {gloss_id}: {signer.value} in test list")

        for clip in train | val:
            if parse_clip_identifier(clip)[1] is split.test_signer:
                problems.append(f"gloss {gloss_id}: test signer clip {clip} leaks into training")

        if plan.kind == BLOCK_KIND:
            counts = (len(split.train), len(split.val), len(split.test))

            if counts != expected_counts(num_views, plan.include_sb):
                problems.append(f"gloss {gloss_id}: counts {counts}")

    return problems


def plan_to_dict(plan: FoldPlan) -> dict[str, Any]:
    """Serialize a plan to its JSON document."""
    return {
        "kind": plan.kind,
        "test_signer": plan.test_signer.name,
        "test_view": plan.test_view.name,
        "fold_index": plan.fold_index,
        "block_index": plan.block_index,
        "include_sb": plan.include_sb,
        "include_avatar": plan.include_avatar,
        "views_in_training": [view.name for view in plan.views_in_training],
        "seed": plan.seed,
        "assignments": {
            str(gloss_id): {
                "train": list(split.train),
                "val": list(split.val),
                "test": list(split.test),
                "test_signer": split.test_signer.name,
            }
            for gloss_id, split in sorted(plan.assignments.items())
        },
    }


def plan_from_dict(document: dict[str, Any]) -> FoldPlan:
    """Parse a plan JSON document."""
    return FoldPlan(
        kind=document["kind"],
        test_signer=SignerId[document["test_signer"]],
        test_view=ViewAngle[document["test_view"]],
        fold_index=int(document["fold_index"]),
        block_index=int(document["block_index"]),
        include_sb=bool(document["include_sb"]),
        include_avatar=bool(document["include_avatar"]),
        views_in_training=tuple(ViewAngle[name] for name in document["views_in_training"]),
        seed=int(document["seed"]),
        assignments={
            int(gloss_id): GlossSplit(
                train=tuple(item["train"]),
                val=tuple(item["val"]),
                test=tuple(item["test"]),
                test_signer=SignerId[item["test_signer"]],
            )
            for gloss_id, item in document["assignments"].items()
        },
    )


def save_plans(plans: list[FoldPlan], out: str | Path) -> list[Path]:
    """Write one JSON file per plan into `out`."""
    out = Path(out)
    out.mkdir(parents=True, exist_ok=True)
    paths = []

    for plan in plans:
        path = out / f"{plan.name}.json"
        path.write_text(json.dumps(plan_to_dict(plan), indent=2) + "\n", encoding="utf-8")
        paths.append(path)

    logger.info_(f"Wrote {len(paths)} fold plans to {out}")

    return paths


def load_plan(path: str | Path) -> FoldPlan:
    """Read a plan JSON file."""
    return plan_from_dict(json.loads(Path(path).read_text(encoding="utf-8")))
