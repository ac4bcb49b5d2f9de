"""Module Experiment.

Runs the train-and-evaluate loop of a whole protocol and aggregates the test
accuracies into table rows. Block protocols aggregate over folds (each fold
averaged over seeds first); the novel-signer protocol has one fold and
aggregates over seeds. Seed-level spread is reported alongside.
"""

from __future__ import annotations

from collections.abc import Sequence
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from pathlib import Path
from typing import NamedTuple

import numpy as np
import pandas as pd
from fold_planner import (
    BLOCK_KIND,
    NOVEL_KIND,
    FoldPlan,
    make_blocks,
    make_novel_signer_split,
    signers_notation,
    views_notation,
)
from sign_data import ALL_VIEWS, DatasetManifest, ViewAngle
from temporal_ponita import Checkpoint, ModelConfig, Variant
from utilities import logger

from .config import TrainSettings
from .data import SignDataset
from .errors import HarnessError
from .evaluation import evaluate
from .metrics import mean_std
from .training import train


class MetricsRow(NamedTuple):
    """Interface representing one line of a results table."""

    train_views: str
    signers: str
    test_view: str
    variant: str
    top1_mean: float
    top1_std: float
    top3_mean: float
    top3_std: float
    n_folds: int


class FoldScore(NamedTuple):
    """Interface representing the test scores of one trained fold in one view."""

    plan: str
    seed: int
    test_view: str
    top1: float
    top3: float


METRIC_COLUMNS = list(MetricsRow._fields)
SCORE_COLUMNS = list(FoldScore._fields)


@dataclass
class MetricsTable:
    """Interface representing the aggregated results of one experiment.

    `rows` aggregate over folds (runs for the novel-signer protocol),
    `seed_rows` over seeds, and `scores` keep every per-fold value.
    """

    rows: list[MetricsRow] = field(default_factory=list)
    seed_rows: list[MetricsRow] = field(default_factory=list)
    scores: list[FoldScore] = field(default_factory=list)

    def to_frame(self: MetricsTable) -> pd.DataFrame:
        """Rows with the fixed metric columns."""
        return pd.DataFrame(self.rows, columns=METRIC_COLUMNS)

    def seed_frame(self: MetricsTable) -> pd.DataFrame:
        """Seed-level rows; `n_folds` counts seeds there."""
        return pd.DataFrame(self.seed_rows, columns=METRIC_COLUMNS)

    def scores_frame(self: MetricsTable) -> pd.DataFrame:
        """Every per-fold score."""
        return pd.DataFrame(self.scores, columns=SCORE_COLUMNS)

    @classmethod
    def from_frame(cls: type[MetricsTable], frame: pd.DataFrame) -> MetricsTable:
        """Rebuild a table from a metrics CSV frame."""
        missing = [column for column in METRIC_COLUMNS if column not in frame.columns]
        if missing:
            msg = f"metrics table lacks columns {missing}"
            raise HarnessError(msg)

        rows = [
            MetricsRow(
                train_views=str(row.train_views),
                signers=str(row.signers),
                test_view=str(row.test_view),
                variant=str(row.variant),
                top1_mean=float(row.top1_mean),
                top1_std=float(row.top1_std),
                top3_mean=float(row.top3_mean),
                top3_std=float(row.top3_std),
                n_folds=int(row.n_folds),
            )
            for row in frame[METRIC_COLUMNS].itertuples(index=False)
        ]
        return cls(rows=rows)


def _view_order(names: Sequence[str]) -> list[str]:
    known = [view.value for view in ALL_VIEWS if view.value in set(names)]
    return known + sorted(set(names) - set(known))


def aggregate_scores(  # noqa: PLR0913
    scores: Sequence[FoldScore],
    train_views: str,
    signers: str,
    variant: str,
    protocol: str = BLOCK_KIND,
) -> tuple[list[MetricsRow], list[MetricsRow]]:
    """Aggregate per-fold scores into fold-level and seed-level rows.

    Parameters
    ----------
    scores : Sequence[FoldScore]
        One score per (plan, seed, test view).
    train_views, signers, variant : str
        Row labels.
    protocol : str, optional
        `blocks` aggregates over folds after averaging seeds per fold;
        `novel_signer` aggregates over seeds, by default `blocks`.

    Returns
    -------
    tuple[list[MetricsRow], list[MetricsRow]]
        Headline rows and seed rows, one per test view.
    """
    frame = pd.DataFrame(list(scores), columns=SCORE_COLUMNS)
    rows, seed_rows = [], []

    for test_view in _view_order(frame["test_view"].unique().tolist()):
        subset = frame[frame["test_view"] == test_view]
        unit = "plan" if protocol == BLOCK_KIND else "seed"
        units = subset.groupby(unit, sort=True)[["top1", "top3"]].mean()
        seeds = subset.groupby("seed", sort=True)[["top1", "top3"]].mean()

        for target, grouped in ((rows, units), (seed_rows, seeds)):
            top1_mean, top1_std = mean_std(grouped["top1"].to_numpy())
            top3_mean, top3_std = mean_std(grouped["top3"].to_numpy())
            target.append(
                MetricsRow(
                    train_views=train_views,
                    signers=signers,
                    test_view=test_view,
                    variant=variant,
                    top1_mean=top1_mean,
                    top1_std=top1_std,
                    top3_mean=top3_mean,
                    top3_std=top3_std,
                    n_folds=len(grouped),
                ),
            )

    return rows, seed_rows


def build_plans(  # noqa: PLR0913
    manifest: DatasetManifest,
    views: Sequence[ViewAngle],
    include_sb: bool,
    include_avatar: bool,
    seed: int,
    protocol: str = BLOCK_KIND,
    avatar_views: Sequence[ViewAngle] | None = None,
) -> list[FoldPlan]:
    """Fold plans of one protocol for one seed."""
    if protocol == BLOCK_KIND:
        if not include_avatar:
            logger.warn_(msg="block plans always train with the avatar; include_avatar ignored")
        return make_blocks(manifest, tuple(views), include_sb, seed=seed)

    if protocol == NOVEL_KIND:
        return [
            make_novel_signer_split(
                manifest,
                include_sb,
                include_avatar,
                seed=seed,
                views=tuple(views),
                avatar_views=tuple(avatar_views) if avatar_views else None,
            ),
        ]

    msg = f"unknown protocol {protocol!r}, expected {BLOCK_KIND} or {NOVEL_KIND}"
    raise HarnessError(msg)


def run_experiment(  # noqa: PLR0913
    manifest: DatasetManifest,
    views: Sequence[ViewAngle],
    variant: Variant,
    include_sb: bool,
    include_avatar: bool,
    seeds: Sequence[int],
    protocol: str = BLOCK_KIND,
    config: ModelConfig | None = None,
    train_settings: TrainSettings | None = None,
    test_views: Sequence[ViewAngle] = ALL_VIEWS,
    out: str | Path | None = None,
    dataset: SignDataset | None = None,
    workers: int = 1,
    avatar_views: Sequence[ViewAngle] | None = None,
) -> MetricsTable:
    """Train every fold for every seed and aggregate the test accuracies.

    Parameters
    ----------
    manifest : DatasetManifest
        The dataset.
    views : Sequence[ViewAngle]
        Training views.
    variant : Variant
        Invariant or Baseline pair attributes; overrides `config.variant`.
    include_sb : bool
        Train with the SignBank Front clips.
    include_avatar : bool
        Train with the avatar (novel-signer protocol only).
    seeds : Sequence[int]
        Experiment seeds; at least one.
    protocol : str, optional
        `blocks` or `novel_signer`, by default `blocks`.
    config : ModelConfig | None, optional
        Model hyperparameters, by default ModelConfig().
    train_settings : TrainSettings | None, optional
        Optimizer settings, by default TrainSettings().
    test_views : Sequence[ViewAngle], optional
        Views every fold is evaluated on, by default all three.
    out : str | Path | None, optional
        Directory for per-run outputs, by default nothing is written.
    dataset : SignDataset | None, optional
        Shared clip cache, by default built from the manifest.
    workers : int, optional
        Folds trained concurrently; results are gathered in job order.
    avatar_views : Sequence[ViewAngle] | None, optional
        Avatar views of the novel-signer protocol, by default `views`.

    Returns
    -------
    MetricsTable
        One row per test view.
    """
    if not seeds:
        msg = "run_experiment needs at least one seed"
        raise HarnessError(msg)

    train_settings = train_settings or TrainSettings()
    config = (config or ModelConfig()).with_overrides(variant=variant)
    dataset = dataset or SignDataset(manifest, train_settings.frames)

    jobs = [
        (seed, plan)
        for seed in seeds
        for plan in build_plans(manifest, views, include_sb, include_avatar, seed, protocol, avatar_views)
    ]

    needed = {clip for _, plan in jobs for clip in plan.train_clips() + plan.val_clips()}
    needed |= {clip for _, plan in jobs for view in test_views for clip in plan.test_clips(view)}
    dataset.preload(sorted(needed), workers)

    notation = views_notation(tuple(views))
    signers = signers_notation(set().union(*(plan.training_signers() for _, plan in jobs)))

    def run(job: tuple[int, FoldPlan]) -> list[FoldScore]:
        seed, plan = job
        job_out = None if out is None else Path(out) / f"seed{seed}" / plan.name
        trained = train(plan, config, seed, dataset, train_settings, job_out)
        checkpoint = Checkpoint(config=config, params=trained.best_params, step=trained.best_step)
        return [
            FoldScore(plan.name, seed, view.value, *evaluate(checkpoint, plan, view, dataset))
            for view in test_views
        ]

    if workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            results = list(pool.map(run, jobs))
    else:
        results = [run(job) for job in jobs]

    scores = [score for result in results for score in result]
    rows, seed_rows = aggregate_scores(scores, notation, signers, variant.value, protocol)

    for row in rows:
        logger.event_("result", **row._asdict())

    return MetricsTable(rows=rows, seed_rows=seed_rows, scores=scores)


def relative_drops(table: MetricsTable, reference: ViewAngle = ViewAngle.Front) -> pd.DataFrame:
    """Relative Top-1 drop of every view against the reference view.

    drop = (top1_reference - top1_view) / top1_reference, per training
    setup and variant; NaN when the reference accuracy is 0.
    """
    frame = table.to_frame()
    keys = ["train_views", "signers", "variant"]
    ref = frame[frame["test_view"] == reference.value][[*keys, "top1_mean"]]
    merged = frame[frame["test_view"] != reference.value].merge(ref, on=keys, suffixes=("", "_reference"))

    base = merged["top1_mean_reference"].to_numpy()
    with np.errstate(divide="ignore", invalid="ignore"):
        drop = np.where(base > 0, (base - merged["top1_mean"].to_numpy()) / base, np.nan)

    return pd.DataFrame(
        {
            "train_views": merged["train_views"],
            "signers": merged["signers"],
            "variant": merged["variant"],
            "test_view": merged["test_view"],
            "reference_top1": base,
            "top1": merged["top1_mean"],
            "relative_drop": drop,
        },
    ).reset_index(drop=True)


def relative_increase(with_table: MetricsTable, without_table: MetricsTable) -> pd.DataFrame:
    """Relative Top-1 increase of one setup over another, e.g. with and without Sb.

    increase = (top1_with - top1_without) / top1_without, matched on
    training views, test view and variant.
    """
    keys = ["train_views", "test_view", "variant"]
    merged = with_table.to_frame().merge(without_table.to_frame(), on=keys, suffixes=("_with", "_without"))
    base = merged["top1_mean_without"].to_numpy()

    with np.errstate(divide="ignore", invalid="ignore"):
        increase = np.where(base > 0, (merged["top1_mean_with"].to_numpy() - base) / base, np.nan)

    return pd.DataFrame(
        {
            "train_views": merged["train_views"],
            "test_view": merged["test_view"],
            "variant": merged["variant"],
            "signers_with": merged["signers_with"],
            "signers_without": merged["signers_without"],
            "top1_with": merged["top1_mean_with"],
            "top1_without": base,
            "relative_increase": increase,
        },
    ).reset_index(drop=True)
