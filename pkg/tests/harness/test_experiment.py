"""Tests Experiment."""

import itertools
from pathlib import Path

import numpy as np
import pandas as pd
import pytest
from fold_planner import NOVEL_KIND
from harness import (
    FoldScore,
    HarnessError,
    MetricsRow,
    MetricsTable,
    TrainSettings,
    aggregate_scores,
    build_plans,
    relative_drops,
    relative_increase,
    run_experiment,
)
from sign_data import DatasetManifest, ViewAngle
from temporal_ponita import ModelConfig, Variant

TOY = ModelConfig(hidden_dim=8, num_layers=1, temporal_kernel=3, basis_dim=8, widening_factor=2, num_classes=4)
ONE_EPOCH = TrainSettings(batch_size=8, max_epochs=1, frames=8)


def random_scores(seed: int, plans: int, seeds: int) -> list[FoldScore]:
    """Scores of every (plan, seed, view) with random accuracies."""
    rng = np.random.default_rng(seed)
    return [
        FoldScore(f"p{plan}", run, view.value, float(rng.uniform()), float(rng.uniform()))
        for plan, run, view in itertools.product(range(plans), range(seeds), ViewAngle)
    ]


def test_aggregate_oracle() -> None:
    """Test fold-level and seed-level rows against a direct recomputation."""
    scores = random_scores(0, plans=9, seeds=3)

    rows, seed_rows = aggregate_scores(scores, "f", "123A", "Invariant")

    assert [row.test_view for row in rows] == ["Left", "Front", "Right"]

    for row, seed_row in zip(rows, seed_rows, strict=True):
        per_plan = [
            np.mean([score.top1 for score in scores if score.plan == f"p{plan}" and score.test_view == row.test_view])
            for plan in range(9)
        ]
        per_seed = [
            np.mean([score.top3 for score in scores if score.seed == run and score.test_view == row.test_view])
            for run in range(3)
        ]
        assert row.n_folds == 9
        assert abs(row.top1_mean - np.mean(per_plan)) < 1e-12
        assert abs(row.top1_std - np.std(per_plan)) < 1e-12
        assert seed_row.n_folds == 3
        assert abs(seed_row.top3_mean - np.mean(per_seed)) < 1e-12
        assert abs(seed_row.top3_std - np.std(per_seed)) < 1e-12


def test_aggregate_novel_signer() -> None:
    """Test that a single-fold protocol aggregates over seeds."""
    scores = random_scores(1, plans=1, seeds=4)

    rows, seed_rows = aggregate_scores(scores, "lfr", "12A", "Baseline", NOVEL_KIND)

    assert rows == seed_rows
    assert rows[0].n_folds == 4


def test_build_plans(synthetic: DatasetManifest) -> None:
    """Test both protocols and an unknown one."""
    assert len(build_plans(synthetic, (ViewAngle.Front,), False, True, 0)) == 9
    assert len(build_plans(synthetic, (ViewAngle.Front,), False, True, 0, NOVEL_KIND)) == 1

    with pytest.raises(HarnessError, match="unknown protocol"):
        build_plans(synthetic, (ViewAngle.Front,), False, True, 0, "leave_one_out")


def test_run_experiment(tmp_path: Path, synthetic: DatasetManifest) -> None:
    """Test one epoch of every Front-only fold scored in every view."""
    table = run_experiment(
        synthetic,
        (ViewAngle.Front,),
        Variant.Baseline,
        include_sb=False,
        include_avatar=True,
        seeds=[0],
        config=TOY,
        train_settings=ONE_EPOCH,
        out=tmp_path,
        workers=2,
    )

    assert [(row.train_views, row.signers, row.variant, row.n_folds) for row in table.rows] == [
        ("f", "123A", "Baseline", 9),
    ] * 3
    assert len(table.scores) == 27
    assert (tmp_path / "seed0" / "blocks_b2_f2" / "curves.csv").is_file()


def test_run_experiment_needs_seeds(synthetic: DatasetManifest) -> None:
    """Test an empty seed list."""
    with pytest.raises(HarnessError, match="at least one seed"):
        run_experiment(synthetic, (ViewAngle.Front,), Variant.Invariant, False, True, [])


def table_of(*rows: tuple[str, str, str, float]) -> MetricsTable:
    """Table from (train_views, signers, test_view, top1) rows."""
    return MetricsTable(
        rows=[MetricsRow(views, signers, view, "Invariant", top1, 0.0, top1, 0.0, 9) for views, signers, view, top1 in rows],
    )


def test_relative_drops() -> None:
    """Test drops of the side views against Front."""
    table = table_of(("f", "123A", "Left", 0.2), ("f", "123A", "Front", 0.8), ("f", "123A", "Right", 0.6))

    drops = relative_drops(table)

    assert drops["test_view"].tolist() == ["Left", "Right"]
    assert drops["relative_drop"].tolist() == pytest.approx([0.75, 0.25])


def test_relative_drop_of_zero_reference() -> None:
    """Test that a zero Front accuracy gives no drop."""
    drops = relative_drops(table_of(("f", "123A", "Front", 0.0), ("f", "123A", "Left", 0.0)))

    assert np.isnan(drops["relative_drop"].iloc[0])


def test_relative_increase() -> None:
    """Test the gain of adding Sb."""
    with_sb = table_of(("f", "123A+Sb", "Front", 0.6))
    without = table_of(("f", "123A", "Front", 0.5))

    increase = relative_increase(with_sb, without)

    assert increase["relative_increase"].tolist() == pytest.approx([0.2])
    assert increase["signers_with"].tolist() == ["123A+Sb"]


def test_frame_round_trip() -> None:
    """Test rebuilding a table from its frame and rejecting missing columns."""
    table = table_of(("lfr", "123A", "Front", 0.5))

    assert MetricsTable.from_frame(table.to_frame()).rows == table.rows

    with pytest.raises(HarnessError, match="lacks columns"):
        MetricsTable.from_frame(pd.DataFrame({"train_views": ["f"]}))
