"""Tests end-to-end accuracy behaviour on synthetic data."""

from pathlib import Path

import numpy as np
import pytest
from fold_planner import make_blocks
from harness import SignDataset, TrainSettings, evaluate, train
from multiview_synth import generate_dataset
from sign_data import ALL_VIEWS, DatasetManifest, ViewAngle
from temporal_ponita import Checkpoint, ModelConfig, Variant

SEEDS = range(5)
BENCHMARK = TrainSettings(max_epochs=100, patience=20, frames=32)
SIDE_VIEWS = (ViewAngle.Left, ViewAngle.Right)


def fit(
    manifest: DatasetManifest,
    views: tuple[ViewAngle, ...],
    variant: Variant,
    seed: int,
) -> dict[ViewAngle, float]:
    """Train the first block fold and return its test Top-1 per view."""
    plan = make_blocks(manifest, views, include_sb=False, seed=seed)[0]
    config = ModelConfig(num_classes=len(manifest.vocabulary), variant=variant)
    dataset = SignDataset(manifest, BENCHMARK.frames)
    run = train(plan, config, seed, dataset, BENCHMARK)
    checkpoint = Checkpoint(config=config, params=run.best_params, step=run.best_step)

    return {view: evaluate(checkpoint, plan, view, dataset).top1 for view in ALL_VIEWS}


@pytest.fixture(scope="module")
def benchmarks(tmp_path_factory: pytest.TempPathFactory) -> dict[int, DatasetManifest]:
    """Twenty classes with four signers, one dataset per seed."""
    return {seed: generate_dataset(20, 4, 32, seed, tmp_path_factory.mktemp(f"bench{seed}")) for seed in SEEDS}


@pytest.mark.slow()
def test_overfit(tmp_path: Path) -> None:
    """Test that the default model fits a small training split."""
    manifest = generate_dataset(10, 4, 32, 7, tmp_path)
    plan = make_blocks(manifest, ALL_VIEWS, include_sb=False, seed=7)[0]
    settings = TrainSettings(max_epochs=500, patience=500, frames=32, target_train_top1=0.99)
    config = ModelConfig(num_classes=10)
    dataset = SignDataset(manifest, settings.frames)

    run = train(plan, config, 7, dataset, settings)

    assert run.curves[-1].train_top1 >= 0.99


@pytest.mark.slow()
def test_view_sensitivity(benchmarks: dict[int, DatasetManifest]) -> None:
    """Test that front-only training degrades on side views and multi-view training helps."""
    drops, helped = 0, 0

    for seed, manifest in benchmarks.items():
        front_only = fit(manifest, (ViewAngle.Front,), Variant.Baseline, seed)
        all_views = fit(manifest, ALL_VIEWS, Variant.Baseline, seed)
        front = front_only[ViewAngle.Front]
        side = np.mean([front_only[view] for view in SIDE_VIEWS])

        drops += front > 0 and (front - side) / front >= 0.3
        helped += np.mean([all_views[view] for view in SIDE_VIEWS]) > side

    assert drops >= 4
    assert helped >= 4


@pytest.mark.slow()
def test_invariant_beats_baseline(benchmarks: dict[int, DatasetManifest]) -> None:
    """Test that the invariant variant is at least as accurate as the baseline."""
    wins = 0

    for seed, manifest in benchmarks.items():
        invariant = fit(manifest, ALL_VIEWS, Variant.Invariant, seed)
        baseline = fit(manifest, ALL_VIEWS, Variant.Baseline, seed)
        wins += np.mean(list(invariant.values())) >= np.mean(list(baseline.values()))

    assert wins >= 4
