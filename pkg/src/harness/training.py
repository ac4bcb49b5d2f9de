"""Module Training.

Mini-batch training of one fold: seeded shuffles per epoch, Adam with warmup
and decoupled decay on the temporal convolutions, model selection on
validation Top-1 and early stopping.
"""

from __future__ import annotations

import json
import time
from dataclasses import dataclass, field
from pathlib import Path
from typing import NamedTuple

import numpy as np
import pandas as pd
from diff_engine import (
    AdamState,
    GradientTape,
    NonFiniteError,
    Tensor,
    adam_step,
    backward,
    softmax_cross_entropy,
)
from fold_planner import FoldPlan
from sign_graph import MessageGraph
from temporal_ponita import ModelConfig, decay_names, forward_batch, init_params, predict, save_checkpoint
from utilities import derive_rng, logger

from .config import TrainSettings, run_config_to_dict
from .data import SignDataset
from .errors import EmptySplitError, HarnessError, TrainingDivergedError
from .metrics import topk_accuracy

SHUFFLE_STREAM = 0x5F
CURVE_COLUMNS = ["epoch", "train_loss", "train_top1", "val_loss", "val_top1"]


class EpochRecord(NamedTuple):
    """Interface representing one point of the training curves."""

    epoch: int
    train_loss: float
    train_top1: float
    val_loss: float
    val_top1: float


@dataclass
class TrainRun:
    """Interface representing a finished training run."""

    config: ModelConfig
    settings: TrainSettings
    plan_name: str
    seed: int
    curves: list[EpochRecord] = field(default_factory=list)
    best_epoch: int = 0
    best_step: int = 0
    best_val_top1: float = -1.0
    best_params: dict[str, Tensor] = field(default_factory=dict)
    best_checkpoint: Path | None = None
    stopped_early: bool = False
    seconds_per_epoch: list[float] = field(default_factory=list)

    def curves_frame(self: TrainRun) -> pd.DataFrame:
        """Curves as a table with fixed columns."""
        return pd.DataFrame(self.curves, columns=CURVE_COLUMNS)

    def timing(self: TrainRun) -> dict[str, float | int]:
        """Wall-clock statistics; kept apart from the deterministic curves."""
        seconds = self.seconds_per_epoch
        return {
            "epochs": len(seconds),
            "best_epoch": self.best_epoch,
            "total_seconds": float(sum(seconds)),
            "mean_seconds_per_epoch": float(np.mean(seconds)) if seconds else 0.0,
        }


def _snapshot(params: dict[str, Tensor]) -> dict[str, Tensor]:
    return {name: Tensor(param.data, requires_grad=True, dtype=param.dtype) for name, param in params.items()}


def _check_labels(labels: np.ndarray, config: ModelConfig) -> None:
    if labels.size and labels.max() >= config.num_classes:
        msg = f"gloss id {int(labels.max())} does not fit num_classes={config.num_classes}"
        raise HarnessError(msg)


def evaluate_split(
    frames: np.ndarray,
    labels: np.ndarray,
    config: ModelConfig,
    params: dict[str, Tensor],
    graph: MessageGraph | None = None,
    batch_size: int = 32,
) -> tuple[float, float]:
    """Mean cross-entropy and Top-1 of a split without recording gradients."""
    logits = predict(frames, config, params, graph, batch_size)
    loss = softmax_cross_entropy(Tensor(logits, dtype=logits.dtype), labels).item()
    return loss, topk_accuracy(logits, labels, 1)


def train(  # noqa: PLR0913
    plan: FoldPlan,
    config: ModelConfig,
    seed: int,
    dataset: SignDataset,
    train_settings: TrainSettings | None = None,
    out: str | Path | None = None,
    graph: MessageGraph | None = None,
) -> TrainRun:
    """Train one fold.

    Parameters
    ----------
    plan : FoldPlan
        The fold; its train and validation lists are used.
    config : ModelConfig
        Model hyperparameters.
    seed : int
        Seed of the initialization and of the per-epoch shuffles.
    dataset : SignDataset
        Clip source, fixed-length and reduced.
    train_settings : TrainSettings | None, optional
        Optimizer and stopping settings, by default TrainSettings().
    out : str | Path | None, optional
        When given, `curves.csv`, `timing.json`, `run.json` and the best
        checkpoint under `checkpoint/` are written there.
    graph : MessageGraph | None, optional
        Message edges, by default the bone graph.

    Returns
    -------
    TrainRun
        Curves and the parameters of the epoch with the best validation
        Top-1 (earliest on ties).

    Raises
    ------
    EmptySplitError
        If the plan has no training or no validation clips.
    TrainingDivergedError
        If a forward op or the update produces non-finite values.
    """
    train_settings = train_settings or TrainSettings()
    train_ids, val_ids = plan.train_clips(), plan.val_clips()

    if not train_ids:
        raise EmptySplitError("train")
    if not val_ids:
        raise EmptySplitError("val")

    x_train, y_train = dataset.arrays(train_ids)
    x_val, y_val = dataset.arrays(val_ids)
    _check_labels(np.concatenate([y_train, y_val]), config)

    params = init_params(config, seed)
    decay = decay_names(config)
    state = AdamState()
    run = TrainRun(config=config, settings=train_settings, plan_name=plan.name, seed=seed)
    since_best = 0

    logger.event_("train", plan=plan.name, seed=seed, train=len(train_ids), val=len(val_ids))

    for epoch in range(1, train_settings.max_epochs + 1):
        start = time.perf_counter()
        order = derive_rng(seed, SHUFFLE_STREAM, plan.block_index, plan.fold_index, epoch).permutation(
            len(train_ids),
        )
        loss_sum, correct = 0.0, 0.0

        for batch, first in enumerate(range(0, len(order), train_settings.batch_size)):
            rows = order[first : first + train_settings.batch_size]

            try:
                with GradientTape():
                    logits = forward_batch(x_train[rows], config, params, graph)
                    loss = softmax_cross_entropy(logits, y_train[rows])
            except NonFiniteError as err:
                raise TrainingDivergedError(epoch, batch, err.op) from err

            grads = backward(loss)
            named = {name: grads[param] for name, param in params.items() if param in grads}
            adam_step(
                params,
                named,
                state,
                train_settings.learning_rate,
                train_settings.warmup_steps,
                decay,
                train_settings.weight_decay,
            )

            if not all(np.all(np.isfinite(param.data)) for param in params.values()):
                raise TrainingDivergedError(epoch, batch, "adam_step")

            loss_sum += loss.item() * len(rows)
            correct += topk_accuracy(logits.data, y_train[rows], 1) * len(rows)

        val_loss, val_top1 = evaluate_split(x_val, y_val, config, params, graph, train_settings.batch_size)
        record = EpochRecord(
            epoch=epoch,
            train_loss=loss_sum / len(order),
            train_top1=correct / len(order),
            val_loss=val_loss,
            val_top1=val_top1,
        )
        run.curves.append(record)
        run.seconds_per_epoch.append(time.perf_counter() - start)

        logger.event_("epoch", **record._asdict(), seconds=run.seconds_per_epoch[-1])

        if val_top1 > run.best_val_top1:
            run.best_epoch, run.best_step, run.best_val_top1 = epoch, state.step, val_top1
            run.best_params = _snapshot(params)
            since_best = 0
        else:
            since_best += 1

        target = train_settings.target_train_top1
        if target is not None and record.train_top1 >= target:
            logger.event_("target_reached", epoch=epoch, train_top1=record.train_top1)
            break

        if since_best > train_settings.patience:
            run.stopped_early = True
            logger.event_("early_stop", epoch=epoch, best_epoch=run.best_epoch, best_val_top1=run.best_val_top1)
            break

    if out is not None:
        write_run(run, out)

    return run


def write_run(run: TrainRun, out: str | Path) -> Path:
    """Write curves, timing, run description and best checkpoint into `out`."""
    out = Path(out)
    out.mkdir(parents=True, exist_ok=True)

    run.curves_frame().to_csv(out / "curves.csv", index=False, float_format="%.10g")
    (out / "timing.json").write_text(json.dumps(run.timing(), indent=2) + "\n", encoding="utf-8")

    description = {
        "plan": run.plan_name,
        "seed": run.seed,
        "best_epoch": run.best_epoch,
        "best_val_top1": run.best_val_top1,
        "stopped_early": run.stopped_early,
        "config": run_config_to_dict(run.config, run.settings),
    }
    (out / "run.json").write_text(json.dumps(description, indent=2) + "\n", encoding="utf-8")

    run.best_checkpoint = out / "checkpoint"
    save_checkpoint(
        run.best_checkpoint,
        run.best_params,
        run.config,
        step=run.best_step,
        metadata={"plan": run.plan_name, "seed": run.seed, "epoch": run.best_epoch, "val_top1": run.best_val_top1},
    )
    logger.event_("checkpoint", path=run.best_checkpoint, epoch=run.best_epoch)

    return run.best_checkpoint
