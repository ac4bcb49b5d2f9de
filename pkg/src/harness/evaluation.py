"""Module Evaluation."""

from __future__ import annotations

from pathlib import Path
from typing import NamedTuple

from fold_planner import FoldPlan
from sign_data import ViewAngle
from sign_graph import MessageGraph
from temporal_ponita import Checkpoint, load_checkpoint, predict
from utilities import logger

from .data import SignDataset
from .errors import EmptySplitError
from .metrics import topk_accuracy

TOP3 = 3


class Scores(NamedTuple):
    """Interface representing the test accuracies of one fold and view."""

    top1: float
    top3: float


def evaluate(
    checkpoint: Checkpoint | str | Path,
    plan: FoldPlan,
    test_view: ViewAngle | None,
    dataset: SignDataset,
    graph: MessageGraph | None = None,
) -> Scores:
    """Score a checkpoint on the plan's test clips in one camera view.

    Parameters
    ----------
    checkpoint : Checkpoint | str | Path
        A loaded checkpoint or its directory.
    plan : FoldPlan
        The fold whose test signer is scored.
    test_view : ViewAngle | None
        View of the test clips, by default (None) the plan's test view.
    dataset : SignDataset
        The clip source.
    graph : MessageGraph | None, optional
        Message edges, by default the bone graph.

    Returns
    -------
    Scores
        Top-1 and Top-k with k = min(3, num_classes).

    Raises
    ------
    MissingClipsError
        If a test clip is absent from the dataset.
    """
    if not isinstance(checkpoint, Checkpoint):
        checkpoint = load_checkpoint(checkpoint)

    view = test_view or plan.test_view
    clip_ids = plan.test_clips(view)

    if not clip_ids:
        raise EmptySplitError("test")

    frames, labels = dataset.arrays(clip_ids)
    logits = predict(frames, checkpoint.config, checkpoint.params, graph)
    scores = Scores(
        top1=topk_accuracy(logits, labels, 1),
        top3=topk_accuracy(logits, labels, min(TOP3, checkpoint.config.num_classes)),
    )

    logger.event_("evaluate", plan=plan.name, view=view.value, clips=len(clip_ids), **scores._asdict())

    return scores
