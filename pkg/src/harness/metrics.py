"""Module Metrics."""

from __future__ import annotations

from collections.abc import Sequence

import numpy as np

from .errors import EmptySplitError, InvalidTopKError


def label_ranks(logits: np.ndarray, labels: np.ndarray) -> np.ndarray:
    """Rank of the true class in every row, 0 for the top class.

    Ties are broken by the lower class index: a class ranks ahead of the
    label when its logit is greater, or equal with a smaller index.
    """
    logits = np.asarray(logits)
    labels = np.asarray(labels, dtype=np.intp)
    target = logits[np.arange(logits.shape[0]), labels][:, None]
    lower = np.arange(logits.shape[1])[None, :] < labels[:, None]
    return np.count_nonzero((logits > target) | ((logits == target) & lower), axis=1)


def topk_accuracy(logits: np.ndarray, labels: np.ndarray, k: int) -> float:
    """Fraction of rows whose label is among the k highest logits.

    Parameters
    ----------
    logits : np.ndarray
        Scores of shape (N, C).
    labels : np.ndarray
        N class indices.
    k : int
        Cut-off, 1 <= k <= C.

    Returns
    -------
    float
        The accuracy in [0, 1].

    Raises
    ------
    InvalidTopKError
        If k is out of range.
    EmptySplitError
        If there are no rows.
    """
    logits = np.asarray(logits)

    if logits.ndim != 2 or not 1 <= k <= logits.shape[1]:  # noqa: PLR2004
        raise InvalidTopKError(k, logits.shape[-1] if logits.ndim else 0)

    if logits.shape[0] == 0:
        raise EmptySplitError("metrics")

    return float(np.mean(label_ranks(logits, labels) < k))


def mean_std(values: Sequence[float]) -> tuple[float, float]:
    """Mean and population standard deviation (ddof 0)."""
    array = np.asarray(values, dtype=np.float64)
    return float(array.mean()), float(array.std())
