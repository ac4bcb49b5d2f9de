"""Module Gradcheck."""

from __future__ import annotations

from collections.abc import Callable, Sequence

import numpy as np

from .errors import NotScalarError, PrecisionError
from .tensor import GradientTape, Tensor, backward

DEFAULT_STEP = 1e-5
DENOMINATOR_FLOOR = 1e-8


def numeric_gradient(f: Callable[[], Tensor], param: Tensor, h: float = DEFAULT_STEP) -> np.ndarray:
    """Central differences of the scalar `f()` with respect to every entry of `param`."""
    grad = np.zeros_like(param.data)
    flat = param.data.reshape(-1)

    for index in range(flat.size):
        original = flat[index]

        flat[index] = original + h
        upper = f().item()
        flat[index] = original - h
        lower = f().item()

        flat[index] = original
        grad.reshape(-1)[index] = (upper - lower) / (2.0 * h)

    return grad


def gradient_check(
    f: Callable[[], Tensor],
    params: Sequence[Tensor],
    h: float = DEFAULT_STEP,
    floor: float = DENOMINATOR_FLOOR,
) -> float:
    """Compare tape gradients against central finite differences.

    Parameters
    ----------
    f : Callable[[], Tensor]
        Program returning a scalar loss from the current parameter values.
    params : Sequence[Tensor]
        Float64 leaves to check; their values are perturbed in place and
        restored.
    h : float, optional
        Finite-difference step, by default 1e-5.
    floor : float, optional
        Lower bound of the relative error denominator, by default 1e-8.

    Returns
    -------
    float
        max |analytic - numeric| / max(|analytic|, |numeric|, floor) over
        every coordinate of every parameter.

    Raises
    ------
    PrecisionError
        If a parameter is not float64.
    """
    for param in params:
        if param.dtype != np.float64:
            raise PrecisionError(param.dtype)

    with GradientTape():
        loss = f()

    if loss.ndim != 0:
        raise NotScalarError(loss.shape)

    analytic = backward(loss)
    worst = 0.0

    for param in params:
        expected = analytic[param].data if param in analytic else np.zeros_like(param.data)
        numeric = numeric_gradient(f, param, h)
        denominator = np.maximum(np.maximum(np.abs(expected), np.abs(numeric)), floor)
        error = np.abs(expected - numeric) / denominator
        worst = max(worst, float(error.max(initial=0.0)))

    return worst
