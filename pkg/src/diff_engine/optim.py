"""Module Optim.

Adam with a linear warmup of the learning rate over optimizer steps and
decoupled weight decay restricted to a named subset of the parameters.
"""

from __future__ import annotations

from collections.abc import Collection, Mapping
from dataclasses import dataclass, field

import numpy as np

from .errors import EngineError, ShapeMismatchError
from .tensor import Tensor


@dataclass
class AdamState:
    """Interface representing the optimizer state of one training run."""

    step: int = 0
    first_moment: dict[str, np.ndarray] = field(default_factory=dict)
    second_moment: dict[str, np.ndarray] = field(default_factory=dict)
    beta1: float = 0.9
    beta2: float = 0.999
    epsilon: float = 1e-8


def warmup_lr(base_lr: float, step: int, warmup_steps: int) -> float:
    """Learning rate at `step`: base_lr * min(1, step / warmup_steps)."""
    if warmup_steps <= 0:
        return base_lr
    return base_lr * min(1.0, step / warmup_steps)


def adam_step(  # noqa: PLR0913
    params: Mapping[str, Tensor],
    grads: Mapping[str, Tensor | np.ndarray],
    state: AdamState,
    base_lr: float,
    warmup_steps: int,
    weight_decay_set: Collection[str] = frozenset(),
    weight_decay: float = 0.0,
) -> float:
    """Apply one in-place Adam update.

    Parameters
    ----------
    params : Mapping[str, Tensor]
        Named parameters, updated in place.
    grads : Mapping[str, Tensor | np.ndarray]
        Gradients by parameter name; a missing name counts as a zero gradient.
    state : AdamState
        Moments and step counter, advanced in place.
    base_lr : float
        Learning rate after warmup.
    warmup_steps : int
        Steps of linear warmup; 0 disables it.
    weight_decay_set : Collection[str], optional
        Names of the parameters that receive decoupled decay.
    weight_decay : float, optional
        Decay coefficient, by default 0.

    Returns
    -------
    float
        The effective learning rate of this step.

    Raises
    ------
    ShapeMismatchError
        If a gradient or a stored moment does not match its parameter.
    """
    unknown = set(grads) - set(params)
    if unknown:
        msg = f"adam_step: gradients for unknown parameters {sorted(unknown)}"
        raise EngineError(msg)

    state.step += 1
    lr = warmup_lr(base_lr, state.step, warmup_steps)
    correction1 = 1.0 - state.beta1**state.step
    correction2 = 1.0 - state.beta2**state.step

    for name, param in params.items():
        grad = grads.get(name)
        grad = np.zeros_like(param.data) if grad is None else np.asarray(getattr(grad, "data", grad))

        first = state.first_moment.setdefault(name, np.zeros_like(param.data))
        second = state.second_moment.setdefault(name, np.zeros_like(param.data))

        if grad.shape != param.shape or first.shape != param.shape or second.shape != param.shape:
            raise ShapeMismatchError("adam_step", [param.shape, grad.shape, first.shape, second.shape], name)

        first *= state.beta1
        first += (1.0 - state.beta1) * grad
        second *= state.beta2
        second += (1.0 - state.beta2) * grad * grad

        if name in weight_decay_set and weight_decay:
            param.data *= 1.0 - lr * weight_decay

        update = (first / correction1) / (np.sqrt(second / correction2) + state.epsilon)
        param.data -= (lr * update).astype(param.dtype, copy=False)

    return lr
