"""Module Ops.

The operator set of the engine. Every op takes tensors (constants are
wrapped), validates shapes, computes its output with numpy and hands a
vector-Jacobian product to the tape through `emit`.
"""

from __future__ import annotations

from collections.abc import Sequence
from typing import TYPE_CHECKING

import numpy as np
from scipy.special import erf

from .errors import EngineError, ShapeMismatchError
from .tensor import Tensor, as_tensor, emit

if TYPE_CHECKING:
    from numpy.typing import ArrayLike

SQRT_HALF = np.sqrt(0.5)
INV_SQRT_2PI = 1.0 / np.sqrt(2.0 * np.pi)
LAYER_NORM_EPS = 1e-5


def unbroadcast(grad: np.ndarray, shape: tuple[int, ...]) -> np.ndarray:
    """Sum a broadcast gradient back to `shape`."""
    while grad.ndim > len(shape):
        grad = grad.sum(axis=0)

    for axis, extent in enumerate(shape):
        if extent == 1 and grad.shape[axis] != 1:
            grad = grad.sum(axis=axis, keepdims=True)

    return grad


def _broadcast(op: str, *tensors: Tensor) -> tuple[int, ...]:
    try:
        return np.broadcast_shapes(*(tensor.shape for tensor in tensors))
    except ValueError as exc:
        raise ShapeMismatchError(op, [tensor.shape for tensor in tensors]) from exc


def _axes(op: str, x: Tensor, axes: int | Sequence[int] | None) -> tuple[int, ...]:
    if axes is None:
        return tuple(range(x.ndim))

    axes = (axes,) if isinstance(axes, int) else tuple(axes)

    if any(not -x.ndim <= axis < x.ndim for axis in axes):
        raise ShapeMismatchError(op, [x.shape], f"axes {axes} out of range")

    return tuple(sorted({axis % x.ndim for axis in axes}))


def _incidence(ids: np.ndarray, rows: int, dtype: np.dtype) -> np.ndarray:
    """Matrix S with S[ids[e], e] = 1, so S @ v sums the rows of v by id."""
    matrix = np.zeros((rows, ids.shape[0]), dtype=dtype)
    matrix[ids, np.arange(ids.shape[0])] = 1
    return matrix


def _scatter(values: np.ndarray, ids: np.ndarray, rows: int, axis: int) -> np.ndarray:
    moved = np.moveaxis(values, axis, 0)
    flat = moved.reshape(moved.shape[0], -1)
    summed = _incidence(ids, rows, values.dtype) @ flat
    return np.moveaxis(summed.reshape((rows, *moved.shape[1:])), 0, axis)


def _indices(op: str, x: Tensor, index: ArrayLike, bound: int) -> np.ndarray:
    ids = np.asarray(index, dtype=np.intp)

    if ids.ndim != 1:
        raise ShapeMismatchError(op, [x.shape, ids.shape], "indices must be one-dimensional")

    if ids.size and (ids.min() < 0 or ids.max() >= bound):
        raise ShapeMismatchError(op, [x.shape, ids.shape], f"indices must lie in [0, {bound - 1}]")

    return ids


def add(a: Tensor | ArrayLike, b: Tensor | ArrayLike) -> Tensor:
    """Elementwise sum with numpy broadcasting."""
    a, b = as_tensor(a), as_tensor(b)
    _broadcast("add", a, b)

    def vjp(grad: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
        return unbroadcast(grad, a.shape), unbroadcast(grad, b.shape)

    return emit("add", a.data + b.data, (a, b), vjp)


def multiply(a: Tensor | ArrayLike, b: Tensor | ArrayLike) -> Tensor:
    """Elementwise product with numpy broadcasting."""
    a, b = as_tensor(a), as_tensor(b)
    _broadcast("multiply", a, b)

    def vjp(grad: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
        return unbroadcast(grad * b.data, a.shape), unbroadcast(grad * a.data, b.shape)

    return emit("multiply", a.data * b.data, (a, b), vjp)


def matmul(a: Tensor | ArrayLike, b: Tensor | ArrayLike) -> Tensor:
    """Matrix product over the last two axes, leading axes broadcast.

    Raises
    ------
    ShapeMismatchError
        If an operand has fewer than two axes or inner extents differ.
    """
    a, b = as_tensor(a), as_tensor(b)

    if a.ndim < 2 or b.ndim < 2 or a.shape[-1] != b.shape[-2]:  # noqa: PLR2004
        raise ShapeMismatchError("matmul", [a.shape, b.shape])

    try:
        np.broadcast_shapes(a.shape[:-2], b.shape[:-2])
    except ValueError as exc:
        raise ShapeMismatchError("matmul", [a.shape, b.shape]) from exc

    def vjp(grad: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
        grad_a = unbroadcast(grad @ np.swapaxes(b.data, -1, -2), a.shape)

        if b.ndim == 2:  # noqa: PLR2004
            rows = a.data.reshape(-1, a.shape[-1])
            grad_b = rows.T @ grad.reshape(-1, grad.shape[-1])
        else:
            grad_b = unbroadcast(np.swapaxes(a.data, -1, -2) @ grad, b.shape)

        return grad_a, grad_b

    return emit("matmul", a.data @ b.data, (a, b), vjp)


def linear(x: Tensor, weight: Tensor, bias: Tensor | None = None) -> Tensor:
    """Pointwise dense layer: x (..., in) @ weight (in, out) + bias (out,)."""
    out = matmul(x, weight)
    return out if bias is None else add(out, bias)


def gelu(x: Tensor | ArrayLike) -> Tensor:
    """Exact GeLU, x * Phi(x) with the Gaussian CDF."""
    x = as_tensor(x)
    cdf = 0.5 * (1.0 + erf(x.data * SQRT_HALF))

    def vjp(grad: np.ndarray) -> tuple[np.ndarray]:
        pdf = INV_SQRT_2PI * np.exp(-0.5 * x.data * x.data)
        return (grad * (cdf + x.data * pdf),)

    return emit("gelu", x.data * cdf, (x,), vjp)


def layer_norm(
    x: Tensor,
    scale: Tensor,
    shift: Tensor,
    eps: float = LAYER_NORM_EPS,
) -> Tensor:
    """Normalize over the last (channel) axis, then scale and shift.

    Raises
    ------
    ShapeMismatchError
        If scale or shift is not a vector over the channel axis.
    """
    x, scale, shift = as_tensor(x), as_tensor(scale), as_tensor(shift)
    channels = x.shape[-1:]

    if x.ndim < 1 or scale.shape != channels or shift.shape != channels:
        raise ShapeMismatchError("layer_norm", [x.shape, scale.shape, shift.shape])

    mean = x.data.mean(axis=-1, keepdims=True)
    centered = x.data - mean
    inv_std = 1.0 / np.sqrt((centered * centered).mean(axis=-1, keepdims=True) + eps)
    normed = centered * inv_std

    def vjp(grad: np.ndarray) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
        grad_normed = grad * scale.data
        grad_x = inv_std * (
            grad_normed
            - grad_normed.mean(axis=-1, keepdims=True)
            - normed * (grad_normed * normed).mean(axis=-1, keepdims=True)
        )
        leading = tuple(range(grad.ndim - 1))
        return grad_x, (grad * normed).sum(axis=leading), grad.sum(axis=leading)

    return emit("layer_norm", normed * scale.data + shift.data, (x, scale, shift), vjp)


def conv1d_time(x: Tensor, weight: Tensor, bias: Tensor | None = None) -> Tensor:
    """Convolve along time with zero "same" padding, independently per node.

    Parameters
    ----------
    x : Tensor
        Features of shape (..., T, N, C_in).
    weight : Tensor
        Kernel of shape (K, C_in, C_out) with K odd; tap k reads frame
        t + k - (K - 1) / 2.
    bias : Tensor | None, optional
        Shape (C_out,), by default None.

    Returns
    -------
    Tensor
        Shape (..., T, N, C_out).
    """
    x, weight = as_tensor(x), as_tensor(weight)
    shapes = [x.shape, weight.shape] + ([] if bias is None else [bias.shape])

    if x.ndim < 3 or weight.ndim != 3 or weight.shape[1] != x.shape[-1]:  # noqa: PLR2004
        raise ShapeMismatchError("conv1d_time", shapes)

    if weight.shape[0] % 2 == 0:
        raise ShapeMismatchError("conv1d_time", shapes, "kernel size must be odd")

    if bias is not None and bias.shape != weight.shape[2:]:
        raise ShapeMismatchError("conv1d_time", shapes)

    taps, channels_in, channels_out = weight.shape
    frames, pad = x.shape[-3], (taps - 1) // 2

    widths = [(0, 0)] * x.ndim
    widths[-3] = (pad, pad)
    padded = np.pad(x.data, widths)

    out = np.zeros((*x.shape[:-1], channels_out), dtype=np.result_type(x.dtype, weight.dtype))
    for tap in range(taps):
        out += padded[..., tap : tap + frames, :, :] @ weight.data[tap]

    if bias is not None:
        out += bias.data

    def vjp(grad: np.ndarray) -> tuple[np.ndarray, ...]:
        grad_padded = np.zeros_like(padded, dtype=grad.dtype)
        grad_weight = np.empty_like(weight.data, dtype=grad.dtype)
        flat = grad.reshape(-1, channels_out)

        for tap in range(taps):
            grad_padded[..., tap : tap + frames, :, :] += grad @ weight.data[tap].T
            window = padded[..., tap : tap + frames, :, :].reshape(-1, channels_in)
            grad_weight[tap] = window.T @ flat

        grad_x = grad_padded[..., pad : pad + frames, :, :]
        grads = (grad_x, grad_weight)
        return grads if bias is None else (*grads, flat.sum(axis=0))

    inputs = (x, weight) if bias is None else (x, weight, bias)
    return emit("conv1d_time", out, inputs, vjp)


def gather_rows(x: Tensor, index: ArrayLike, axis: int = 0) -> Tensor:
    """Select entries of `x` along `axis`; repeated indices are allowed."""
    x = as_tensor(x)
    axis = _axes("gather_rows", x, axis)[0]
    rows = x.shape[axis]
    ids = _indices("gather_rows", x, index, rows)

    def vjp(grad: np.ndarray) -> tuple[np.ndarray]:
        return (_scatter(grad, ids, rows, axis),)

    return emit("gather_rows", np.take(x.data, ids, axis=axis), (x,), vjp)


def segment_sum(
    values: Tensor,
    segment_ids: ArrayLike,
    num_segments: int,
    axis: int = 0,
) -> Tensor:
    """Scatter-add the entries of `values` along `axis` into their segments.

    Raises
    ------
    ShapeMismatchError
        If the ids do not label every entry or fall outside the segments.
    """
    values = as_tensor(values)
    axis = _axes("segment_sum", values, axis)[0]
    ids = _indices("segment_sum", values, segment_ids, num_segments)

    if ids.shape[0] != values.shape[axis]:
        raise ShapeMismatchError("segment_sum", [values.shape, ids.shape], f"one id per entry of axis {axis}")

    def vjp(grad: np.ndarray) -> tuple[np.ndarray]:
        return (np.take(grad, ids, axis=axis),)

    return emit("segment_sum", _scatter(values.data, ids, num_segments, axis), (values,), vjp)


def sum_over_axes(x: Tensor, axes: int | Sequence[int] | None = None) -> Tensor:
    """Sum over the given axes (all by default)."""
    x = as_tensor(x)
    axes = _axes("sum_over_axes", x, axes)

    def vjp(grad: np.ndarray) -> tuple[np.ndarray]:
        return (np.broadcast_to(np.expand_dims(grad, axes), x.shape).copy(),)

    return emit("sum_over_axes", x.data.sum(axis=axes), (x,), vjp)


def mean_over_axes(x: Tensor, axes: int | Sequence[int] | None = None) -> Tensor:
    """Average over the given axes (all by default)."""
    x = as_tensor(x)
    axes = _axes("mean_over_axes", x, axes)
    count = int(np.prod([x.shape[axis] for axis in axes]))

    if count == 0:
        raise ShapeMismatchError("mean_over_axes", [x.shape], "empty reduction")

    def vjp(grad: np.ndarray) -> tuple[np.ndarray]:
        return (np.broadcast_to(np.expand_dims(grad, axes) / count, x.shape).copy(),)

    return emit("mean_over_axes", x.data.mean(axis=axes), (x,), vjp)


def log_softmax(logits: np.ndarray) -> np.ndarray:
    """Row-wise log-probabilities (plain numpy, no tape)."""
    shifted = logits - logits.max(axis=-1, keepdims=True)
    return shifted - np.log(np.exp(shifted).sum(axis=-1, keepdims=True))


def softmax_cross_entropy(logits: Tensor, labels: ArrayLike) -> Tensor:
    """Mean negative log-likelihood of `labels` under softmax(logits).

    Parameters
    ----------
    logits : Tensor
        Shape (B, C).
    labels : ArrayLike
        B integer class indices in [0, C).

    Returns
    -------
    Tensor
        Scalar loss.
    """
    logits = as_tensor(logits)
    labels = np.asarray(labels, dtype=np.intp)

    if logits.ndim != 2 or labels.shape != logits.shape[:1]:  # noqa: PLR2004
        raise ShapeMismatchError("softmax_cross_entropy", [logits.shape, labels.shape])

    batch, classes = logits.shape

    if batch == 0:
        raise ShapeMismatchError("softmax_cross_entropy", [logits.shape, labels.shape], "empty batch")

    if labels.min() < 0 or labels.max() >= classes:
        msg = f"softmax_cross_entropy: labels must lie in [0, {classes - 1}]"
        raise EngineError(msg)

    log_probs = log_softmax(logits.data)
    rows = np.arange(batch)
    loss = -log_probs[rows, labels].mean()

    def vjp(grad: np.ndarray) -> tuple[np.ndarray]:
        delta = np.exp(log_probs)
        delta[rows, labels] -= 1.0
        return (grad * delta / batch,)

    return emit("softmax_cross_entropy", np.asarray(loss), (logits,), vjp)


def parameter(data: ArrayLike) -> Tensor:
    """A leaf tensor that requires gradients."""
    return Tensor(data, requires_grad=True)
