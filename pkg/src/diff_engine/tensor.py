"""Module Tensor.

Dense tensors and the gradient tape. Operations executed while a tape is
active, with at least one input requiring gradients, append a record holding
their inputs, their output and a vector-Jacobian product closure. `backward`
replays the records of the loss's tape in reverse.
"""

from __future__ import annotations

import threading
from collections.abc import Callable, Iterator
from contextlib import contextmanager
from dataclasses import dataclass
from typing import TYPE_CHECKING, Any

import numpy as np

from .errors import NonFiniteError, NotScalarError

if TYPE_CHECKING:
    from numpy.typing import ArrayLike, DTypeLike

VJP = Callable[[np.ndarray], tuple[np.ndarray | None, ...]]

_state = threading.local()


def _dtype() -> np.dtype:
    return getattr(_state, "dtype", np.dtype(np.float32))


def _tapes() -> list[GradientTape]:
    if not hasattr(_state, "tapes"):
        _state.tapes = []
    return _state.tapes


@contextmanager
def default_dtype(dtype: DTypeLike) -> Iterator[np.dtype]:
    """Switch the dtype of newly created tensors, e.g. to float64 for checks."""
    previous = _dtype()
    _state.dtype = np.dtype(dtype)
    try:
        yield _state.dtype
    finally:
        _state.dtype = previous


def active_tape() -> GradientTape | None:
    """The innermost tape of the current thread, if any."""
    tapes = _tapes()
    return tapes[-1] if tapes else None


class Tensor:
    """Interface representing a dense tensor.

    Tensors hash by identity so they can key gradient maps.
    """

    def __init__(
        self: Tensor,
        data: ArrayLike,
        requires_grad: bool = False,
        dtype: DTypeLike | None = None,
    ) -> None:
        """Initiate a tensor.

        Parameters
        ----------
        data : ArrayLike
            The values, copied into a contiguous array.
        requires_grad : bool, optional
            Whether gradients flow to this tensor, by default False.
        dtype : DTypeLike | None, optional
            The value type, by default the current default dtype (float32).
        """
        self.data = np.array(data, dtype=_dtype() if dtype is None else dtype, order="C")
        self.requires_grad = requires_grad
        self.tape: GradientTape | None = None

    @property
    def shape(self: Tensor) -> tuple[int, ...]:
        """The extents."""
        return self.data.shape

    @property
    def ndim(self: Tensor) -> int:
        """The number of axes."""
        return self.data.ndim

    @property
    def dtype(self: Tensor) -> np.dtype:
        """The value type."""
        return self.data.dtype

    def numpy(self: Tensor) -> np.ndarray:
        """A copy of the values."""
        return self.data.copy()

    def item(self: Tensor) -> float:
        """The value of a one-element tensor."""
        return float(self.data.item())

    def detach(self: Tensor) -> Tensor:
        """A leaf tensor sharing no history."""
        return Tensor(self.data, dtype=self.dtype)

    def __repr__(self: Tensor) -> str:
        """Tensor representation."""
        flag = ", requires_grad=True" if self.requires_grad else ""
        return f"Tensor(shape={self.shape}, dtype={self.dtype}{flag})"

    def __add__(self: Tensor, other: Any) -> Tensor:  # noqa: ANN401
        """Broadcasting addition."""
        from .ops import add  # noqa: PLC0415

        return add(self, other)

    __radd__ = __add__

    def __mul__(self: Tensor, other: Any) -> Tensor:  # noqa: ANN401
        """Broadcasting elementwise product."""
        from .ops import multiply  # noqa: PLC0415

        return multiply(self, other)

    __rmul__ = __mul__

    def __matmul__(self: Tensor, other: Any) -> Tensor:  # noqa: ANN401
        """Matrix product."""
        from .ops import matmul  # noqa: PLC0415

        return matmul(self, other)


@dataclass(frozen=True, eq=False)
class TapeRecord:
    """Interface representing one recorded operation."""

    op: str
    inputs: tuple[Tensor, ...]
    output: Tensor
    vjp: VJP


class GradientTape:
    """Interface representing the ordered record of a forward pass.

    Used as a context manager; tapes nest and the innermost one records.
    """

    def __init__(self: GradientTape) -> None:
        """GradientTape init."""
        self.records: list[TapeRecord] = []

    def __enter__(self: GradientTape) -> GradientTape:
        """Start recording on this thread."""
        _tapes().append(self)
        return self

    def __exit__(self: GradientTape, *args: object) -> None:
        """Stop recording."""
        _tapes().remove(self)

    def __len__(self: GradientTape) -> int:
        """Number of records."""
        return len(self.records)

    def record(self: GradientTape, op: str, inputs: tuple[Tensor, ...], output: Tensor, vjp: VJP) -> None:
        """Append a record; its inputs are leaves or outputs of earlier records."""
        output.tape = self
        self.records.append(TapeRecord(op=op, inputs=inputs, output=output, vjp=vjp))


def as_tensor(value: Tensor | ArrayLike) -> Tensor:
    """Wrap constants into leaf tensors without gradients."""
    return value if isinstance(value, Tensor) else Tensor(value)


def emit(op: str, data: np.ndarray, inputs: tuple[Tensor, ...], vjp: VJP) -> Tensor:
    """Wrap an op result, check it is finite and record it when needed.

    Raises
    ------
    NonFiniteError
        If the output holds NaN or infinity.
    """
    if not np.all(np.isfinite(data)):
        raise NonFiniteError(op, data.shape)

    tape = active_tape()
    tracked = tape is not None and any(tensor.requires_grad for tensor in inputs)

    dtype = np.result_type(*(tensor.dtype for tensor in inputs)) if inputs else data.dtype
    output = Tensor(data, requires_grad=tracked, dtype=dtype)

    if tracked:
        tape.record(op, inputs, output, vjp)

    return output


def backward(loss: Tensor) -> dict[Tensor, Tensor]:
    """Reverse-mode accumulation from a scalar loss.

    Parameters
    ----------
    loss : Tensor
        A scalar produced under an active tape.

    Returns
    -------
    dict[Tensor, Tensor]
        Gradient per leaf tensor with `requires_grad` that the loss depends
        on. Leaves without a path to the loss get no entry.

    Raises
    ------
    NotScalarError
        If the loss is not zero-dimensional.
    """
    if loss.ndim != 0:
        raise NotScalarError(loss.shape)

    if loss.tape is None:
        return {loss: Tensor(np.ones_like(loss.data), dtype=loss.dtype)} if loss.requires_grad else {}

    records = loss.tape.records
    end = next(index for index in range(len(records) - 1, -1, -1) if records[index].output is loss)
    produced = {id(record.output) for record in records[: end + 1]}

    grads: dict[int, np.ndarray] = {id(loss): np.ones_like(loss.data)}
    leaves: dict[int, Tensor] = {}

    for record in reversed(records[: end + 1]):
        upstream = grads.pop(id(record.output), None)

        if upstream is None:
            continue

        for tensor, grad in zip(record.inputs, record.vjp(upstream), strict=True):
            if grad is None or not tensor.requires_grad:
                continue

            key = id(tensor)
            grads[key] = grads[key] + grad if key in grads else grad

            if key not in produced:
                leaves[key] = tensor

    return {
        tensor: Tensor(grads[key].astype(tensor.dtype, copy=False), dtype=tensor.dtype)
        for key, tensor in leaves.items()
    }
