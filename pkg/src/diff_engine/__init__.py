"""Package Diff Engine."""

from .errors import EngineError, NonFiniteError, NotScalarError, PrecisionError, ShapeMismatchError
from .gradcheck import gradient_check, numeric_gradient
from .ops import (
    add,
    conv1d_time,
    gather_rows,
    gelu,
    layer_norm,
    linear,
    log_softmax,
    matmul,
    mean_over_axes,
    multiply,
    parameter,
    segment_sum,
    softmax_cross_entropy,
    sum_over_axes,
)
from .optim import AdamState, adam_step, warmup_lr
from .tensor import GradientTape, TapeRecord, Tensor, active_tape, backward, default_dtype

__all__ = [
    "AdamState",
    "EngineError",
    "GradientTape",
    "NonFiniteError",
    "NotScalarError",
    "PrecisionError",
    "ShapeMismatchError",
    "TapeRecord",
    "Tensor",
    "active_tape",
    "adam_step",
    "add",
    "backward",
    "conv1d_time",
    "default_dtype",
    "gather_rows",
    "gelu",
    "gradient_check",
    "layer_norm",
    "linear",
    "log_softmax",
    "matmul",
    "mean_over_axes",
    "multiply",
    "numeric_gradient",
    "parameter",
    "segment_sum",
    "softmax_cross_entropy",
    "sum_over_axes",
    "warmup_lr",
]
