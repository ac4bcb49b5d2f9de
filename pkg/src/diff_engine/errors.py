"""Module Errors."""

from __future__ import annotations

from collections.abc import Sequence


class EngineError(Exception):
    """Base error of the differentiation engine."""

    def __init__(self: EngineError, message: str) -> None:
        """EngineError init."""
        self.message = message
        super().__init__(self.message)


class ShapeMismatchError(EngineError, ValueError):
    """Operand shapes are incompatible for an operation."""

    def __init__(self: ShapeMismatchError, op: str, shapes: Sequence[tuple[int, ...]], detail: str = "") -> None:
        """ShapeMismatchError init."""
        self.op = op
        self.shapes = tuple(tuple(shape) for shape in shapes)
        listed = ", ".join(str(shape) for shape in self.shapes)
        suffix = f": {detail}" if detail else ""
        super().__init__(f"{op}: incompatible shapes {listed}{suffix}")


class NonFiniteError(EngineError, FloatingPointError):
    """A forward operation produced NaN or infinity."""

    def __init__(self: NonFiniteError, op: str, shape: tuple[int, ...]) -> None:
        """NonFiniteError init."""
        self.op = op
        self.shape = tuple(shape)
        super().__init__(f"{op}: non-finite values in output of shape {self.shape}")


class NotScalarError(EngineError, ValueError):
    """Backward was asked to start from a non-scalar tensor."""

    def __init__(self: NotScalarError, shape: tuple[int, ...]) -> None:
        """NotScalarError init."""
        self.shape = tuple(shape)
        super().__init__(f"backward needs a scalar loss, got shape {self.shape}")


class PrecisionError(EngineError):
    """Gradient checking requires binary64 tensors."""

    def __init__(self: PrecisionError, dtype: object) -> None:
        """PrecisionError init."""
        self.dtype = dtype
        super().__init__(f"gradient checking needs float64 parameters, got {dtype}")
