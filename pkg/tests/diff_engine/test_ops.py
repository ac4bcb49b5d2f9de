"""Tests Ops."""

from collections.abc import Callable

import numpy as np
import pytest
from diff_engine import (
    EngineError,
    GradientTape,
    PrecisionError,
    ShapeMismatchError,
    Tensor,
    add,
    backward,
    conv1d_time,
    default_dtype,
    gather_rows,
    gelu,
    gradient_check,
    layer_norm,
    linear,
    matmul,
    mean_over_axes,
    multiply,
    parameter,
    segment_sum,
    softmax_cross_entropy,
    sum_over_axes,
)
from scipy.stats import norm

Program = Callable[[], Tensor]
Case = Callable[[np.random.Generator], tuple[Program, list[Tensor]]]

SWEEP_SEEDS = 100
SWEEP_FLOOR = 1e-4
TOLERANCE = 1e-6


def weighted(out: Tensor, rng: np.random.Generator) -> Program:
    """Reduce an op output to a scalar with fixed random weights."""
    weights = Tensor(rng.normal(size=out.shape))

    def reduce(value: Tensor) -> Tensor:
        return sum_over_axes(multiply(value, weights))

    return reduce


def unary(op: Callable[[Tensor], Tensor], shape: tuple[int, ...]) -> Case:
    """Case of an op with one differentiable input."""

    def case(rng: np.random.Generator) -> tuple[Program, list[Tensor]]:
        x = parameter(rng.normal(size=shape))
        reduce = weighted(op(x), rng)
        return lambda: reduce(op(x)), [x]

    return case


def binary(op: Callable[[Tensor, Tensor], Tensor], left: tuple[int, ...], right: tuple[int, ...]) -> Case:
    """Case of an op with two differentiable inputs."""

    def case(rng: np.random.Generator) -> tuple[Program, list[Tensor]]:
        a, b = parameter(rng.normal(size=left)), parameter(rng.normal(size=right))
        reduce = weighted(op(a, b), rng)
        return lambda: reduce(op(a, b)), [a, b]

    return case


def layer_norm_case(rng: np.random.Generator) -> tuple[Program, list[Tensor]]:
    """Layer norm over five channels."""
    x = parameter(rng.normal(size=(2, 3, 5)))
    scale, shift = parameter(rng.normal(size=5)), parameter(rng.normal(size=5))
    reduce = weighted(layer_norm(x, scale, shift), rng)
    return lambda: reduce(layer_norm(x, scale, shift)), [x, scale, shift]


def conv_case(rng: np.random.Generator) -> tuple[Program, list[Tensor]]:
    """Temporal convolution with kernel 3 and a bias."""
    x = parameter(rng.normal(size=(2, 5, 3, 2)))
    weight, bias = parameter(rng.normal(size=(3, 2, 4))), parameter(rng.normal(size=4))
    reduce = weighted(conv1d_time(x, weight, bias), rng)
    return lambda: reduce(conv1d_time(x, weight, bias)), [x, weight, bias]


def linear_case(rng: np.random.Generator) -> tuple[Program, list[Tensor]]:
    """Dense layer with a bias."""
    x = parameter(rng.normal(size=(3, 4)))
    weight, bias = parameter(rng.normal(size=(4, 2))), parameter(rng.normal(size=2))
    reduce = weighted(linear(x, weight, bias), rng)
    return lambda: reduce(linear(x, weight, bias)), [x, weight, bias]


def cross_entropy_case(rng: np.random.Generator) -> tuple[Program, list[Tensor]]:
    """Mean cross-entropy of four rows over five classes."""
    logits = parameter(rng.normal(size=(4, 5)))
    labels = rng.integers(0, 5, size=4)
    return lambda: softmax_cross_entropy(logits, labels), [logits]


CASES: dict[str, Case] = {
    "add": binary(add, (3, 4), (4,)),
    "multiply": binary(multiply, (3, 1), (3, 4)),
    "matmul": binary(matmul, (2, 3, 4), (4, 5)),
    "matmul_batched": binary(matmul, (2, 3, 4), (2, 4, 2)),
    "linear": linear_case,
    "gelu": unary(gelu, (3, 4)),
    "layer_norm": layer_norm_case,
    "conv1d_time": conv_case,
    "gather_rows": unary(lambda x: gather_rows(x, [0, 2, 2, 3, 1]), (4, 3)),
    "gather_rows_axis": unary(lambda x: gather_rows(x, [1, 1, 0], axis=-1), (2, 3, 2)),
    "segment_sum": unary(lambda x: segment_sum(x, [0, 2, 2, 1, 0], 3), (5, 3)),
    "segment_sum_axis": unary(lambda x: segment_sum(x, [1, 0, 1], 2, axis=1), (2, 3, 2)),
    "sum_over_axes": unary(lambda x: sum_over_axes(x, (0, 2)), (2, 3, 4)),
    "mean_over_axes": unary(lambda x: mean_over_axes(x, 1), (2, 3, 4)),
    "softmax_cross_entropy": cross_entropy_case,
}


@pytest.mark.parametrize("name", sorted(CASES))
def test_gradients_match_finite_differences(name: str) -> None:
    """Test analytic gradients against central differences over random inputs."""
    with default_dtype(np.float64):
        for seed in range(SWEEP_SEEDS):
            program, params = CASES[name](np.random.default_rng(seed))
            assert gradient_check(program, params, floor=SWEEP_FLOOR) < TOLERANCE, f"seed {seed}"


def test_matmul_chain_gradient() -> None:
    """Test a three-factor product with the default denominator floor."""
    rng = np.random.default_rng(0)

    with default_dtype(np.float64):
        a, b, c = (parameter(rng.normal(size=shape)) for shape in ((2, 3), (3, 4), (4, 2)))
        weights = Tensor(rng.normal(size=(2, 2)))

        error = gradient_check(lambda: sum_over_axes(multiply(matmul(matmul(a, b), c), weights)), [a, b, c])

    assert error < TOLERANCE


def test_conv_kernel_nine_gradient() -> None:
    """Test the temporal convolution with a nine-tap kernel."""
    rng = np.random.default_rng(1)

    with default_dtype(np.float64):
        x = parameter(rng.normal(size=(6, 2, 3)))
        weight = parameter(rng.normal(size=(9, 3, 2)))
        weights = Tensor(rng.normal(size=(6, 2, 2)))

        error = gradient_check(lambda: sum_over_axes(multiply(conv1d_time(x, weight), weights)), [x, weight])

    assert error < TOLERANCE


def test_gradient_check_needs_binary64() -> None:
    """Test that binary32 parameters are refused."""
    x = parameter([1.0, 2.0])

    with pytest.raises(PrecisionError):
        gradient_check(lambda: sum_over_axes(x), [x])


def test_gradient_check_restores_values() -> None:
    """Test that perturbed parameters are restored."""
    with default_dtype(np.float64):
        x = parameter([0.3, -1.2])
        before = x.numpy()
        gradient_check(lambda: sum_over_axes(gelu(x)), [x])

    assert np.array_equal(x.data, before)


def test_gelu_exact() -> None:
    """Test GeLU against x times the Gaussian CDF."""
    x = np.linspace(-4.0, 4.0, 17)

    with default_dtype(np.float64):
        out = gelu(x).data

    assert np.allclose(out, x * norm.cdf(x), atol=1e-12)


def test_layer_norm_statistics() -> None:
    """Test zero mean and unit variance per position before scale and shift."""
    x = np.random.default_rng(2).normal(3.0, 10.0, size=(4, 6, 8))

    with default_dtype(np.float64):
        out = layer_norm(x, np.ones(8), np.zeros(8)).data

    assert np.allclose(out.mean(axis=-1), 0.0, atol=1e-6)
    assert np.allclose(out.var(axis=-1), 1.0, atol=1e-6)


def test_conv_same_padding() -> None:
    """Test that an impulse kernel shifts frames and pads with zeros."""
    x = np.arange(5, dtype=np.float64).reshape(5, 1, 1)
    weight = np.zeros((3, 1, 1))
    weight[2] = 1.0

    with default_dtype(np.float64):
        out = conv1d_time(x, weight).data

    assert out[:, 0, 0].tolist() == [1.0, 2.0, 3.0, 4.0, 0.0]


def test_conv_centered_identity() -> None:
    """Test that a centered identity tap returns the input in every frame."""
    x = np.random.default_rng(3).normal(size=(6, 4, 3))
    weight = np.zeros((5, 3, 3))
    weight[2] = np.eye(3)

    with default_dtype(np.float64):
        out = conv1d_time(x, weight).data

    assert np.array_equal(out, x)


def test_segment_sum_values() -> None:
    """Test scatter-add into segments, leaving unused segments at zero."""
    with default_dtype(np.float64):
        out = segment_sum(np.array([[1.0], [2.0], [4.0]]), [2, 0, 2], 4).data

    assert out[:, 0].tolist() == [2.0, 0.0, 5.0, 0.0]


def test_cross_entropy_value() -> None:
    """Test the loss of uniform logits and the gradient softmax minus one-hot."""
    with default_dtype(np.float64):
        logits = parameter(np.zeros((2, 4)))

        with GradientTape():
            loss = softmax_cross_entropy(logits, [1, 3])

        grads = backward(loss)

    assert loss.item() == pytest.approx(np.log(4.0))
    assert np.allclose(grads[logits].data[0], [0.125, -0.375, 0.125, 0.125])


@pytest.mark.parametrize(
    "call",
    [
        lambda: add(np.ones((2, 3)), np.ones((4,))),
        lambda: matmul(np.ones((2, 3)), np.ones((4, 2))),
        lambda: matmul(np.ones(3), np.ones((3, 2))),
        lambda: layer_norm(np.ones((2, 3)), np.ones(4), np.zeros(3)),
        lambda: conv1d_time(np.ones((4, 2, 3)), np.ones((2, 3, 1))),
        lambda: conv1d_time(np.ones((4, 2, 3)), np.ones((3, 2, 1))),
        lambda: gather_rows(np.ones((3, 2)), [0, 3]),
        lambda: segment_sum(np.ones((3, 2)), [0, 1], 2),
        lambda: segment_sum(np.ones((3, 2)), [0, 1, 5], 2),
        lambda: sum_over_axes(np.ones((3, 2)), 2),
        lambda: softmax_cross_entropy(Tensor(np.ones((2, 3))), [0]),
    ],
)
def test_shape_mismatch(call: Callable[[], Tensor]) -> None:
    """Test that incompatible shapes are rejected."""
    with pytest.raises(ShapeMismatchError):
        call()


def test_cross_entropy_label_range() -> None:
    """Test that labels outside the classes are rejected."""
    with pytest.raises(EngineError, match="labels must lie"):
        softmax_cross_entropy(Tensor(np.zeros((1, 3))), [3])
