"""Tests Config."""

import pytest
from temporal_ponita import (
    ConfigError,
    InputFeatureMode,
    ModelConfig,
    Variant,
    decay_names,
    parameter_count,
    parameter_shapes,
)

DEFAULT_COUNT = 706_632


def test_default_parameter_count() -> None:
    """Test the size of the default classifier."""
    assert parameter_count(ModelConfig()) == DEFAULT_COUNT


def test_baseline_parameter_count() -> None:
    """Test that two-component attributes widen the basis projection by one row."""
    baseline = ModelConfig(variant=Variant.Baseline)

    assert baseline.attribute_dim == 2
    assert parameter_count(baseline) == DEFAULT_COUNT + 128


def test_optional_parameters() -> None:
    """Test the residual scales and the depth feature."""
    scaled = ModelConfig(layer_scale=1e-6)
    depth = ModelConfig(input_feature_mode=InputFeatureMode.NodeIdPlusDepth)

    assert "layers.0.spatial.layer_scale" in parameter_shapes(scaled)
    assert parameter_count(scaled) == DEFAULT_COUNT + 6 * 64
    assert depth.input_dim == 28
    assert parameter_shapes(depth)["embed.weight"] == (28, 64)


def test_orientation_attributes() -> None:
    """Test the attribute width of the orientation grid."""
    config = ModelConfig(num_orientations=4, poly_degree=2)

    assert config.attribute_dim == 3
    assert config.poly_dim == 1 + 3 + 9


def test_decay_names() -> None:
    """Test that only temporal convolution kernels decay."""
    names = decay_names(ModelConfig(num_layers=2))

    assert names == {
        f"layers.{index}.temporal.{conv}.weight" for index in range(2) for conv in ("conv1", "conv2")
    }


@pytest.mark.parametrize(
    "changes",
    [
        {"hidden_dim": 0},
        {"temporal_kernel": 4},
        {"num_classes": -1},
        {"layer_scale": -0.1},
        {"num_layers": 1.5},
        {"basis_dim": True},
    ],
)
def test_invalid(changes: dict) -> None:
    """Test rejected hyperparameters."""
    with pytest.raises(ConfigError):
        ModelConfig(**changes)


def test_dict_round_trip() -> None:
    """Test the JSON mapping of a config."""
    config = ModelConfig(hidden_dim=8, variant=Variant.Baseline, input_feature_mode=InputFeatureMode.NodeIdPlusDepth)
    document = config.to_dict()

    assert document["variant"] == "Baseline"
    assert document["input_feature_mode"] == "NodeIdPlusDepth"
    assert ModelConfig.from_dict(document) == config


def test_from_dict_errors() -> None:
    """Test unknown keys and enumeration values."""
    with pytest.raises(ConfigError, match="unknown model config keys: depth"):
        ModelConfig.from_dict({"depth": 3})

    with pytest.raises(ConfigError):
        ModelConfig.from_dict({"input_feature_mode": "Everything"})

    with pytest.raises(ConfigError, match="unknown variant"):
        ModelConfig.from_dict({"variant": "equivariant"})


def test_variant_parse() -> None:
    """Test case-insensitive variant names."""
    assert Variant.parse(" invariant ") is Variant.Invariant
    assert Variant.parse("BASELINE") is Variant.Baseline
