"""Module Config."""

from __future__ import annotations

from collections.abc import Mapping
from dataclasses import asdict, dataclass, fields, replace
from enum import Enum
from typing import Any

from sign_graph.skeleton import NUM_NODES

from .errors import ConfigError


class InputFeatureMode(Enum):
    """Node input features: identity one-hot, optionally with the depth value."""

    NodeIdOnly = "NodeIdOnly"
    NodeIdPlusDepth = "NodeIdPlusDepth"


class Variant(Enum):
    """Pair attribute function of the classifier."""

    Invariant = "Invariant"
    Baseline = "Baseline"

    @classmethod
    def parse(cls: type[Variant], text: str) -> Variant:
        """Case-insensitive lookup, e.g. `invariant` or `Baseline`."""
        for variant in cls:
            if variant.value.lower() == text.strip().lower():
                return variant

        msg = f"unknown variant {text!r}, expected invariant or baseline"
        raise ConfigError(msg)


@dataclass(frozen=True)
class ModelConfig:
    """Interface representing the classifier hyperparameters.

    `layer_scale` 0 disables the residual scaling; `num_orientations` above 1
    switches to the orientation-grid attributes.
    """

    hidden_dim: int = 64
    num_layers: int = 6
    temporal_kernel: int = 9
    basis_dim: int = 128
    poly_degree: int = 1
    widening_factor: int = 4
    layer_scale: float = 0.0
    num_orientations: int = 1
    num_classes: int = 200
    input_feature_mode: InputFeatureMode = InputFeatureMode.NodeIdOnly
    variant: Variant = Variant.Invariant
    num_nodes: int = NUM_NODES

    def __post_init__(self: ModelConfig) -> None:
        """Check extents."""
        extents = {
            "hidden_dim": self.hidden_dim,
            "num_layers": self.num_layers,
            "temporal_kernel": self.temporal_kernel,
            "basis_dim": self.basis_dim,
            "poly_degree": self.poly_degree,
            "widening_factor": self.widening_factor,
            "num_orientations": self.num_orientations,
            "num_classes": self.num_classes,
            "num_nodes": self.num_nodes,
        }

        for name, value in extents.items():
            if not isinstance(value, int) or isinstance(value, bool) or value < 1:
                msg = f"{name} must be a positive integer, got {value!r}"
                raise ConfigError(msg)

        if self.temporal_kernel % 2 == 0:
            msg = f"temporal_kernel must be odd, got {self.temporal_kernel}"
            raise ConfigError(msg)

        if self.layer_scale < 0:
            msg = f"layer_scale must be >= 0, got {self.layer_scale}"
            raise ConfigError(msg)

    @property
    def input_dim(self: ModelConfig) -> int:
        """Width of the node input features."""
        depth = self.input_feature_mode is InputFeatureMode.NodeIdPlusDepth
        return self.num_nodes + int(depth)

    @property
    def attribute_dim(self: ModelConfig) -> int:
        """Width of the pair attributes."""
        width = 1 if self.variant is Variant.Invariant else 2
        if self.num_orientations > 1:
            width = 3
        return width

    @property
    def poly_dim(self: ModelConfig) -> int:
        """Width of the polynomial embedding of the attributes, constant included."""
        return sum(self.attribute_dim**degree for degree in range(self.poly_degree + 1))

    def to_dict(self: ModelConfig) -> dict[str, Any]:
        """JSON-ready mapping; enumerations by name."""
        document = asdict(self)
        document["input_feature_mode"] = self.input_feature_mode.value
        document["variant"] = self.variant.value
        return document

    @classmethod
    def from_dict(cls: type[ModelConfig], document: Mapping[str, Any]) -> ModelConfig:
        """Build a config from a mapping of field names.

        Raises
        ------
        ConfigError
            On unknown keys or invalid values.
        """
        known = {item.name for item in fields(cls)}
        unknown = sorted(set(document) - known)

        if unknown:
            msg = f"unknown model config keys: {', '.join(unknown)}"
            raise ConfigError(msg)

        values = dict(document)

        try:
            if "input_feature_mode" in values:
                values["input_feature_mode"] = InputFeatureMode(values["input_feature_mode"])
            if "variant" in values:
                values["variant"] = Variant.parse(str(values["variant"]))
        except ValueError as exc:
            raise ConfigError(str(exc)) from exc

        return cls(**values)

    def with_overrides(self: ModelConfig, **changes: Any) -> ModelConfig:  # noqa: ANN401
        """Copy with some fields replaced."""
        return replace(self, **changes)


MODEL_CONFIG_KEYS = frozenset(item.name for item in fields(ModelConfig))
