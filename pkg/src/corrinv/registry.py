"""Model registry - maps model kinds to their parameter records and builders."""

from __future__ import annotations

from collections.abc import Callable
from dataclasses import dataclass
from typing import TYPE_CHECKING, Any

from pydantic import BaseModel

from corrinv.errors import ModelNotFoundError

if TYPE_CHECKING:
    from corrinv.models.base import CorrelationModel


# Builders receive the validated parameter record of their kind
ModelBuildFn = Callable[[Any], "CorrelationModel"]


@dataclass(frozen=True)
class ModelDef:
    """Definition of a correlation backend.

    Attributes:
        name: Unique kind identifier used in run configs (e.g., "kirkwood").
        description: Human-readable description of the backend.
        params_model: Pydantic model validating the ``model.params`` section.
        build: Turns a validated parameter record into a model instance.
    """

    name: str
    description: str
    params_model: type[BaseModel]
    build: ModelBuildFn

    def create(self, params: dict[str, Any]) -> CorrelationModel:
        """Validate raw parameters and build the model."""
        return self.build(self.params_model.model_validate(params))


# The model registry - populated by corrinv/models/__init__.py
_MODELS: dict[str, ModelDef] = {}


def register_model(model: ModelDef) -> ModelDef:
    """Register a model kind.

    Args:
        model: The model definition to register.

    Returns:
        The same definition (for chaining).

    Raises:
        ValueError: If a model with the same name is already registered.
    """
    if model.name in _MODELS:
        raise ValueError(f"Model '{model.name}' is already registered")
    _MODELS[model.name] = model
    return model


def get_model(name: str) -> ModelDef:
    """Get a model definition by kind.

    Raises:
        ModelNotFoundError: If the kind doesn't exist.
    """
    if name not in _MODELS:
        raise ModelNotFoundError(name, sorted(_MODELS.keys()))
    return _MODELS[name]


def list_models() -> list[ModelDef]:
    """List all registered model kinds, sorted by name."""
    return sorted(_MODELS.values(), key=lambda m: m.name)
