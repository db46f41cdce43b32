"""Typed exceptions for corrinv.

All library errors inherit from CorrinvError. They carry a structured context
mapping that ends up in log lines and in the CLI error output.
"""

from __future__ import annotations

from typing import Any


class CorrinvError(Exception):
    """Base exception for all corrinv errors."""

    def __init__(self, message: str, *, context: dict[str, Any] | None = None):
        super().__init__(message)
        self.message = message
        self.context = context or {}

    def __str__(self) -> str:
        if self.context:
            ctx = ", ".join(f"{k}={v!r}" for k, v in self.context.items())
            return f"{self.message} ({ctx})"
        return self.message


class ConfigError(CorrinvError):
    """Configuration or input data failed validation."""

    def __init__(self, message: str, *, field: str | None = None, value: Any = None):
        context: dict[str, Any] = {}
        if field:
            context["field"] = field
        if value is not None:
            # Truncate long values for readability
            str_val = str(value)
            context["value"] = str_val[:100] + "..." if len(str_val) > 100 else str_val
        super().__init__(message, context=context)
        self.field = field
        self.value = value


class LimitExceededError(CorrinvError):
    """An enumeration or integration ceiling was exceeded."""

    def __init__(self, what: str, *, requested: int, limit: int):
        super().__init__(
            f"{what} limited to {limit}",
            context={"requested": requested, "limit": limit},
        )
        self.what = what
        self.requested = requested
        self.limit = limit


class OrderBoundError(CorrinvError):
    """A family or model was used beyond its order bound."""

    def __init__(self, message: str, *, order: int | None = None, bound: int | None = None):
        context = {"order": order, "bound": bound}
        super().__init__(message, context={k: v for k, v in context.items() if v is not None})
        self.order = order
        self.bound = bound


class HardCoreError(CorrinvError):
    """The pair correlation vanishes at the anchor points."""

    def __init__(self, message: str, *, separation: float, radius: float):
        super().__init__(message, context={"separation": separation, "radius": radius})
        self.separation = separation
        self.radius = radius


class QuadratureError(CorrinvError):
    """Numerical integration failed."""

    def __init__(self, message: str, *, node: Any = None):
        context: dict[str, Any] = {}
        if node is not None:
            context["node"] = node
        super().__init__(message, context=context)
        self.node = node


class BoundsDomainError(CorrinvError):
    """A bound formula was evaluated outside its domain."""

    def __init__(self, message: str, **diagnostics: float):
        super().__init__(message, context=dict(diagnostics))
        self.diagnostics = diagnostics


class ModelNotFoundError(CorrinvError):
    """Raised when a requested model kind doesn't exist."""

    def __init__(self, name: str, available: list[str]) -> None:
        super().__init__(f"Model '{name}' not found. Available: {', '.join(available)}")
        self.name = name
        self.available = available
