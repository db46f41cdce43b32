"""JSON Schema validation of configuration documents."""

from __future__ import annotations

import json
from pathlib import Path
from typing import Any

import jsonschema
from jsonschema import Draft202012Validator

from corrinv.errors import CorrinvError

SCHEMAS_DIR = Path(__file__).parent / "schemas"

SCHEMA_NAMES = ("run_config", "bounds_config")


class SchemaValidationError(CorrinvError):
    """Raised when a config document fails schema validation."""

    def __init__(self, message: str, errors: list[str]) -> None:
        super().__init__(message, context={"errors": errors})
        self.errors = errors

    def __str__(self) -> str:
        return "; ".join([self.message, *self.errors])


def schema_path(name: str) -> Path:
    return SCHEMAS_DIR / f"{name}.json"


def load_schema(name: str) -> dict[str, Any]:
    """Load one of the bundled schemas.

    Raises:
        FileNotFoundError: If the schema file doesn't exist.
    """
    with open(schema_path(name)) as f:
        return json.load(f)


def validate(instance: Any, schema: dict[str, Any]) -> None:
    """Validate an instance against a JSON schema.

    Raises:
        SchemaValidationError: If validation fails.
    """
    validator = Draft202012Validator(schema)
    errors = sorted(validator.iter_errors(instance), key=lambda e: [str(p) for p in e.absolute_path])

    if errors:
        error_messages = [_format_validation_error(e) for e in errors]
        raise SchemaValidationError(
            f"Schema validation failed with {len(errors)} error(s)",
            error_messages,
        )


def _format_validation_error(error: jsonschema.ValidationError) -> str:
    """Format a validation error into a human-readable string."""
    path = ".".join(str(p) for p in error.absolute_path) or "(root)"
    return f"At '{path}': {error.message}"
