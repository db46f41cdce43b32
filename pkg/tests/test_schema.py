"""Tests for config schema validation."""

from __future__ import annotations

import pytest

from corrinv.schema import SCHEMA_NAMES, SchemaValidationError, load_schema, validate


class TestSchemas:
    @pytest.mark.parametrize("name", SCHEMA_NAMES)
    def test_bundled_schemas_load(self, name: str) -> None:
        schema = load_schema(name)
        assert schema["type"] == "object"

    def test_unknown_schema(self) -> None:
        with pytest.raises(FileNotFoundError):
            load_schema("plot_config")


class TestValidate:
    def test_valid_document(self) -> None:
        validate({"model": {"kind": "kirkwood", "params": {}}}, load_schema("run_config"))

    def test_errors_name_their_path(self) -> None:
        document = {"model": {"kind": "poisson"}, "quadrature": {"workers": 0}, "colour": "red"}
        with pytest.raises(SchemaValidationError) as exc_info:
            validate(document, load_schema("run_config"))
        errors = exc_info.value.errors
        assert len(errors) == 2
        assert errors[0].startswith("At '(root)'")
        assert errors[1].startswith("At 'quadrature.workers'")
        assert "2 error(s)" in str(exc_info.value)

    def test_bounds_requires_all_constants(self) -> None:
        with pytest.raises(SchemaValidationError, match="'D_rho' is a required property"):
            validate({"M": 1.0, "A": 1.0, "d_of_r": 1.0}, load_schema("bounds_config"))
