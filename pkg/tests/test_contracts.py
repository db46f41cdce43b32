"""Contract tests for the backends, the schemas and the shipped configs.

These tests verify structural invariants every backend and config must
keep, so the codebase stays consistent as new backends are added.
"""

from __future__ import annotations

import json
import re
from pathlib import Path

import pytest

import corrinv.models  # noqa: F401
from corrinv.io import read_document
from corrinv.registry import list_models
from corrinv.schema import SCHEMA_NAMES, load_schema, schema_path, validate

PROJECT_ROOT = Path(__file__).parent.parent
CONFIGS_ROOT = PROJECT_ROOT / "configs"

RUN_CONFIGS = sorted(p for p in CONFIGS_ROOT.glob("*.*") if p.name != "bounds.json")


class TestSchemaContracts:
    """Verify the bundled schemas are well-formed."""

    @pytest.mark.parametrize("name", SCHEMA_NAMES)
    def test_schemas_are_valid_json(self, name: str) -> None:
        with open(schema_path(name)) as f:
            schema = json.load(f)
        assert "$schema" in schema, f"{name}: missing $schema declaration"
        assert schema.get("additionalProperties") is False

    def test_model_enum_matches_the_registry(self) -> None:
        """The run schema must accept exactly the registered kinds."""
        kinds = load_schema("run_config")["properties"]["model"]["properties"]["kind"]["enum"]
        assert sorted(kinds) == [model.name for model in list_models()]


class TestConfigContracts:
    """Every shipped config must validate against its schema."""

    def test_configs_present(self) -> None:
        assert len(RUN_CONFIGS) >= 5

    @pytest.mark.parametrize("path", RUN_CONFIGS, ids=lambda p: p.name)
    def test_run_configs_validate(self, path: Path) -> None:
        validate(read_document(path), load_schema("run_config"))

    def test_bounds_config_validates(self) -> None:
        validate(read_document(CONFIGS_ROOT / "bounds.json"), load_schema("bounds_config"))


class TestModelContracts:
    """Verify all registered backends meet the registry contract."""

    @pytest.fixture
    def all_models(self):
        return list_models()

    def test_all_models_have_descriptions(self, all_models) -> None:
        missing = [model.name for model in all_models if not model.description.strip()]
        if missing:
            pytest.fail(f"Models missing descriptions: {', '.join(missing)}")

    def test_model_names_are_snake_case(self, all_models) -> None:
        pattern = re.compile(r"^[a-z][a-z0-9_]*$")
        invalid = [model.name for model in all_models if not pattern.match(model.name)]
        if invalid:
            pytest.fail(f"Model names not in snake_case: {', '.join(invalid)}")

    def test_params_forbid_unknown_keys(self, all_models) -> None:
        lax = [m.name for m in all_models if m.params_model.model_config.get("extra") != "forbid"]
        if lax:
            pytest.fail(f"Parameter records accepting unknown keys: {', '.join(lax)}")

    def test_builders_are_callable(self, all_models) -> None:
        assert all(callable(model.build) for model in all_models)
