"""Run and bounds configuration records.

Config documents are validated twice: against the bundled JSON schema (so
unknown keys are reported with their path), then parsed into the pydantic
records below. Model parameters are parsed by the record registered for the
model kind.
"""

from __future__ import annotations

import logging
from pathlib import Path
from typing import Any, Literal

from pydantic import BaseModel, ConfigDict, Field, ValidationError

import corrinv.models  # noqa: F401  (registers the backends)
from corrinv.bounds import BoundParams
from corrinv.errors import ConfigError
from corrinv.inversion import TAIL_TOL, default_box
from corrinv.io import read_document
from corrinv.models.base import CorrelationModel
from corrinv.quadrature import DEFAULT_MAX_TOTAL_DIM, DEFAULT_SAMPLES, Box, QuadratureSpec
from corrinv.registry import get_model
from corrinv.schema import load_schema, validate

logger = logging.getLogger(__name__)

# Parameters of these kinds hold file paths, resolved against the config directory
PATH_PARAMS: dict[str, tuple[str, ...]] = {"tabulated": ("g2_csv", "t3_csv")}


class _Section(BaseModel):
    model_config = ConfigDict(extra="forbid")


class ModelSection(_Section):
    kind: str
    params: dict[str, Any] = Field(default_factory=dict)


class BoxSection(_Section):
    dim: int | None = None
    halfwidth: float | None = None
    check_doubling: bool = False


class QuadratureSection(_Section):
    kind: Literal["auto", "tensor", "monte_carlo"] = "auto"
    nodes_per_axis: int | None = None
    samples: int = DEFAULT_SAMPLES
    seed: int | None = None
    max_total_dim: int = DEFAULT_MAX_TOTAL_DIM
    workers: int = 1

    def to_spec(self) -> QuadratureSpec:
        return QuadratureSpec(
            kind=self.kind,
            nodes_per_axis=self.nodes_per_axis,
            samples=self.samples,
            seed=self.seed,
            max_total_dim=self.max_total_dim,
            workers=self.workers,
        )


class SeriesSection(_Section):
    max_order: int = 2
    tail_tol: float = TAIL_TOL


class TargetsSection(_Section):
    separations: list[float] = Field(default_factory=list)
    mu: bool = True


class OutputSection(_Section):
    potential_csv: str = "potential.csv"
    mu_csv: str = "mu.csv"
    report_json: str = "report.json"


class OracleSection(_Section):
    seed: int = 0
    samples: int = 20
    max_k: int = 3
    tolerance: float = 1e-9


class RunConfig(_Section):
    """Everything one ``invert`` or ``oracle-check`` run needs.

    Attributes:
        model: Backend kind and its parameters.
        box: Integration window; a null halfwidth means six correlation lengths.
        quadrature: Rule and resolution for the series integrals.
        series: Truncation order K and the tail tolerance.
        targets: Separations r for H (anchors at -r/2 and +r/2) and whether to compute mu.
        output: File names, relative to the output directory.
        oracle: Settings of the oracle suite.
    """

    model: ModelSection
    box: BoxSection = Field(default_factory=BoxSection)
    quadrature: QuadratureSection = Field(default_factory=QuadratureSection)
    series: SeriesSection = Field(default_factory=SeriesSection)
    targets: TargetsSection = Field(default_factory=TargetsSection)
    output: OutputSection = Field(default_factory=OutputSection)
    oracle: OracleSection = Field(default_factory=OracleSection)

    def build_model(self) -> CorrelationModel:
        """Validate the model parameters with the kind's record and build the backend."""
        model_def = get_model(self.model.kind)
        try:
            return model_def.create(self.model.params)
        except ValidationError as e:
            first = e.errors()[0]
            location = ".".join(str(p) for p in first["loc"])
            raise ConfigError(
                f"invalid {self.model.kind} parameters: {first['msg']}",
                field=f"model.params.{location}",
                value=first.get("input"),
            ) from e
        except ValueError as e:
            raise ConfigError(str(e), field="model.params") from e

    def build_box(self, model: CorrelationModel) -> Box:
        if self.box.dim is not None and self.box.dim != model.dim:
            raise ConfigError(
                f"box dimension differs from the model's ({model.dim})",
                field="box.dim",
                value=self.box.dim,
            )
        if self.box.halfwidth is None:
            return default_box(model)
        return Box(model.dim, self.box.halfwidth)


class BoundsConfig(_Section):
    """Parameters of a ``bounds`` run."""

    M: float
    A: float
    D_rho: float
    d_of_r: float
    k_max: int = 14
    grid_points: int = 21

    def to_params(self) -> BoundParams:
        return BoundParams(M=self.M, A=self.A, D_rho=self.D_rho, d_of_r=self.d_of_r)


def _resolve_paths(document: dict[str, Any], base_dir: Path) -> None:
    model = document["model"]
    params = model.get("params", {})
    for key in PATH_PARAMS.get(model["kind"], ()):
        if key not in params:
            continue
        path = Path(params[key])
        if not path.is_absolute():
            path = base_dir / path
        if not path.exists():
            raise ConfigError("referenced file not found", field=f"model.params.{key}", value=str(path))
        params[key] = str(path)


def load_config(source: str | Path) -> RunConfig:
    """Read, validate and parse a run config (JSON or YAML).

    Raises:
        ConfigError: If the file is missing, unparseable, or references missing files.
        SchemaValidationError: If the document does not match the schema.
    """
    path = Path(source)
    document = read_document(path)
    validate(document, load_schema("run_config"))
    _resolve_paths(document, path.parent)
    config = RunConfig.model_validate(document)
    logger.debug(f"Loaded run config {path} (model {config.model.kind})")
    return config


def load_bounds_config(source: str | Path) -> BoundsConfig:
    """Read, validate and parse a bounds config (JSON or YAML)."""
    document = read_document(source)
    validate(document, load_schema("bounds_config"))
    return BoundsConfig.model_validate(document)
