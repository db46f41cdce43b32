"""Command runners - load a config, run the computation, write the artifacts."""

from __future__ import annotations

import logging
import sys
from pathlib import Path
from typing import Any

import numpy as np

from corrinv.bounds import BoundParams, bound_report, radius_bound
from corrinv.config import RunConfig, load_bounds_config, load_config
from corrinv.errors import CorrinvError
from corrinv.inversion import SeriesResult, h_series, mu_series, stability_delta
from corrinv.io import write_csv, write_json
from corrinv.models.assumptions import estimate_assumption_params
from corrinv.models.base import CorrelationModel
from corrinv.models.tabulated import TabulatedModel
from corrinv.oracles import run_oracle_suite
from corrinv.quadrature import Box, QuadratureSpec
from corrinv.report import (
    BOUNDS_UNAVAILABLE,
    D_RHO_EXCEEDS_RADIUS,
    L_UNSTABLE,
    TAIL_NOT_MET,
    ConvergenceReport,
    write_report,
)

logger = logging.getLogger(__name__)

# Exit codes
EXIT_SUCCESS = 0
EXIT_ERROR = 1
EXIT_CONVERGENCE_WARNING = 2
EXIT_ORACLE_FAILURE = 3

# Largest change of a partial sum under box doubling that still counts as stable
STABILITY_TOL = 1e-6
TABULATED_MAX_SERIES_ORDER = 1

BOUNDS_JSON = "bounds.json"
ORACLE_JSON = "oracle.json"


def configure_logging(verbose: bool = False) -> None:
    logging.basicConfig(
        level=logging.DEBUG if verbose else logging.INFO,
        format="%(asctime)s [%(levelname)s] %(message)s",
        datefmt="%Y-%m-%dT%H:%M:%SZ",
        stream=sys.stderr,
    )


def _anchors(model: CorrelationModel, r: float) -> tuple[np.ndarray, np.ndarray]:
    """x1 = -r/2 and x2 = +r/2 along the first axis."""
    x1 = np.zeros(model.dim)
    x2 = np.zeros(model.dim)
    x1[0] = -r / 2.0
    x2[0] = r / 2.0
    return x1, x2


def _term_header(K: int) -> list[str]:
    return [f"term{k}" for k in range(1, K + 1)]


def _row(result: SeriesResult) -> list[float]:
    return [*result.order_terms, result.value, result.tail_estimate]


def _check_capability(model: CorrelationModel, K: int) -> None:
    if isinstance(model, TabulatedModel) and K > TABULATED_MAX_SERIES_ORDER:
        raise CorrinvError(
            f"tabulated models support K ≤ {TABULATED_MAX_SERIES_ORDER}",
            context={"requested": K},
        )


def _compare_with_bounds(
    report: ConvergenceReport, model: CorrelationModel, box: Box, spec: QuadratureSpec
) -> None:
    try:
        assumptions = estimate_assumption_params(model, box=box, spec=spec)
        params = BoundParams(
            M=assumptions.M, A=assumptions.A, D_rho=assumptions.D_rho, d_of_r=assumptions.d_of_r
        )
        chi, theta, radius = radius_bound(params)
    except CorrinvError as e:
        logger.info(f"Bound comparison skipped: {e}")
        report.add_info(BOUNDS_UNAVAILABLE, f"bound comparison unavailable: {e.message}", data=e.context)
        return

    report.bounds = {
        "assumptions": assumptions.to_dict(),
        "chi": chi,
        "theta": theta,
        "radius": radius,
    }
    if assumptions.D_rho > radius:
        report.add_warning(
            D_RHO_EXCEEDS_RADIUS,
            "estimated D_rho exceeds the convergence radius bound",
            data={"D_rho": assumptions.D_rho, "radius": radius},
        )


def _flag_tail(report: ConvergenceReport, label: str, result: SeriesResult, data: dict[str, Any]) -> None:
    if not result.converged:
        report.add_warning(
            TAIL_NOT_MET,
            f"{label} series: tail criterion not met",
            data={**data, "tail_estimate": result.tail_estimate},
        )


def _flag_stability(report: ConvergenceReport, label: str, delta: float, data: dict[str, Any]) -> None:
    if delta >= STABILITY_TOL:
        report.add_warning(
            L_UNSTABLE,
            f"{label} changes under box doubling",
            data={**data, "delta": delta},
        )


def invert(config: RunConfig, out_dir: str | Path) -> ConvergenceReport:
    """Compute the mu and H series of a run and write the CSV tables and the report.

    Raises:
        CorrinvError: On invalid configurations or numerical failures.
    """
    out = Path(out_dir)
    model = config.build_model()
    box = config.build_box(model)
    spec = config.quadrature.to_spec()
    K = config.series.max_order
    tail_tol = config.series.tail_tol
    _check_capability(model, K)
    logger.info(f"Running {model.kind} inversion: K={K}, L={box.halfwidth}, d={box.dim}")

    report = ConvergenceReport(model=model.describe(), box=box.to_dict())

    if config.targets.mu:

        def mu_for(b: Box, s: QuadratureSpec) -> SeriesResult:
            return mu_series(model, K, b, s, tail_tol=tail_tol)

        if config.box.check_doubling:
            check = stability_delta(mu_for, box, spec)
            mu = check.base
            report.stability["mu"] = check.delta
            _flag_stability(report, "mu", check.delta, {})
        else:
            mu = mu_for(box, spec)
        report.mu = mu.to_dict()
        _flag_tail(report, "mu", mu, {})
        write_csv(
            out / config.output.mu_csv,
            ["log_rho", *_term_header(K), "mu_estimate", "tail_estimate"],
            [_row(mu)],
        )
        logger.info(f"mu = {mu.value:.10g} (tail {mu.tail_estimate:.2e})")

    rows = []
    deltas = []
    for r in config.targets.separations:
        x1, x2 = _anchors(model, r)

        def h_for(b: Box, s: QuadratureSpec, x1: Any = x1, x2: Any = x2) -> SeriesResult:
            return h_series(model, x1, x2, K, b, s, tail_tol=tail_tol)

        if config.box.check_doubling:
            check = stability_delta(h_for, box, spec)
            result = check.base
            deltas.append({"r": r, "delta": check.delta})
            _flag_stability(report, f"H({r:g})", check.delta, {"r": r})
        else:
            result = h_for(box, spec)
        report.potential.append({"r": r, **result.to_dict()})
        _flag_tail(report, f"H({r:g})", result, {"r": r})
        rows.append([r, *_row(result)])
        logger.info(f"H({r:g}) = {result.value:.10g} (tail {result.tail_estimate:.2e})")

    if deltas:
        report.stability["potential"] = deltas
    if config.targets.separations:
        write_csv(
            out / config.output.potential_csv,
            ["r", "pmf", *_term_header(K), "H_estimate", "tail_estimate"],
            rows,
        )

    _compare_with_bounds(report, model, box, spec)
    write_report(out / config.output.report_json, report)
    return report


def cmd_invert(config_path: str | Path, out_dir: str | Path) -> int:
    """Run ``invert`` and map the outcome to an exit code."""
    try:
        config = load_config(config_path)
        report = invert(config, out_dir)
    except (CorrinvError, ValueError) as e:
        logger.error(f"Inversion failed: {e}")
        return EXIT_ERROR

    for message in report.messages:
        if message.level == "warning":
            logger.warning(f"{message.code}: {message.message}")
    logger.info(f"Results written to: {out_dir}")
    return EXIT_CONVERGENCE_WARNING if report.has_warnings else EXIT_SUCCESS


def cmd_bounds(config_path: str | Path, out_dir: str | Path) -> int:
    """Write the bound sequences, the radius and the Lambert-W grid to bounds.json."""
    try:
        config = load_bounds_config(config_path)
        result = bound_report(config.to_params(), k_max=config.k_max, grid_points=config.grid_points)
    except (CorrinvError, ValueError) as e:
        logger.error(f"Bounds failed: {e}")
        return EXIT_ERROR

    dest = Path(out_dir) / BOUNDS_JSON
    write_json(dest, result.to_dict())
    logger.info(f"Radius {result.radius:.6g} (t* = {result.t_star:.6g}); written to: {dest}")
    return EXIT_SUCCESS


def cmd_oracle_check(config_path: str | Path, out_dir: str | Path | None = None) -> int:
    """Run the oracle suite on the configured backend."""
    try:
        config = load_config(config_path)
        model = config.build_model()
        settings = config.oracle
        result = run_oracle_suite(
            model,
            seed=settings.seed,
            samples=settings.samples,
            max_k=settings.max_k,
            tolerance=settings.tolerance,
        )
    except (CorrinvError, ValueError) as e:
        logger.error(f"Oracle check failed: {e}")
        return EXIT_ERROR

    if out_dir is not None:
        write_json(Path(out_dir) / ORACLE_JSON, result.to_dict())
    if not result.passed:
        failed = [check.name for check in result.checks if not check.passed]
        logger.error(f"Oracle residuals above tolerance: {', '.join(failed)}")
        return EXIT_ORACLE_FAILURE
    return EXIT_SUCCESS
