"""Command-line interface for series inversion runs."""

from __future__ import annotations

import json

import typer
from rich.console import Console
from rich.table import Table

from corrinv.runner import (
    EXIT_CONVERGENCE_WARNING,
    EXIT_ERROR,
    EXIT_SUCCESS,
    cmd_bounds,
    cmd_invert,
    cmd_oracle_check,
    configure_logging,
)

app = typer.Typer(
    name="corrinv",
    help="Chemical potential and pair potential from truncated correlation functions.",
    no_args_is_help=True,
)

console = Console()

VERBOSE_HELP = "Enable verbose logging"


def _report_exit(code: int, what: str) -> None:
    if code == EXIT_SUCCESS:
        console.print(f"[green]✓ {what} finished[/green]")
    elif code == EXIT_CONVERGENCE_WARNING:
        console.print(f"[yellow]! {what} finished with convergence warnings[/yellow]")
    elif code == EXIT_ERROR:
        console.print(f"[red]✗ {what} failed[/red]")
    else:
        console.print(f"[red]✗ {what}: checks failed[/red]")
    raise typer.Exit(code=code)


@app.command("invert")
def invert_cmd(
    config: str = typer.Option(..., "--config", "-c", help="Path to the run config (JSON or YAML)"),
    out: str = typer.Option(..., "--out", "-o", help="Directory for the CSV tables and report.json"),
    verbose: bool = typer.Option(False, "--verbose", "-v", help=VERBOSE_HELP),
) -> None:
    """Compute the mu and H series and write potential.csv, mu.csv and report.json.

    Exit codes: 0 success, 1 error, 2 convergence warnings.
    """
    configure_logging(verbose)
    _report_exit(cmd_invert(config, out), "Inversion")


@app.command("bounds")
def bounds_cmd(
    config: str = typer.Option(..., "--config", "-c", help="Path to the bounds config"),
    out: str = typer.Option(..., "--out", "-o", help="Directory for bounds.json"),
    verbose: bool = typer.Option(False, "--verbose", "-v", help=VERBOSE_HELP),
) -> None:
    """Write the a, c and w sequences, chi, theta, the radius and the ell/s grid."""
    configure_logging(verbose)
    _report_exit(cmd_bounds(config, out), "Bounds")


@app.command("oracle-check")
def oracle_check_cmd(
    config: str = typer.Option(..., "--config", "-c", help="Path to the run config"),
    out: str | None = typer.Option(None, "--out", "-o", help="Directory for oracle.json"),
    verbose: bool = typer.Option(False, "--verbose", "-v", help=VERBOSE_HELP),
) -> None:
    """Compare the implementation with the brute-force oracles.

    Exit codes: 0 all checks pass, 1 error, 3 a residual above tolerance.
    """
    configure_logging(verbose)
    _report_exit(cmd_oracle_check(config, out), "Oracle check")


@app.command("models")
def models_cmd() -> None:
    """List all available correlation backends."""
    import corrinv.models  # noqa: F401
    from corrinv.registry import list_models

    models = list_models()

    table = Table(title="Available Models")
    table.add_column("Kind", style="cyan", no_wrap=True)
    table.add_column("Description", style="green")
    table.add_column("Parameters", style="dim")

    for model in models:
        table.add_row(model.name, model.description, ", ".join(model.params_model.model_fields))

    console.print(table)


@app.command("schema")
def schema_cmd(
    kind: str = typer.Argument("run_config", help="Schema name: 'run_config' or 'bounds_config'"),
) -> None:
    """Print a bundled config schema."""
    from corrinv.schema import SCHEMA_NAMES, load_schema

    if kind not in SCHEMA_NAMES:
        console.print(f"[red]Error:[/red] Unknown schema: {kind}")
        raise typer.Exit(code=EXIT_ERROR)
    console.print_json(json.dumps(load_schema(kind), indent=2))


def main() -> None:
    """Entry point for the CLI."""
    app()


if __name__ == "__main__":
    main()
