"""Input/output handling: config documents, JSON reports and CSV tables."""

from __future__ import annotations

import io
import json
from collections.abc import Iterable, Sequence
from pathlib import Path
from typing import Any

import numpy as np
import numpy.typing as npt
import yaml

from corrinv.errors import ConfigError

YAML_SUFFIXES = {".yaml", ".yml"}


def read_document(source: str | Path) -> Any:
    """Read a JSON or YAML document from a file.

    Args:
        source: Path to a ``.json``, ``.yaml`` or ``.yml`` file.

    Returns:
        The parsed document.

    Raises:
        ConfigError: If the file is missing or not parseable.
    """
    path = Path(source)
    if not path.exists():
        raise ConfigError("config file not found", field="path", value=str(path))

    text = path.read_text()
    try:
        if path.suffix.lower() in YAML_SUFFIXES:
            return yaml.safe_load(text)
        return json.loads(text)
    except (json.JSONDecodeError, yaml.YAMLError) as e:
        raise ConfigError(f"cannot parse {path.name}: {e}", field="path", value=str(path)) from e


def write_json(dest: str | Path, obj: Any) -> None:
    """Write a JSON document with a trailing newline, creating parent directories."""
    dest_path = Path(dest)
    dest_path.parent.mkdir(parents=True, exist_ok=True)

    with open(dest_path, "w") as f:
        json.dump(obj, f, indent=2)
        f.write("\n")


def format_number(value: float) -> str:
    """17 significant digits, enough to round-trip any double."""
    return f"{float(value):.17g}"


def write_csv(dest: str | Path, header: Sequence[str], rows: Iterable[Sequence[Any]]) -> None:
    """Write a comma-separated table; floats get 17 significant digits."""
    dest_path = Path(dest)
    dest_path.parent.mkdir(parents=True, exist_ok=True)

    lines = [",".join(header)]
    for row in rows:
        cells = [cell if isinstance(cell, str) else format_number(cell) for cell in row]
        if len(cells) != len(header):
            raise ValueError(f"row has {len(cells)} cells, header has {len(header)}")
        lines.append(",".join(cells))
    dest_path.write_text("\n".join(lines) + "\n")


def read_table(source: str | Path, header: Sequence[str]) -> npt.NDArray[Any]:
    """Read a numeric CSV table with a named header row.

    Blank lines and lines starting with ``#`` are skipped anywhere in the file;
    the first remaining line is the header and must match ``header`` exactly.

    Returns:
        A structured array with one field per column, at least one-dimensional.
    """
    path = Path(source)
    if not path.exists():
        raise ConfigError("table not found", field="path", value=str(path))

    lines = [
        line
        for line in path.read_text().splitlines()
        if line.strip() and not line.lstrip().startswith("#")
    ]
    if not lines:
        raise ConfigError(f"table {path.name} is empty", field="path", value=str(path))

    try:
        buffer = io.StringIO("\n".join(lines))
        data = np.genfromtxt(buffer, delimiter=",", names=True, dtype=np.float64)
    except ValueError as e:
        raise ConfigError(f"cannot parse table {path.name}: {e}", field="path", value=str(path)) from e

    names = data.dtype.names or ()
    if tuple(names) != tuple(header):
        raise ConfigError(
            f"unexpected header in {path.name}: expected {','.join(header)}",
            field="header",
            value=",".join(names),
        )
    return np.atleast_1d(data)
