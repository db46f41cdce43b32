"""Convergence report written next to the series tables.

Report format:
    {"version": "corrinv-report/v1", "model": {...}, "box": {...},
     "mu": {...} | null, "potential": [{"r": ..., ...}], "stability": {...},
     "bounds": {...} | null, "messages": [...]}

Message structure:
    {"level": "error|warning|info", "code": "...", "message": "...", "data": {...}}

Reports carry no timestamps, so identical runs write identical files.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from pathlib import Path
from typing import Any, Literal

from corrinv.io import write_json

REPORT_VERSION = "corrinv-report/v1"

# Message codes
TAIL_NOT_MET = "TAIL_NOT_MET"
D_RHO_EXCEEDS_RADIUS = "D_RHO_EXCEEDS_RADIUS"
L_UNSTABLE = "L_UNSTABLE"
BOUNDS_UNAVAILABLE = "BOUNDS_UNAVAILABLE"

MessageLevel = Literal["info", "warning", "error"]


@dataclass(frozen=True)
class ReportMessage:
    """Single diagnostic message.

    Attributes:
        level: Severity level (info, warning, error).
        code: Machine-readable code.
        message: Human-readable description.
        data: Optional structured data.
    """

    level: MessageLevel
    code: str
    message: str
    data: dict[str, Any] = field(default_factory=dict)

    def to_dict(self) -> dict[str, Any]:
        result: dict[str, Any] = {"level": self.level, "code": self.code, "message": self.message}
        if self.data:
            result["data"] = self.data
        return result


@dataclass
class ConvergenceReport:
    """Per-order term tables, stability deltas, the bound comparison and warnings."""

    model: dict[str, Any]
    box: dict[str, Any]
    mu: dict[str, Any] | None = None
    potential: list[dict[str, Any]] = field(default_factory=list)
    stability: dict[str, Any] = field(default_factory=dict)
    bounds: dict[str, Any] | None = None
    messages: list[ReportMessage] = field(default_factory=list)

    def add(
        self,
        level: MessageLevel,
        code: str,
        message: str,
        *,
        data: dict[str, Any] | None = None,
    ) -> None:
        self.messages.append(ReportMessage(level, code, message, data or {}))

    def add_warning(self, code: str, message: str, *, data: dict[str, Any] | None = None) -> None:
        self.add("warning", code, message, data=data)

    def add_info(self, code: str, message: str, *, data: dict[str, Any] | None = None) -> None:
        self.add("info", code, message, data=data)

    @property
    def has_warnings(self) -> bool:
        return any(m.level == "warning" for m in self.messages)

    @property
    def codes(self) -> list[str]:
        return [m.code for m in self.messages]

    def to_dict(self) -> dict[str, Any]:
        return {
            "version": REPORT_VERSION,
            "model": self.model,
            "box": self.box,
            "mu": self.mu,
            "potential": self.potential,
            "stability": self.stability,
            "bounds": self.bounds,
            "messages": [m.to_dict() for m in self.messages],
        }


def write_report(path: str | Path, report: ConvergenceReport) -> None:
    write_json(path, report.to_dict())
