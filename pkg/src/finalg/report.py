"""Structured verdict records with deterministic text and JSON rendering.

Identical inputs and seeds produce byte-identical reports: section order
is fixed by the pipeline, JSON keys are sorted, rationals render as
``p/q`` strings, and nothing depends on the clock or the environment.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction

from .algebras import Element
from .linalg import Mat, Subspace
from .version import __version__

VERDICT_OK = "ok"
VERDICT_HYPOTHESES_NOT_MET = "hypotheses-not-met"
VERDICT_PROPERTY_FALSE = "property-false"
VERDICT_REFUTATION = "refutation"
VERDICT_INCONCLUSIVE = "inconclusive"


@dataclass
class Section:
    name: str
    entries: list[tuple[str, object]] = field(default_factory=list)

    def add(self, key: str, value: object) -> None:
        self.entries.append((key, value))


@dataclass
class Report:
    command: str
    algebra_name: str | None = None
    fingerprint: str | None = None
    seeds: dict[str, int] = field(default_factory=dict)
    sections: list[Section] = field(default_factory=list)
    verdict: str = VERDICT_OK
    caveats: list[str] = field(default_factory=list)
    tool_version: str = __version__

    def section(self, name: str) -> Section:
        sec = Section(name)
        self.sections.append(sec)
        return sec

    def to_jsonable(self) -> dict:
        return {
            "tool_version": self.tool_version,
            "command": self.command,
            "algebra": self.algebra_name,
            "fingerprint": self.fingerprint,
            "seeds": {k: _jsonable(v) for k, v in self.seeds.items()},
            "sections": [
                {
                    "name": sec.name,
                    "entries": [[key, _jsonable(value)] for key, value in sec.entries],
                }
                for sec in self.sections
            ],
            "caveats": list(self.caveats),
            "verdict": self.verdict,
        }


def _jsonable(value):
    if value is None or isinstance(value, (bool, int, str)):
        return value
    if isinstance(value, Fraction):
        return str(value)
    if isinstance(value, Element):
        return [str(x) for x in value.coeffs]
    if isinstance(value, Mat):
        return [[str(x) for x in row] for row in value.data]
    if isinstance(value, Subspace):
        return {
            "ambient_dim": value.ambient_dim,
            "dim": value.dim,
            "basis": [[str(x) for x in row] for row in value.basis],
        }
    if isinstance(value, dict):
        return {str(k): _jsonable(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [_jsonable(v) for v in value]
    raise TypeError(f"cannot render value of type {type(value).__name__}")


def _render_text_value(value) -> str:
    if isinstance(value, bool):
        return "true" if value else "false"
    if value is None:
        return "none"
    if isinstance(value, (int, str, Fraction)):
        return str(value)
    return json.dumps(_jsonable(value), sort_keys=True)


def emit_report(report: Report, fmt: str = "text") -> str:
    """Render a report; both formats are deterministic functions of the report."""
    if fmt == "structured":
        return json.dumps(report.to_jsonable(), sort_keys=True, indent=2) + "\n"
    if fmt != "text":
        raise ValueError("format must be 'text' or 'structured'")
    lines = [f"finalg {report.tool_version}", f"command: {report.command}"]
    if report.algebra_name is not None:
        lines.append(f"algebra: {report.algebra_name}")
    if report.fingerprint is not None:
        lines.append(f"fingerprint: {report.fingerprint}")
    if report.seeds:
        lines.append("seeds: " + " ".join(f"{k}={v}" for k, v in report.seeds.items()))
    else:
        lines.append("seeds: none")
    for sec in report.sections:
        lines.append(f"[{sec.name}]")
        for key, value in sec.entries:
            lines.append(f"{key} = {_render_text_value(value)}")
    for caveat in report.caveats:
        lines.append(f"caveat: {caveat}")
    lines.append(f"verdict: {report.verdict}")
    return "\n".join(lines) + "\n"
