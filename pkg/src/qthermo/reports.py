"""Experiment report model and serialization.

Reports serialize to JSON (stable field order, 17-significant-digit
numbers) or CSV (metric maps flattened with dotted keys). Equal configs and
seeds produce byte-identical documents once ``wall_time`` is excluded.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from ._jsonfmt import dumps, format_number
from .errors import EmptyInputError

VERDICT_PASS = "PASS"
VERDICT_FAIL = "FAIL"
VERDICT_REPORT_ONLY = "REPORT-ONLY"
VERDICTS = (VERDICT_PASS, VERDICT_FAIL, VERDICT_REPORT_ONLY)

ARTIFACT_VERSION = "0.1.0"


@dataclass
class ExperimentReport:
    config: dict
    metrics: dict
    verdict: str
    wall_time: float
    version: str = ARTIFACT_VERSION
    note: str = ""

    def __post_init__(self):
        if self.verdict not in VERDICTS:
            raise ValueError(f"verdict {self.verdict!r} not in {VERDICTS}")


def report_document(report: ExperimentReport, include_wall_time: bool = True) -> dict:
    """Ordered plain-dict form of one report."""
    doc = {
        "version": report.version,
        "config": dict(report.config),
        "metrics": dict(report.metrics),
        "verdict": report.verdict,
    }
    if report.note:
        doc["note"] = report.note
    if include_wall_time:
        doc["wall_time"] = report.wall_time
    return doc


def render(reports, fmt: str = "json", include_wall_time: bool = True) -> str:
    """Serialize a non-empty list of reports to a JSON array or CSV table."""
    reports = list(reports)
    if not reports:
        raise EmptyInputError("no reports to render")
    if fmt == "json":
        return dumps([report_document(r, include_wall_time) for r in reports]) + "\n"
    if fmt == "csv":
        return _render_csv(reports, include_wall_time)
    raise ValueError(f"unknown format {fmt!r}; expected 'json' or 'csv'")


def _flatten(doc: dict) -> dict:
    flat = {}
    for key, value in doc.items():
        if isinstance(value, dict):
            for k, v in value.items():
                flat[f"{key}.{k}"] = v
        else:
            flat[key] = value
    return flat


def _cell(value) -> str:
    if value is None:
        return ""
    if isinstance(value, str):
        return value
    if isinstance(value, (list, tuple)):
        return ";".join(_cell(v) for v in value)
    return format_number(value)


def _render_csv(reports, include_wall_time: bool) -> str:
    rows = [_flatten(report_document(r, include_wall_time)) for r in reports]
    columns = []
    for row in rows:
        for key in row:
            if key not in columns:
                columns.append(key)
    lines = [",".join(columns)]
    for row in rows:
        lines.append(",".join(_cell(row.get(c)) for c in columns))
    return "\n".join(lines) + "\n"
