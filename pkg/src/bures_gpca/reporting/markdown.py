"""Markdown summary of an experiment report.

Small typed section functions return strings; mdutils supplies the structural
primitives (headers, tables).
"""

from __future__ import annotations

import json
import logging
from pathlib import Path
from typing import Any

from mdutils.tools.Header import AtxHeaderLevel, Header
from mdutils.tools.Table import Table

from bures_gpca.reporting.report import ExperimentReport

_logger = logging.getLogger(__name__)

_H1 = AtxHeaderLevel.TITLE
_H2 = AtxHeaderLevel.HEADING

_MAX_TABLE_ROWS = 50


def format_value(value: Any) -> str:
    if isinstance(value, bool):
        return "yes" if value else "no"
    if isinstance(value, float):
        return f"{value:.6g}"
    if isinstance(value, list):
        return ", ".join(format_value(v) for v in value)
    return str(value)


def _table(header: list[str], rows: list[list[str]], align: list[str]) -> str:
    cells = [header, *rows]
    return Table().create_table(
        columns=len(header),
        rows=len(cells),
        text=[cell for row in cells for cell in row],
        text_align=align,
    )


def _report_header(report: ExperimentReport) -> str:
    status = "converged" if report.converged else "**not converged**"
    total = sum(report.timings.values())
    parts = [
        Header.atx(level=_H1, title=f"Experiment: {report.experiment}"),
        f"> bures-gpca {report.version} | schema {report.schema_version} | {status}"
        + (f" | {total:.1f}s" if report.timings else "")
        + "  ",
        "",
    ]
    return "\n".join(parts)


def _costs_section(report: ExperimentReport) -> str:
    if not report.costs:
        return ""
    methods = list(report.costs)
    count = max(len(v) for v in report.costs.values())
    label = "Component" if report.dataset is not None else "Run"
    header = [label, *(m.upper() for m in methods)]
    if report.improvement_pct:
        header.append("Improvement")
    rows = []
    for i in range(min(count, _MAX_TABLE_ROWS)):
        row = [str(i + 1)]
        for m in methods:
            costs = report.costs[m]
            row.append(f"{costs[i]:.6g}" if i < len(costs) else "")
        if report.improvement_pct:
            pct = report.improvement_pct
            row.append(f"{pct[i]:.3f}%" if i < len(pct) else "")
        rows.append(row)
    parts = [
        Header.atx(level=_H2, title="Residual costs"),
        _table(header, rows, ["center"] + ["right"] * (len(header) - 1)),
        "",
    ]
    return "\n".join(parts)


def _table_section(report: ExperimentReport) -> str:
    if not report.table:
        return ""
    header = list(report.table[0].keys())
    rows = [[format_value(r.get(k, "")) for k in header] for r in report.table[:_MAX_TABLE_ROWS]]
    parts = [
        Header.atx(level=_H2, title="Results"),
        _table(header, rows, ["right"] * len(header)),
    ]
    if len(report.table) > _MAX_TABLE_ROWS:
        parts.append(f"*{len(report.table) - _MAX_TABLE_ROWS} more rows in the CSV report.*")
    parts.append("")
    return "\n".join(parts)


def _summary_section(report: ExperimentReport) -> str:
    if not report.summary:
        return ""
    parts = [Header.atx(level=_H2, title="Summary")]
    for key, value in report.summary.items():
        if isinstance(value, dict):
            continue
        parts.append(f"- **{key}**: {format_value(value)}")
    parts.append("")
    return "\n".join(parts)


def _config_section(report: ExperimentReport) -> str:
    parts = [
        Header.atx(level=_H2, title="Configuration"),
        "<details>",
        "<summary>Parameters</summary>",
        "",
        "```json",
        json.dumps(report.to_dict()["config"], indent=2),
        "```",
        "",
        "</details>",
        "",
    ]
    return "\n".join(parts)


def render_markdown(report: ExperimentReport) -> str:
    sections = [
        _report_header(report),
        _costs_section(report),
        _summary_section(report),
        _table_section(report),
        _config_section(report),
    ]
    return "\n".join(s for s in sections if s)


def generate_md(report: ExperimentReport, output_path: str | Path) -> None:
    path = Path(output_path)
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(render_markdown(report), encoding="utf-8")
    _logger.info("Markdown report: %s", path)
