"""Reporting module - experiment reports, Markdown summaries and SVG plots."""

from bures_gpca.reporting.markdown import generate_md, render_markdown
from bures_gpca.reporting.report import (
    SCHEMA_VERSION,
    ExperimentReport,
    generate_csv,
    generate_json,
    library_version,
    load_report,
    save_report,
)

__all__ = [
    "SCHEMA_VERSION",
    "ExperimentReport",
    "generate_csv",
    "generate_json",
    "generate_md",
    "library_version",
    "load_report",
    "render_markdown",
    "save_report",
]
