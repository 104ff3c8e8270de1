"""Experiment report data structure and its JSON/CSV writers."""

from __future__ import annotations

import csv
import json
import logging
from dataclasses import dataclass, field
from importlib.metadata import PackageNotFoundError
from importlib.metadata import version as _get_version
from pathlib import Path
from typing import Any

from bures_gpca.core.serialization import serialize_dataclass

_logger = logging.getLogger(__name__)

SCHEMA_VERSION = "1.0"


def library_version() -> str:
    try:
        return _get_version("bures-gpca")
    except PackageNotFoundError:
        return "0+unknown"


@dataclass(slots=True)
class ExperimentReport:
    """Result of one experiment run.

    Attributes:
        experiment: Experiment id (e.g. "grid", "circle", "distortion-curve")
        config: Echo of every parameter used, seed included
        costs: Residual costs per method ("gpca", "tpca"), one entry per component order
        improvement_pct: (TPCA − GPCA)/TPCA × 100 per component order
        components: Serialized components per method
        table: Flat rows written by the CSV writer (projection times or per-trial results)
        summary: Scalar statistics of the run
        dataset: The input dataset (``{"dim", "matrices"}``) when it is a single dataset
        converged: False when any solver run stopped without converging
        timings: Wall-clock seconds per phase; the only non-deterministic field
    """

    experiment: str
    config: dict[str, Any]
    costs: dict[str, list[float]] = field(default_factory=dict)
    improvement_pct: list[float] = field(default_factory=list)
    components: dict[str, list[dict[str, Any]]] = field(default_factory=dict)
    table: list[dict[str, Any]] = field(default_factory=list)
    summary: dict[str, Any] = field(default_factory=dict)
    dataset: dict[str, Any] | None = None
    converged: bool = True
    timings: dict[str, float] = field(default_factory=dict)
    version: str = field(default_factory=library_version)
    schema_version: str = SCHEMA_VERSION

    def to_dict(self, *, include_timings: bool = True) -> dict[str, Any]:
        data: dict[str, Any] = {
            "schema_version": self.schema_version,
            "version": self.version,
            "experiment": self.experiment,
            "config": serialize_dataclass(self.config),
            "converged": self.converged,
            "costs": serialize_dataclass(self.costs),
            "improvement_pct": serialize_dataclass(self.improvement_pct),
            "summary": serialize_dataclass(self.summary),
            "components": serialize_dataclass(self.components),
            "table": serialize_dataclass(self.table),
        }
        if self.dataset is not None:
            data["dataset"] = self.dataset
        if include_timings:
            data["timings"] = serialize_dataclass(self.timings)
        return data


def generate_json(
    report: ExperimentReport, output_path: str | Path, *, include_timings: bool = True
) -> None:
    """Write the report as JSON. Without timings the output is reproducible byte for byte."""
    path = Path(output_path)
    path.parent.mkdir(parents=True, exist_ok=True)
    text = json.dumps(report.to_dict(include_timings=include_timings), indent=2, allow_nan=False)
    path.write_text(text + "\n", encoding="utf-8")
    _logger.info("JSON report: %s", path)


def generate_csv(report: ExperimentReport, output_path: str | Path) -> None:
    """Write ``report.table`` as RFC 4180 CSV, one column per key of the first row."""
    path = Path(output_path)
    path.parent.mkdir(parents=True, exist_ok=True)
    rows = serialize_dataclass(report.table)
    with path.open("w", newline="", encoding="utf-8") as f:
        if not rows:
            return
        writer = csv.DictWriter(f, fieldnames=list(rows[0].keys()))
        writer.writeheader()
        writer.writerows(rows)
    _logger.info("CSV report: %s", path)


def save_report(
    report: ExperimentReport,
    output_path: str | Path,
    *,
    fmt: str | None = None,
    include_timings: bool = True,
) -> None:
    """Write the report in ``fmt`` ("json" or "csv"), inferred from the suffix when omitted."""
    path = Path(output_path)
    fmt = fmt or ("csv" if path.suffix.lower() == ".csv" else "json")
    if fmt == "csv":
        generate_csv(report, path)
    elif fmt == "json":
        generate_json(report, path, include_timings=include_timings)
    else:
        raise ValueError(f"unknown report format {fmt!r}")


def load_report(path: str | Path) -> dict[str, Any]:
    """Read a JSON report back as a dict, checking the schema major version."""
    data = json.loads(Path(path).read_text(encoding="utf-8"))
    schema_version = data.get("schema_version")
    try:
        major = int(schema_version.split(".")[0]) if schema_version else 0
    except (ValueError, AttributeError):
        major = 0
    if major != int(SCHEMA_VERSION.split(".")[0]):
        raise ValueError(f"Unsupported schema version: {schema_version!r}")
    return data
