"""Tests for experiment reports: JSON/CSV writers, Markdown and SVG rendering."""

from __future__ import annotations

import csv
import json
import math
from pathlib import Path
from typing import Any

import numpy as np
import pytest

from bures_gpca.core.errors import UnsupportedDimensionError
from bures_gpca.core.types import GaussianDataset, PrincipalComponent
from bures_gpca.geometry.geodesic import make_segment
from bures_gpca.reporting.markdown import format_value, render_markdown
from bures_gpca.reporting.report import (
    SCHEMA_VERSION,
    ExperimentReport,
    load_report,
    save_report,
)


def _component() -> dict[str, Any]:
    seg = make_segment(np.eye(2), np.diag([1.0, -1.0]) / math.sqrt(2.0))
    comp = PrincipalComponent(
        order=1,
        segment=seg,
        rotations=(np.eye(2), np.eye(2)),
        projection_times=(-0.5, 0.5),
        cost=0.0,
    )
    return comp.to_dict()


def _report(**overrides: Any) -> ExperimentReport:
    dataset = GaussianDataset.from_matrices([np.diag([1.5, 0.5]), np.diag([0.5, 1.5])])
    fields: dict[str, Any] = {
        "experiment": "fit",
        "config": {"solver": {"seed": 0}},
        "costs": {"gpca": [0.25], "tpca": [0.5]},
        "improvement_pct": [50.0],
        "components": {"gpca": [_component()]},
        "table": [{"index": 0, "gpca_t1": -0.5}, {"index": 1, "gpca_t1": 0.5}],
        "summary": {"n": 2, "explained_fraction": [0.75]},
        "dataset": dataset.to_dict(),
        "timings": {"gpca": 0.1},
        "version": "0.1.0",
    }
    fields.update(overrides)
    return ExperimentReport(**fields)


class TestExperimentReport:
    def test_to_dict_fields(self) -> None:
        data = _report().to_dict()
        assert data["schema_version"] == SCHEMA_VERSION
        assert data["costs"] == {"gpca": [0.25], "tpca": [0.5]}
        assert data["components"]["gpca"][0]["t_max"] == pytest.approx(math.sqrt(2.0) - 1e-3)
        assert "timings" in data

    def test_without_timings(self) -> None:
        assert "timings" not in _report().to_dict(include_timings=False)

    def test_non_finite_values_are_strings(self) -> None:
        data = _report(summary={"bound": math.inf}).to_dict()
        assert data["summary"]["bound"] == "inf"
        json.dumps(data, allow_nan=False)

    def test_dataset_omitted_for_sweeps(self) -> None:
        assert "dataset" not in _report(dataset=None).to_dict()


class TestWriters:
    def test_json_round_trip(self, tmp_path: Path) -> None:
        path = tmp_path / "out" / "report.json"
        save_report(_report(), path)
        data = load_report(path)
        assert data["experiment"] == "fit"
        assert data["improvement_pct"] == [50.0]

    def test_json_is_byte_stable(self, tmp_path: Path) -> None:
        save_report(_report(timings={"gpca": 1.0}), tmp_path / "a.json", include_timings=False)
        save_report(_report(timings={"gpca": 2.0}), tmp_path / "b.json", include_timings=False)
        assert (tmp_path / "a.json").read_bytes() == (tmp_path / "b.json").read_bytes()

    def test_csv_from_suffix(self, tmp_path: Path) -> None:
        path = tmp_path / "table.csv"
        save_report(_report(), path)
        with path.open(newline="", encoding="utf-8") as f:
            rows = list(csv.DictReader(f))
        assert rows == [{"index": "0", "gpca_t1": "-0.5"}, {"index": "1", "gpca_t1": "0.5"}]

    def test_explicit_format_wins(self, tmp_path: Path) -> None:
        path = tmp_path / "table.txt"
        save_report(_report(), path, fmt="csv")
        assert path.read_text(encoding="utf-8").startswith("index,gpca_t1")

    def test_unknown_format(self, tmp_path: Path) -> None:
        with pytest.raises(ValueError, match="unknown report format"):
            save_report(_report(), tmp_path / "r.xml", fmt="xml")

    def test_schema_major_mismatch(self, tmp_path: Path) -> None:
        path = tmp_path / "old.json"
        path.write_text(json.dumps({"schema_version": "0.3", "experiment": "fit"}))
        with pytest.raises(ValueError, match="Unsupported schema version"):
            load_report(path)


class TestMarkdown:
    def test_format_value(self) -> None:
        assert format_value(True) == "yes"
        assert format_value(0.123456789) == "0.123457"
        assert format_value([1.0, 2.5]) == "1, 2.5"

    def test_sections(self) -> None:
        md = render_markdown(_report())
        assert md.lstrip().startswith("# Experiment: fit")
        assert "## Residual costs" in md
        assert "50.000%" in md
        assert "## Summary" in md
        assert "- **n**: 2" in md
        assert "## Results" in md
        assert "<summary>Parameters</summary>" in md

    def test_not_converged_is_flagged(self) -> None:
        assert "**not converged**" in render_markdown(_report(converged=False))

    def test_long_tables_are_truncated(self) -> None:
        table = [{"index": i} for i in range(60)]
        md = render_markdown(_report(table=table))
        assert "10 more rows in the CSV report" in md


class TestSvg:
    def test_writes_reproducible_svg(self, tmp_path: Path) -> None:
        pytest.importorskip("matplotlib")
        from bures_gpca.reporting.plot import generate_svg

        generate_svg(_report(), tmp_path / "a.svg")
        generate_svg(_report(), tmp_path / "b.svg")
        text = (tmp_path / "a.svg").read_text(encoding="utf-8")
        assert "<svg" in text
        assert (tmp_path / "a.svg").read_bytes() == (tmp_path / "b.svg").read_bytes()

    def test_needs_two_by_two_dataset(self) -> None:
        pytest.importorskip("matplotlib")
        from bures_gpca.reporting.plot import cone_figure

        with pytest.raises(UnsupportedDimensionError):
            cone_figure(_report(dataset=None))
