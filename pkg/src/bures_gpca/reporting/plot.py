"""Vector-graphics rendering of a 2×2 experiment in cone coordinates.

Requires the ``plot`` extra (matplotlib).
"""

from __future__ import annotations

import logging
from pathlib import Path
from typing import TYPE_CHECKING, Any

import numpy as np

from bures_gpca.core.errors import UnsupportedDimensionError
from bures_gpca.core.serialization import decode_matrix
from bures_gpca.core.types import GeodesicSegment
from bures_gpca.geometry.coords import spd_to_cone
from bures_gpca.reporting.report import ExperimentReport

if TYPE_CHECKING:
    from matplotlib.figure import Figure

_logger = logging.getLogger(__name__)

_COLORS = {"gpca": "tab:red", "tpca": "tab:blue"}
_SAMPLES = 200


def _cone_points(matrices: list[Any]) -> np.ndarray:
    points = []
    for m in matrices:
        c = spd_to_cone(m)
        points.append((c.x, c.y, c.z))
    return np.array(points)


def _segment_window(segment: GeodesicSegment, times: list[float]) -> tuple[float, float]:
    """Times covered by the data, padded by a quarter of their span on each side."""
    lo, hi = min(times), max(times)
    pad = 0.25 * max(hi - lo, 1e-3)
    return max(lo - pad, segment.t_min), min(hi + pad, segment.t_max)


def cone_figure(report: ExperimentReport) -> Figure:
    """Dataset scatter plus the GPCA and TPCA component curves, in cone coordinates."""
    try:
        from matplotlib.figure import Figure
    except ImportError as e:
        raise ImportError("Plotting requires matplotlib: pip install 'bures-gpca[plot]'") from e
    if report.dataset is None or int(report.dataset["dim"]) != 2:
        dim = 0 if report.dataset is None else int(report.dataset["dim"])
        raise UnsupportedDimensionError("cone_figure", dim)

    dim = int(report.dataset["dim"])
    matrices = [decode_matrix(m, dim) for m in report.dataset["matrices"]]
    data = _cone_points(matrices)

    fig = Figure(figsize=(7, 6))
    ax = fig.add_subplot(111, projection="3d")
    ax.scatter(data[:, 0], data[:, 1], data[:, 2], c="black", s=12, label="data")
    for method, components in report.components.items():
        for comp in components:
            segment = GeodesicSegment.from_dict(comp)
            times = [float(t) for t in comp["projection_times"]]
            window = _segment_window(segment, times)
            curve = _cone_points(segment.sample(_SAMPLES, window))
            ax.plot(
                curve[:, 0],
                curve[:, 1],
                curve[:, 2],
                color=_COLORS.get(method, "tab:gray"),
                linestyle="-" if comp["order"] == 1 else "--",
                label=f"{method.upper()} {comp['order']}",
            )
    ax.set_xlabel("x")
    ax.set_ylabel("y")
    ax.set_zlabel("z")
    ax.set_title(report.experiment)
    ax.legend(loc="upper left")
    return fig


def generate_svg(report: ExperimentReport, output_path: str | Path) -> None:
    path = Path(output_path)
    fig = cone_figure(report)
    import matplotlib

    path.parent.mkdir(parents=True, exist_ok=True)
    # fixed hash salt and no date keep the SVG reproducible
    with matplotlib.rc_context({"svg.hashsalt": "bures-gpca"}):
        fig.savefig(path, format="svg", bbox_inches="tight", metadata={"Date": None})
    _logger.info("SVG plot: %s", path)
