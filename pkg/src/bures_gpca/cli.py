"""CLI for the geodesic PCA experiments.

Usage:
    bures-gpca grid --out grid.json --plot grid.svg
    bures-gpca circle --a 1.8 --b 0.2 --n 20 --restarts 5 --out circle.json
    bures-gpca distortion-curve --format csv --out curve.csv
    bures-gpca random-trials --trials 20 --workers 4 --out trials.json
    bures-gpca fit data.json --components 2 --md fit.md
    bures-gpca oracle-1d --sigma 1 2 3

Configuration (in order of precedence):
    1. CLI arguments (highest)
    2. Environment variables: BURES_GPCA_SEED, BURES_GPCA_EPSILON,
       BURES_GPCA_RESTARTS, BURES_GPCA_LOG_LEVEL
    3. pyproject.toml [tool.bures-gpca] section (lowest)

Exit codes: 0 success, 2 invalid input, 3 solver did not converge (results are
still written and flagged).
"""

from __future__ import annotations

import argparse
import json
import logging
import os
import sys
from collections.abc import Callable
from pathlib import Path
from typing import Any

import numpy as np
from pydantic import ValidationError

from bures_gpca.core.errors import GpcaError
from bures_gpca.core.types import Gaussian1D
from bures_gpca.experiments.config import (
    CircleConfig,
    DistortionCurveConfig,
    GridConfig,
    RandomTrialsConfig,
)
from bures_gpca.experiments.datasets import load_dataset
from bures_gpca.experiments.runner import (
    run_circle,
    run_comparison,
    run_distortion_curve,
    run_grid,
    run_oracle_1d,
    run_random_trials,
)
from bures_gpca.reporting.markdown import generate_md
from bures_gpca.reporting.report import ExperimentReport, save_report
from bures_gpca.solver.config import SolverConfig

_logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_INVALID = 2
EXIT_NOT_CONVERGED = 3


def load_config_from_pyproject() -> dict[str, Any]:
    """Load configuration from pyproject.toml [tool.bures-gpca] section.

    Searches for pyproject.toml in current directory and parents.
    Returns empty dict if not found or section doesn't exist.
    """
    import tomllib

    current = Path.cwd()
    for parent in [current, *current.parents]:
        pyproject = parent / "pyproject.toml"
        if pyproject.exists():
            try:
                data = tomllib.loads(pyproject.read_text(encoding="utf-8"))
                return data.get("tool", {}).get("bures-gpca", {})
            except Exception:
                _logger.warning("Failed to parse pyproject.toml", exc_info=True)
                return {}
    return {}


def get_config_value(key: str, cli_value: Any, env_var: str) -> Any:
    """Get config value with precedence: CLI > env var > pyproject.toml."""
    if cli_value is not None:
        return cli_value

    env_value = os.environ.get(env_var)
    if env_value:
        return env_value

    config = load_config_from_pyproject()
    return config.get(key)


def _resolve(key: str, cli_value: Any, convert: Callable[[Any], Any]) -> Any:
    env_var = "BURES_GPCA_" + key.upper().replace("-", "_")
    value = get_config_value(key, cli_value, env_var)
    return None if value is None else convert(value)


def build_solver_config(args: argparse.Namespace) -> SolverConfig:
    """SolverConfig from flags, environment and pyproject; unset values keep their defaults."""
    overrides = {
        "seed": _resolve("seed", args.seed, int),
        "epsilon": _resolve("epsilon", args.epsilon, float),
        "restarts": _resolve("restarts", args.restarts, int),
        "workers": args.workers,
    }
    return SolverConfig(**{k: v for k, v in overrides.items() if v is not None})


def _configure_logging(cli_level: str | None) -> None:
    level = str(_resolve("log-level", cli_level, str) or "WARNING").upper()
    logging.basicConfig(
        level=getattr(logging, level, logging.WARNING),
        format="%(levelname)s %(name)s: %(message)s",
    )


# ---------------------------------------------------------------------------
# Subcommands
# ---------------------------------------------------------------------------


def _cmd_grid(args: argparse.Namespace, config: SolverConfig) -> ExperimentReport:
    values = {"a_range": args.a_range, "b_range": args.b_range, "na": args.na, "nb": args.nb}
    grid = GridConfig(**{k: v for k, v in values.items() if v is not None})
    return run_grid(grid, config, components=args.components)


def _cmd_circle(args: argparse.Namespace, config: SolverConfig) -> ExperimentReport:
    values = {"a": args.a, "b": args.b, "n": args.n, "opening": args.opening}
    circle = CircleConfig(**{k: v for k, v in values.items() if v is not None})
    return run_circle(circle, config, components=args.components)


def _cmd_random_trials(args: argparse.Namespace, config: SolverConfig) -> ExperimentReport:
    values = {"trials": args.trials, "n": args.n}
    return run_random_trials(
        RandomTrialsConfig(**{k: v for k, v in values.items() if v is not None}), config
    )


def _cmd_distortion_curve(args: argparse.Namespace, config: SolverConfig) -> ExperimentReport:
    values = {
        "ratios": tuple(args.ratios) if args.ratios else None,
        "n": args.n,
        "trials_per_ratio": args.trials_per_ratio,
    }
    curve = DistortionCurveConfig(**{k: v for k, v in values.items() if v is not None})
    return run_distortion_curve(curve, config)


def _cmd_fit(args: argparse.Namespace, config: SolverConfig) -> ExperimentReport:
    dataset = load_dataset(args.dataset)
    return run_comparison(
        dataset,
        config,
        components=args.components,
        experiment="fit",
        extra_config={"dataset": str(args.dataset)},
    )


def _cmd_oracle_1d(args: argparse.Namespace, config: SolverConfig) -> ExperimentReport:
    if args.random is not None:
        rng = np.random.default_rng(config.seed)
        sigmas = rng.uniform(0.5, 3.0, size=args.random).tolist()
        means = [0.0] * args.random
    else:
        sigmas = args.sigma or []
        means = args.mean if args.mean is not None else [0.0] * len(sigmas)
        if len(means) != len(sigmas):
            raise GpcaError("--mean and --sigma need the same number of values")
    gaussians = [Gaussian1D(mean=m, sigma=s) for m, s in zip(means, sigmas, strict=True)]
    return run_oracle_1d(gaussians, config)


_COMMANDS: dict[str, Callable[[argparse.Namespace, SolverConfig], ExperimentReport]] = {
    "grid": _cmd_grid,
    "circle": _cmd_circle,
    "random-trials": _cmd_random_trials,
    "distortion-curve": _cmd_distortion_curve,
    "fit": _cmd_fit,
    "oracle-1d": _cmd_oracle_1d,
}

# Sweeps and the 1D oracle carry no 2×2 dataset to draw.
_NO_PLOT = frozenset({"random-trials", "distortion-curve", "oracle-1d"})


# ---------------------------------------------------------------------------
# Parser
# ---------------------------------------------------------------------------


def _common_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--seed", type=int, help="Seed of the restart perturbations and samplers")
    common.add_argument("--epsilon", type=float, help="Safety margin of the time interval")
    common.add_argument("--restarts", type=int, help="Initializations per component")
    common.add_argument("--workers", type=int, help="Threads for restarts and trials")
    common.add_argument(
        "--components", type=int, default=2, help="Number of components to fit (default 2)"
    )
    common.add_argument("--out", metavar="PATH", type=Path, help="Report path (default stdout)")
    common.add_argument(
        "--format",
        choices=["json", "csv"],
        help="Report format (default: from the --out suffix, else json)",
    )
    common.add_argument("--plot", metavar="PATH", type=Path, help="SVG plot in cone coordinates")
    common.add_argument("--md", metavar="PATH", type=Path, help="Markdown summary")
    common.add_argument(
        "--no-timings",
        action="store_true",
        help="Leave wall-clock timings out of the JSON report (byte-reproducible output)",
    )
    common.add_argument(
        "--log-level",
        choices=["DEBUG", "INFO", "WARNING", "ERROR"],
        help="Logging level (default WARNING)",
    )
    return common


def build_parser() -> argparse.ArgumentParser:
    common = _common_parser()
    parser = argparse.ArgumentParser(
        prog="bures-gpca",
        description="Geodesic PCA of centered Gaussians under the Bures-Wasserstein metric",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    grid = sub.add_parser("grid", parents=[common], help="Diagonal grid diag(a², b²)")
    grid.add_argument("--a-range", nargs=2, type=float, metavar=("LO", "HI"))
    grid.add_argument("--b-range", nargs=2, type=float, metavar=("LO", "HI"))
    grid.add_argument("--na", type=int)
    grid.add_argument("--nb", type=int)

    circle = sub.add_parser("circle", parents=[common], help="Open circle of rotated matrices")
    circle.add_argument("--a", type=float)
    circle.add_argument("--b", type=float)
    circle.add_argument("--n", type=int)
    circle.add_argument("--opening", type=float)

    trials = sub.add_parser(
        "random-trials", parents=[common], help="First-component improvement on random samples"
    )
    trials.add_argument("--trials", type=int)
    trials.add_argument("--n", type=int)

    curve = sub.add_parser(
        "distortion-curve", parents=[common], help="Improvement against the anisotropy ratio"
    )
    curve.add_argument("--ratios", nargs="+", type=float)
    curve.add_argument("--n", type=int)
    curve.add_argument("--trials-per-ratio", type=int)

    fit = sub.add_parser("fit", parents=[common], help="GPCA and TPCA of a dataset file")
    fit.add_argument("dataset", type=Path, help="Dataset (.json or .csv)")

    oracle = sub.add_parser("oracle-1d", parents=[common], help="Closed-form 1D Gaussian fit")
    oracle.add_argument("--sigma", nargs="+", type=float)
    oracle.add_argument("--mean", nargs="+", type=float)
    oracle.add_argument("--random", type=int, metavar="N", help="N random centered Gaussians")
    return parser


# ---------------------------------------------------------------------------
# Entry point
# ---------------------------------------------------------------------------


def _write_outputs(report: ExperimentReport, args: argparse.Namespace) -> None:
    include_timings = not args.no_timings
    if args.plot:
        from bures_gpca.reporting.plot import generate_svg

        generate_svg(report, args.plot)
        print(f"SVG plot: {args.plot}")
    if args.out:
        save_report(report, args.out, fmt=args.format, include_timings=include_timings)
        print(f"Report: {args.out}")
    else:
        print(json.dumps(report.to_dict(include_timings=include_timings), indent=2))
    if args.md:
        generate_md(report, args.md)
        print(f"Markdown report: {args.md}")


def main(argv: list[str] | None = None) -> int:
    """Main CLI entry point."""
    args = build_parser().parse_args(argv)
    _configure_logging(args.log_level)

    if args.plot and args.command in _NO_PLOT:
        print(f"Error: --plot is not available for {args.command}", file=sys.stderr)
        return EXIT_INVALID

    try:
        config = build_solver_config(args)
        report = _COMMANDS[args.command](args, config)
    except (GpcaError, ValidationError, ValueError) as e:
        print(f"Error: {e}", file=sys.stderr)
        return EXIT_INVALID

    try:
        _write_outputs(report, args)
    except (GpcaError, ImportError) as e:
        print(f"Error: {e}", file=sys.stderr)
        return EXIT_INVALID

    if not report.converged:
        print("Warning: solver did not converge; results are flagged", file=sys.stderr)
        return EXIT_NOT_CONVERGED
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
