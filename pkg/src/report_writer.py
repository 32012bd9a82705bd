"""
Artifacts of the analysis commands: the convergence table (CSV), the full
report (JSON), log-log error plots (one SVG per quantity), and per-edge
dumps of polyline analyses.

Outputs are byte-identical for identical inputs: no timestamps are written
and SVG ids are salted with a fixed string.
"""

import json
import logging
import os

import matplotlib
matplotlib.use("Agg")
import matplotlib.pyplot as plt
import pandas as pd

from .config import ExperimentDefaults
from .errors import ArtifactWriteError

logger = logging.getLogger(__name__)

matplotlib.rcParams["svg.hashsalt"] = "discrete-curvature"

CSV_NAME = "convergence.csv"
JSON_NAME = "convergence.json"


def _ensure_dir(path):
    directory = os.path.dirname(path)
    if directory:
        os.makedirs(directory, exist_ok=True)


def write_csv(report, path):
    """Long table (curve, quantity, level, epsilon, linf_error)."""
    try:
        _ensure_dir(path)
        report.to_frame().to_csv(path, index=False, float_format=ExperimentDefaults.CSV_FLOAT_FORMAT)
    except OSError as e:
        raise ArtifactWriteError(path, e) from e
    return path


def write_json(report, path):
    """Full report including slopes, residuals, reference rates and notes."""
    try:
        _ensure_dir(path)
        with open(path, "w", encoding="utf-8") as f:
            json.dump(report.to_dict(), f, indent=2, sort_keys=True)
            f.write("\n")
    except OSError as e:
        raise ArtifactWriteError(path, e) from e
    return path


def write_plots(report, output_dir):
    """One log-log plot of l-infinity error against eps per quantity, all curves overlaid."""
    frame = report.to_frame()
    paths = []
    for quantity in report.config.quantities:
        subset = frame[frame["quantity"] == quantity]
        if subset.empty:
            continue
        path = os.path.join(output_dir, f"convergence_{quantity}.svg")
        fig, ax = plt.subplots(figsize=(6, 4.5))
        for curve, rows in subset.groupby("curve", sort=False):
            series = report.curves[curve].series[quantity]
            label = curve if series.fit.slope is None else f"{curve} (rate {series.fit.slope:.3f})"
            ax.plot(rows["epsilon"], rows["linf_error"], marker="o", markersize=3, label=label)
        ax.set_xscale("log")
        ax.set_yscale("log")
        ax.set_xlabel("eps")
        ax.set_ylabel(f"l-infinity error of {quantity}")
        ax.grid(True, which="both", linewidth=0.3)
        ax.legend(fontsize="small")
        try:
            _ensure_dir(path)
            fig.savefig(path, format="svg", metadata={"Date": None})
        except OSError as e:
            raise ArtifactWriteError(path, e) from e
        finally:
            plt.close(fig)
        paths.append(path)
    return paths


def write_report(report, output_dir, formats=None):
    """
    Write the requested artifacts of a convergence report.

    Returns:
        List of written paths (also appended to report.artifacts).
    """
    formats = formats if formats is not None else report.config.formats
    os.makedirs(output_dir, exist_ok=True)
    paths = []
    if "csv" in formats:
        paths.append(write_csv(report, os.path.join(output_dir, CSV_NAME)))
    if "json" in formats:
        paths.append(write_json(report, os.path.join(output_dir, JSON_NAME)))
    if "svg" in formats:
        paths.extend(write_plots(report, output_dir))
    for path in paths:
        logger.info(f"Wrote {path}")
    report.artifacts.extend(paths)
    return paths


def edge_analysis_frame(analyses):
    """One row per analysed edge."""
    return pd.DataFrame.from_records([a.to_record() for a in analyses])


def write_edge_analyses(analyses, path, fmt="csv"):
    """Per-edge dump of a polyline analysis as CSV or JSON."""
    frame = edge_analysis_frame(analyses)
    try:
        _ensure_dir(path)
        if fmt == "json":
            frame.to_json(path, orient="records", indent=2, double_precision=15)
        else:
            frame.to_csv(path, index=False, float_format=ExperimentDefaults.CSV_FLOAT_FORMAT)
    except OSError as e:
        raise ArtifactWriteError(path, e) from e
    return path
