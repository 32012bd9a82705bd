"""
Plain-text polyline files.

Format: the first non-comment line is `open` or `closed`, then one vertex
per line with 2 or 3 whitespace-separated decimals. Blank lines and
everything after `#` are ignored.
"""

import io
import logging
import os

import numpy as np
import pandas as pd

from .config import ExperimentDefaults, IssueCategory
from .curve_analysis import DiscreteCurve
from .errors import CurveFormatError

logger = logging.getLogger(__name__)

HEADERS = ("open", "closed")


def _strip(line):
    return line.split("#", 1)[0].strip()


def read_curve_file(path, name=None):
    """
    Parse a polyline file into a DiscreteCurve.

    Raises:
        CurveFormatError: bad header, mixed dimensions, non-numeric values or
            fewer than 4 vertices; the message names the offending line.
    """
    header = None
    records = []
    with open(path, "r", encoding="utf-8") as f:
        for number, raw in enumerate(f, start=1):
            text = _strip(raw)
            if not text:
                continue
            if header is None:
                header = text.lower()
                if header not in HEADERS:
                    raise CurveFormatError(f"expected header 'open' or 'closed', got '{text}'", path, number)
                continue
            records.append((number, text))

    if header is None:
        raise CurveFormatError("empty curve file", path)
    if len(records) < 4:
        raise CurveFormatError(f"a curve needs at least 4 vertices, found {len(records)}", path)

    widths = [len(text.split()) for _, text in records]
    dim = widths[0]
    if dim not in (2, 3):
        raise CurveFormatError(f"expected 2 or 3 coordinates per vertex, found {dim}", path, records[0][0])
    for (number, _), width in zip(records, widths):
        if width != dim:
            raise CurveFormatError(f"mixed dimensions: expected {dim} coordinates, found {width}", path, number)

    body = "\n".join(text for _, text in records)
    frame = pd.read_csv(io.StringIO(body), sep=r"\s+", header=None, dtype=str)
    values = frame.apply(pd.to_numeric, errors="coerce").to_numpy(dtype=float)
    bad_rows = np.flatnonzero(~np.isfinite(values).all(axis=1))
    if bad_rows.size:
        number, text = records[int(bad_rows[0])]
        raise CurveFormatError(f"non-numeric coordinate in '{text}'", path, number)

    if name is None:
        name = os.path.splitext(os.path.basename(path))[0]
    logger.info(f"Read {len(records)} vertices ({dim}D, {header}) from {path}")
    return DiscreteCurve(values, closed=(header == "closed"), name=name)


def write_curve_file(curve, path, comment=None):
    """Write a DiscreteCurve in the polyline format."""
    directory = os.path.dirname(path)
    if directory:
        os.makedirs(directory, exist_ok=True)
    with open(path, "w", encoding="utf-8", newline="") as f:
        if comment:
            for line in str(comment).splitlines():
                f.write(f"# {line}\n")
        f.write("closed\n" if curve.closed else "open\n")
        pd.DataFrame(curve.vertices).to_csv(
            f, sep=" ", header=False, index=False, float_format=ExperimentDefaults.CSV_FLOAT_FORMAT)
    return path


def validate_discrete_curve(curve, tracker):
    """
    Check that any four consecutive vertices are pairwise distinct.

    Every coincident pair is recorded in the tracker before the verdict.

    Returns:
        True if the curve passes.
    """
    violations = curve.distinctness_violations()
    for j, k in violations:
        tracker.add_issue(
            f"{curve.name}:vertex{j}", "error", IssueCategory.DEGENERATE_INPUT, "vertices",
            f"vertices {j} and {k} coincide within four consecutive vertices",
        )
    return not violations
