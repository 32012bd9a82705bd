"""
Per-edge analysis of a polygonal curve read from a polyline file (or sampled
from a registry curve), written as a CSV or JSON table.
"""

from .base_analyzer import BaseAnalyzer
from ..config import IssueCategory, ToleranceConfig
from ..curve_analysis import CIRCLE_FIT_NOTE, DiscreteCurve, analyze_edge
from ..curve_io import read_curve_file, validate_discrete_curve
from ..errors import (
    CurveFormatError,
    DegenerateConfigurationError,
    GeometryError,
    InsufficientNeighborhoodError,
    ZigzagSingularityError,
)
from ..logging_util import edge_logger
from ..report_writer import write_edge_analyses

# Issue category per geometry error type, most specific first
_CATEGORIES = (
    (ZigzagSingularityError, IssueCategory.ZIGZAG_SINGULARITY),
    (InsufficientNeighborhoodError, IssueCategory.INSUFFICIENT_NEIGHBORHOOD),
    (DegenerateConfigurationError, IssueCategory.DEGENERATE_INPUT),
    (GeometryError, IssueCategory.PROCESSING_ERROR),
)


def note_category(note):
    """Issue category of an edge note."""
    if note.startswith(CIRCLE_FIT_NOTE):
        return IssueCategory.CIRCLE_FIT_RESIDUAL
    if "infinity" in note:
        return IssueCategory.POINT_AT_INFINITY
    return IssueCategory.UNDEFINED_QUANTITY


class PolylineAnalyzer(BaseAnalyzer):
    """
    Analyzer for a single discrete curve.
    """
    def __init__(self, logger, tracker, strict=False, fmt="csv",
                 arclength_tol=ToleranceConfig.ARCLENGTH):
        """
        Args:
            strict: Re-raise the first singular edge instead of skipping it.
            fmt: Output format, "csv" or "json".
            arclength_tol: Tolerance of the arclength criterion.
        """
        super().__init__(logger, tracker)
        self.strict = strict
        self.fmt = fmt
        self.arclength_tol = arclength_tol

    def _load(self, source):
        if isinstance(source, DiscreteCurve):
            return source
        try:
            return read_curve_file(source)
        except (OSError, CurveFormatError) as e:
            self.logger.error(f"Failed to read curve file: {e}")
            self.tracker.add_issue("file", "error", IssueCategory.FILE_ACCESS, "input_file", str(e))
            raise

    def analyze_curve(self, curve):
        """
        Analyse every interior edge; singular edges are skipped and tracked.

        Returns:
            List of EdgeAnalysis in edge order.
        """
        if not validate_discrete_curve(curve, self.tracker):
            raise DegenerateConfigurationError(
                f"{curve.name}: four consecutive vertices must be pairwise distinct")

        edges = curve.interior_edges()
        kind = "closed" if curve.closed else "open"
        self.logger.info(f"Analysing {len(edges)} edges of {curve.name} ({curve.dim}D, {kind})")

        analyses = []
        for i in edges:
            edge_id = f"{curve.name}:edge{i}"
            self.tracker.set_current_record_id(edge_id)
            try:
                analysis = analyze_edge(curve, i, arclength_tol=self.arclength_tol)
            except GeometryError as e:
                category = next(c for error_type, c in _CATEGORIES if isinstance(e, error_type))
                edge_logger(self.logger, edge_id).warning(f"edge skipped: {e}")
                self.tracker.add_issue(edge_id, "warning", category, "edge", str(e))
                self.tracker.record_processed(False)
                if self.strict:
                    raise
                continue
            for note in analysis.notes:
                category = note_category(note)
                level = "warning" if category == IssueCategory.CIRCLE_FIT_RESIDUAL else "info"
                edge_logger(self.logger, edge_id).debug(note)
                self.tracker.add_issue(edge_id, level, category, "edge", note)
            self.tracker.record_processed(True)
            analyses.append(analysis)
        return analyses

    def run(self, source, output_path: str):
        """
        Analyse a curve file (or a DiscreteCurve) and write the per-edge table.

        Returns:
            List of EdgeAnalysis.
        """
        curve = self._load(source)
        analyses = self.analyze_curve(curve)
        if output_path:
            write_edge_analyses(analyses, output_path, self.fmt)
            self.logger.info(f"Edge analysis of {len(analyses)} edges saved to: {output_path}")
        return analyses
