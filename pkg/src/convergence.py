"""
Convergence experiment: sample registry curves at eps = base * growth^level,
measure l-infinity errors of the discrete invariants against the smooth
ground truth on interior edges, and fit log-log rates.
"""

import logging
from dataclasses import dataclass, field
from typing import Dict, List, Optional

import numpy as np
import pandas as pd

from .config import CurveRegistryConfig, ExperimentDefaults, IssueCategory
from .curve_analysis import CIRCLE_FIT_NOTE, analyze_edge
from .cross_ratio import is_infinite
from .errors import ConfigError, GeometryError, UndefinedQuantityError, ZigzagSingularityError
from .quat_core import as_space_point
from .smooth_reference import (
    ParametricCurve,
    get_curve,
    sample_full,
    smooth_curvature,
    smooth_curvature_center,
    smooth_frame,
    smooth_torsion,
    tilde_point,
)

logger = logging.getLogger(__name__)

ALL_QUANTITIES = ExperimentDefaults.QUANTITIES + ExperimentDefaults.OPTIONAL_QUANTITIES


# =============================================================================
# CONFIGURATION
# =============================================================================
def parse_levels(text):
    """
    Parse a level range "A..B" (inclusive, step +-1) or a comma list "0,-1,-2".

    Raises:
        ConfigError: malformed text.
    """
    text = str(text).strip()
    try:
        if ".." in text:
            start, stop = (int(part) for part in text.split("..", 1))
            step = -1 if stop <= start else 1
            return list(range(start, stop + step, step))
        return [int(part) for part in text.split(",") if part.strip()]
    except ValueError:
        raise ConfigError(f"cannot parse levels '{text}'; expected A..B or a comma list") from None


def parse_list(text, allowed, what):
    """Comma list validated against the allowed values."""
    items = [item.strip() for item in str(text).split(",") if item.strip()]
    unknown = [item for item in items if item not in allowed]
    if unknown:
        raise ConfigError(f"unknown {what}: {', '.join(unknown)}; available: {', '.join(allowed)}")
    if not items:
        raise ConfigError(f"no {what} given")
    return items


@dataclass
class ExperimentConfig:
    """
    Settings of one convergence run; eps = base_epsilon * growth ** level and
    consecutive vertices lie vertex_spacing * eps apart in the parameter.
    """
    curves: List[str] = field(default_factory=lambda: list(CurveRegistryConfig.CURVE_NAMES))
    levels: List[int] = field(default_factory=lambda: list(ExperimentDefaults.LEVELS))
    quantities: List[str] = field(default_factory=lambda: list(ExperimentDefaults.QUANTITIES))
    base_epsilon: float = ExperimentDefaults.BASE_EPSILON
    growth: float = ExperimentDefaults.GROWTH
    vertex_spacing: float = ExperimentDefaults.VERTEX_SPACING
    output_dir: str = ExperimentDefaults.OUTPUT_DIR
    formats: List[str] = field(default_factory=lambda: list(ExperimentDefaults.FORMATS))
    exclusions: Dict = field(default_factory=lambda: dict(ExperimentDefaults.EXCLUSIONS))

    def __post_init__(self):
        self.validate()

    def validate(self):
        unknown = [c for c in self.curves if c not in CurveRegistryConfig.CURVE_NAMES]
        if unknown or not self.curves:
            raise ConfigError(f"unknown curves: {', '.join(unknown) or '(none given)'}")
        unknown = [q for q in self.quantities if q not in ALL_QUANTITIES]
        if unknown or not self.quantities:
            raise ConfigError(f"unknown quantities: {', '.join(unknown) or '(none given)'}")
        unknown = [f for f in self.formats if f not in ExperimentDefaults.FORMATS]
        if unknown:
            raise ConfigError(f"unknown formats: {', '.join(unknown)}")
        if not self.levels:
            raise ConfigError("no levels given")
        if self.base_epsilon <= 0 or self.growth <= 1.0:
            raise ConfigError("base epsilon must be positive and growth greater than 1")
        if self.vertex_spacing <= 0:
            raise ConfigError(f"vertex spacing must be positive, got {self.vertex_spacing}")
        eps = self.epsilons
        if any(later >= earlier for earlier, later in zip(eps, eps[1:])):
            raise ConfigError("levels must make epsilon strictly decreasing")

    def epsilon(self, level):
        return self.base_epsilon * self.growth ** level

    @property
    def epsilons(self):
        return [self.epsilon(level) for level in self.levels]

    @property
    def low_confidence(self):
        return len(self.levels) < ExperimentDefaults.MIN_CONFIDENT_LEVELS


def applicable_quantities(curve, quantities, exclusions=None):
    """
    Quantities measurable on a curve, and notes on those left out.

    Planar curves have no torsion or binormal; p_da is compared with the
    planar tilde point only.
    """
    exclusions = exclusions or {}
    kept, notes = [], {}
    for q in quantities:
        if curve.planar and q in ExperimentDefaults.SPATIAL_QUANTITIES:
            notes[q] = "not measured: planar curve"
        elif not curve.planar and q in ExperimentDefaults.PLANAR_QUANTITIES:
            notes[q] = "not measured: defined for planar curves only"
        elif (curve.name, q) in exclusions:
            notes[q] = f"excluded: {exclusions[(curve.name, q)]}"
        else:
            kept.append(q)
    return kept, notes


# =============================================================================
# MEASUREMENT
# =============================================================================
def _aligned_vector_error(discrete, smooth):
    """Per-component max deviation after multiplying the discrete vector by +-1."""
    return min(float(np.max(np.abs(discrete - smooth))), float(np.max(np.abs(-discrete - smooth))))


def _edge_error(quantity, curve, edge, u):
    """Deviation of one quantity at one edge, or None if it cannot be measured there."""
    if quantity == "kappa":
        return abs(edge.kappa - abs(smooth_curvature(curve, u)))
    if quantity == "tau":
        if edge.tau is None:
            return None
        return abs(edge.tau - smooth_torsion(curve, u))
    if quantity in ExperimentDefaults.VECTOR_QUANTITIES:
        if edge.frame is None:
            return None
        return _aligned_vector_error(getattr(edge.frame, quantity), getattr(smooth_frame(curve, u), quantity))
    if quantity == "center":
        if edge.circle.kind != "circle":
            return None
        return float(np.linalg.norm(edge.circle.center - smooth_curvature_center(curve, u)))
    if quantity == "p_bc":
        if is_infinite(edge.quad.p_bc):
            return None
        return float(np.linalg.norm(as_space_point(edge.quad.p_bc) - curve(u)))
    if quantity == "p_da":
        if is_infinite(edge.quad.p_da):
            return None
        return abs(complex(edge.quad.p_da) - tilde_point(curve, u))
    raise ConfigError(f"unknown quantity '{quantity}'")


def measure_errors(curve, eps, quantities=None, tracker=None, level=None,
                   spacing=ExperimentDefaults.VERTEX_SPACING):
    """
    l-infinity errors of the discrete quantities over the interior edges of
    the full sampling of a curve at step eps.

    Edge (i, i+1) is compared with the smooth curve at the midpoint of its
    vertex parameters. Zigzag edges are skipped and counted.

    Args:
        curve: Registry name or ParametricCurve.
        eps: Sampling step.
        quantities: Subset of kappa, tau, T, N, B, center, p_bc, p_da; by default
            the default quantities applicable to the curve.
        tracker: Optional IssueTracker recording skipped edges.
        level: Optional level, used in record ids.
        spacing: Vertex distance in the parameter, in units of eps.

    Returns:
        Dict quantity -> l-infinity error, for quantities measured on at least one edge.

    Raises:
        ConfigError: unknown curve, or too few interior edges at this eps.
    """
    return _measure(curve, eps, quantities, tracker, level, spacing)[0]


def _measure(curve, eps, quantities, tracker, level, spacing):
    """Returns (errors, skipped edge count)."""
    if not isinstance(curve, ParametricCurve):
        curve = get_curve(curve)
    if quantities is None:
        quantities, _ = applicable_quantities(curve, ExperimentDefaults.QUANTITIES)
    else:
        quantities, _ = applicable_quantities(curve, quantities)

    discrete = sample_full(curve, eps, spacing=spacing)
    edges = discrete.interior_edges()
    if len(edges) < ExperimentDefaults.MIN_INTERIOR_EDGES:
        raise ConfigError(f"eps={eps:g} leaves {len(edges)} interior edges on {curve.name}; "
                          f"at least {ExperimentDefaults.MIN_INTERIOR_EDGES} are needed")

    errors = dict.fromkeys(quantities, 0.0)
    measured = dict.fromkeys(quantities, 0)
    skipped = 0
    where = f"level{level}" if level is not None else f"eps{eps:.6g}"
    for i in edges:
        edge_id = f"{curve.name}:{where}:edge{i}"
        try:
            edge = analyze_edge(discrete, i, with_sphere=False)
        except ZigzagSingularityError as e:
            skipped += 1
            if tracker is not None:
                tracker.add_issue(edge_id, "warning", IssueCategory.ZIGZAG_SINGULARITY, "edge", str(e))
            continue
        except GeometryError as e:
            skipped += 1
            if tracker is not None:
                tracker.add_issue(edge_id, "warning", IssueCategory.DEGENERATE_INPUT, "edge", str(e))
            continue

        if tracker is not None:
            for note in edge.notes:
                if note.startswith(CIRCLE_FIT_NOTE):
                    tracker.add_issue(edge_id, "warning", IssueCategory.CIRCLE_FIT_RESIDUAL, "edge", note)
        u = discrete.edge_parameter(i)
        for q in quantities:
            try:
                value = _edge_error(q, curve, edge, u)
            except UndefinedQuantityError as e:
                logger.debug("%s: %s not defined: %s", edge_id, q, e)
                continue
            if value is None:
                continue
            measured[q] += 1
            if value > errors[q]:
                errors[q] = value

    if skipped:
        logger.warning("%s at eps=%.6g: skipped %d of %d edges", curve.name, eps, skipped, len(edges))
    return {q: errors[q] for q in quantities if measured[q]}, skipped


# =============================================================================
# RATE FITTING
# =============================================================================
@dataclass
class RateFit:
    """Least-squares line log(error) = slope * log(eps) + intercept."""
    slope: Optional[float]
    intercept: Optional[float] = None
    residual: Optional[float] = None
    points_used: int = 0
    exact: bool = False
    note: str = ""


def fit_rate(points, noise_floor=0.0):
    """
    Unweighted least-squares slope of log(error) against log(eps).

    Zero errors, and errors at or below noise_floor, are excluded with a note;
    if every error is excluded the outcome is "exact at machine precision"
    with no slope.
    """
    points = [(float(eps), float(err)) for eps, err in points]
    if len(points) < 2:
        raise ConfigError("fit_rate needs at least two (eps, error) points")
    usable = [(eps, err) for eps, err in points if err > noise_floor]
    zeros = sum(1 for _, err in points if err == 0.0)
    notes = []
    if zeros:
        notes.append(f"{zeros} zero-error point(s) excluded")
    if len(points) - len(usable) > zeros:
        notes.append(f"{len(points) - len(usable) - zeros} point(s) at or below the noise floor "
                     f"{noise_floor:.3g} excluded")
    if not usable:
        return RateFit(slope=None, exact=True, note="exact at machine precision")
    if len(usable) < 2:
        notes.append("fewer than two nonzero errors; no slope")
        return RateFit(slope=None, points_used=len(usable), note="; ".join(notes))

    x = np.log([eps for eps, _ in usable])
    y = np.log([err for _, err in usable])
    coefficients = np.polyfit(x, y, 1)
    residual = float(np.sqrt(np.mean((y - np.polyval(coefficients, x)) ** 2)))
    return RateFit(
        slope=float(coefficients[0]),
        intercept=float(coefficients[1]),
        residual=residual,
        points_used=len(usable),
        note="; ".join(notes),
    )


# =============================================================================
# REPORT
# =============================================================================
@dataclass
class QuantitySeries:
    curve: str
    quantity: str
    levels: List[int]
    epsilons: List[float]
    errors: List[float]
    fit: RateFit
    reference_rate: Optional[float] = None
    low_confidence: bool = False

    @property
    def deviation(self):
        if self.fit.slope is None or self.reference_rate is None:
            return None
        return self.fit.slope - self.reference_rate

    def to_dict(self):
        return {
            "levels": list(self.levels),
            "epsilons": list(self.epsilons),
            "linf_errors": list(self.errors),
            "slope": self.fit.slope,
            "intercept": self.fit.intercept,
            "fit_residual": self.fit.residual,
            "points_used": self.fit.points_used,
            "exact": self.fit.exact,
            "fit_note": self.fit.note,
            "reference_rate": self.reference_rate,
            "deviation": self.deviation,
            "low_confidence": self.low_confidence,
        }


@dataclass
class CurveResult:
    name: str
    series: Dict[str, QuantitySeries] = field(default_factory=dict)
    notes: Dict[str, str] = field(default_factory=dict)
    skipped_edges: int = 0
    failure: Optional[str] = None
    # failure caused by a numerical singularity rather than the configuration
    singular: bool = False

    def to_dict(self):
        return {
            "quantities": {q: s.to_dict() for q, s in self.series.items()},
            "notes": dict(self.notes),
            "skipped_edges": self.skipped_edges,
            "failure": self.failure,
        }


@dataclass
class ConvergenceReport:
    """Per-curve, per-quantity error series with fitted rates, in registry order."""
    config: ExperimentConfig
    curves: Dict[str, CurveResult] = field(default_factory=dict)
    artifacts: List[str] = field(default_factory=list)

    @property
    def failed_curves(self):
        return [name for name, result in self.curves.items() if result.failure]

    @property
    def singular_curves(self):
        return [name for name, result in self.curves.items() if result.singular]

    def slopes(self):
        return {name: {q: s.fit.slope for q, s in result.series.items()}
                for name, result in self.curves.items()}

    def to_frame(self):
        """Long table with columns curve, quantity, level, epsilon, linf_error."""
        rows = []
        for name, result in self.curves.items():
            for q, s in result.series.items():
                for level, eps, err in zip(s.levels, s.epsilons, s.errors):
                    rows.append((name, q, level, eps, err))
        return pd.DataFrame(rows, columns=ExperimentDefaults.CSV_COLUMNS)

    def to_dict(self):
        return {
            "config": {
                "curves": list(self.config.curves),
                "levels": list(self.config.levels),
                "quantities": list(self.config.quantities),
                "base_epsilon": self.config.base_epsilon,
                "growth": self.config.growth,
                "vertex_spacing": self.config.vertex_spacing,
            },
            "low_confidence": self.config.low_confidence,
            "curves": {name: result.to_dict() for name, result in self.curves.items()},
        }


def curve_scale(curve, samples=256):
    """Largest distance of the curve from the origin over its domain (at least 1)."""
    t0, t1 = curve.domain
    return max(1.0, max(float(np.linalg.norm(curve(t))) for t in np.linspace(t0, t1, samples)))


def _run_curve(name, config, tracker):
    curve = get_curve(name)
    noise_floor = ExperimentDefaults.NOISE_FLOOR * curve_scale(curve)
    quantities, notes = applicable_quantities(curve, config.quantities, config.exclusions)
    result = CurveResult(name=name, notes=notes)
    for q, note in notes.items():
        if note.startswith("excluded") and tracker is not None:
            tracker.add_issue(name, "info", IssueCategory.EXCLUDED_QUANTITY, q, note)

    errors = {q: [] for q in quantities}
    levels = {q: [] for q in quantities}
    epsilons = {q: [] for q in quantities}
    for level, eps in zip(config.levels, config.epsilons):
        measured, skipped = _measure(curve, eps, quantities, tracker, level, config.vertex_spacing)
        result.skipped_edges += skipped
        logger.debug("%s level %d eps %.6g: %s", name, level, eps, measured)
        for q, err in measured.items():
            errors[q].append(err)
            levels[q].append(level)
            epsilons[q].append(eps)

    reference = ExperimentDefaults.REFERENCE_RATES.get(name, {})
    for q in quantities:
        if len(errors[q]) < 2:
            result.notes[q] = "not measured: fewer than two levels produced a value"
            continue
        fit = fit_rate(list(zip(epsilons[q], errors[q])), noise_floor)
        series = QuantitySeries(
            curve=name,
            quantity=q,
            levels=levels[q],
            epsilons=epsilons[q],
            errors=errors[q],
            fit=fit,
            reference_rate=reference.get(q),
            low_confidence=len(errors[q]) < ExperimentDefaults.MIN_CONFIDENT_LEVELS,
        )
        if fit.note and tracker is not None:
            tracker.add_issue(f"{name}", "info", IssueCategory.FIT_NOTE, q, fit.note)
        result.series[q] = series
    return result


def run(config, tracker=None):
    """
    Run the experiment for every configured curve, serially and in registry
    order. A failing curve is recorded and the others still run.

    Returns:
        ConvergenceReport; artifacts are written separately (report_writer).
    """
    report = ConvergenceReport(config=config)
    order = [name for name in CurveRegistryConfig.CURVE_NAMES if name in config.curves]
    for name in order:
        logger.info(f"Measuring {name} over {len(config.levels)} levels")
        try:
            result = _run_curve(name, config, tracker)
            if tracker is not None:
                tracker.record_processed(True)
        except (GeometryError, ConfigError) as e:
            logger.error(f"{name}: {e}")
            result = CurveResult(name=name, failure=str(e), singular=isinstance(e, GeometryError))
            if tracker is not None:
                tracker.add_issue(name, "error", IssueCategory.PROCESSING_ERROR, "curve", str(e))
                tracker.record_processed(False)
        report.curves[name] = result
    return report
