"""
Configuration settings for the discrete curvature toolkit.

This module is structured with classes to group configurations by their domain:
- ToleranceConfig: Numeric gates shared by the geometry modules.
- CurveRegistryConfig: Parameters of the registry test curves.
- ExperimentDefaults: Defaults of the convergence experiment.
- IssueCategory: Enumeration of tracked issue types.
- ExitCode: Process exit codes of the command-line interface.
"""

import math

# =============================================================================
# NUMERIC TOLERANCES
# =============================================================================
class ToleranceConfig:
    """Numeric gates. All arithmetic is IEEE double precision."""
    # |im q| <= NEGATIVE_REAL * |q| with re q < 0 counts as a negative real
    NEGATIVE_REAL = 1e-12
    # |im cr| <= CONCYCLIC * |cr| counts as a real cross-ratio
    CONCYCLIC = 1e-9
    # denominator below INFINITY * (scale of inputs) yields the point at infinity
    INFINITY = 1e-13
    # residual of the fourth edge point against the fitted circle, relative to radius
    CIRCLE_FIT_RESIDUAL = 1e-8
    # |cross(a - c, b - c)| <= COLLINEAR * |a - c| * |b - c| counts as collinear
    COLLINEAR = 1e-12
    # |triple product| <= COPLANAR * product of edge lengths counts as coplanar
    COPLANAR = 1e-12
    # two vertices closer than DISTINCT * scale count as coincident
    DISTINCT = 1e-14
    # internal cross-check of the two smooth torsion formulas
    TORSION_CROSS_CHECK = 1e-10
    # default tolerance of the discrete arclength criterion
    ARCLENGTH = 1e-8

# =============================================================================
# REGISTRY CURVES
# =============================================================================
class CurveRegistryConfig:
    """Parameters of the seven registry curves."""
    DOMAIN = (0.0, 2.0 * math.pi)

    EPITROCHOID = {"r1": 6.0, "r2": 3.0, "frequency": 6.0}
    LOGSPIRAL = {"a": 0.5}
    HELIX = {"a": 4.0, "b": 0.5}
    HELICALSPIRAL = {"a": 0.4, "b": 4.0, "frequency": 4.0}
    COIL = {"a": 2.5, "b": 20.0}
    TREFOIL = {}
    VIVIANI = {"a": 5.0}

    # Registry order is the reporting order
    CURVE_NAMES = [
        "epitrochoid",
        "logspiral",
        "helix",
        "helicalspiral",
        "coil",
        "trefoil",
        "viviani",
    ]

# =============================================================================
# CONVERGENCE EXPERIMENT
# =============================================================================
class ExperimentDefaults:
    """Defaults of the convergence experiment: eps = BASE_EPSILON * GROWTH ** level."""
    BASE_EPSILON = 0.1
    GROWTH = 1.1
    LEVELS = list(range(0, -16, -1))
    QUANTITIES = ["kappa", "tau", "T", "N", "B"]
    # Quantities that may be requested in addition to the defaults
    OPTIONAL_QUANTITIES = ["center", "p_bc", "p_da"]
    VECTOR_QUANTITIES = {"T", "N", "B"}
    # Quantities that only make sense for space curves
    SPATIAL_QUANTITIES = {"tau", "B"}
    # Quantities that only make sense for planar curves
    PLANAR_QUANTITIES = {"p_da"}
    FORMATS = ["csv", "json", "svg"]
    OUTPUT_DIR = "results"
    MIN_CONFIDENT_LEVELS = 8
    MIN_INTERIOR_EDGES = 10
    # Parameter distance between consecutive vertices of the full sampling, in units of eps.
    # The coil (b = 20) aliases on the four-point stencil spacing of 2 eps over this schedule.
    VERTEX_SPACING = 0.5
    # Errors at or below NOISE_FLOOR * curve scale count as exact (round-off only)
    NOISE_FLOOR = 1e-10

    # (curve, quantity) pairs left out of the default run, with the reason
    EXCLUSIONS = {
        ("helix", "N"): "normal error starts at the numerical noise floor; no meaningful rate",
    }

    # Published reference rates for the default schedule (None: not measured)
    REFERENCE_RATES = {
        "epitrochoid":   {"kappa": 1.9589, "tau": None,   "T": 1.9858, "N": 1.9858, "B": None},
        "logspiral":     {"kappa": 1.9745, "tau": None,   "T": 2.0005, "N": 2.0005, "B": None},
        "helix":         {"kappa": 2.0010, "tau": 2.0212, "T": 2.0122, "N": None,   "B": 2.0122},
        "helicalspiral": {"kappa": 1.9947, "tau": 1.9934, "T": 2.0003, "N": 1.9742, "B": 2.0002},
        "coil":          {"kappa": 1.9096, "tau": 2.5707, "T": 2.3352, "N": 2.0647, "B": 2.3414},
        "trefoil":       {"kappa": 1.9772, "tau": 1.9936, "T": 1.9888, "N": 1.9864, "B": 1.9980},
        "viviani":       {"kappa": 1.9986, "tau": 2.0102, "T": 2.0000, "N": 1.9996, "B": 2.0002},
    }

    # CSV layout of the convergence table
    CSV_COLUMNS = ["curve", "quantity", "level", "epsilon", "linf_error"]
    CSV_FLOAT_FORMAT = "%.17g"

# =============================================================================
# ISSUES
# =============================================================================
class IssueCategory:
    """Enumeration of categories for tracked issues."""
    ZIGZAG_SINGULARITY = "zigzag_singularity"
    POINT_AT_INFINITY = "point_at_infinity"
    INSUFFICIENT_NEIGHBORHOOD = "insufficient_neighborhood"
    UNDEFINED_QUANTITY = "undefined_quantity"
    DEGENERATE_INPUT = "degenerate_input"
    CIRCLE_FIT_RESIDUAL = "circle_fit_residual"
    EXCLUDED_QUANTITY = "excluded_quantity"
    FIT_NOTE = "fit_note"
    PROCESSING_ERROR = "processing_error"
    FILE_ACCESS = "file_access"
    FILE_WRITE = "file_write"

# =============================================================================
# EXIT CODES
# =============================================================================
class ExitCode:
    SUCCESS = 0
    UNEXPECTED = 1
    CONFIG_ERROR = 2
    SINGULARITY = 3
