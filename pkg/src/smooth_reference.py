"""
Analytic ground truth for the convergence experiment.

Every curve carries hand-derived closed forms of s, s', s'' and s''' as
3-vectors (planar curves have z = 0). Torsion uses the sign convention
tau = -<s' x s'', s'''> / |s' x s''|^2, for which the helix
(cos at, sin at, bt) has tau = -ab / (a^2 + b^2).
"""

import logging
import math
from dataclasses import dataclass, field
from typing import Callable, Dict, Tuple

import numpy as np

from .config import CurveRegistryConfig, ToleranceConfig
from .curve_analysis import DiscreteCurve, FrenetFrame, Sphere
from .errors import (
    ConfigError,
    DegenerateConfigurationError,
    DegenerateSphereError,
    UndefinedQuantityError,
)

logger = logging.getLogger(__name__)


@dataclass(frozen=True, eq=False)
class ParametricCurve:
    """A smooth curve with closed-form derivatives up to third order."""
    name: str
    # derivatives(t) -> (s, s', s'', s''') as 3-vectors
    derivatives: Callable[[float], Tuple[np.ndarray, np.ndarray, np.ndarray, np.ndarray]]
    planar: bool
    domain: Tuple[float, float] = CurveRegistryConfig.DOMAIN
    parameters: Dict[str, float] = field(default_factory=dict)

    def __call__(self, t):
        return self.derivatives(t)[0]

    @property
    def dim(self):
        return 2 if self.planar else 3


# =============================================================================
# CURVE BUILDERS
# =============================================================================
def _stack_complex(z, height=(0.0, 0.0, 0.0, 0.0)):
    return tuple(np.array([w.real, w.imag, h]) for w, h in zip(z, height))


def complex_curve(name, derivatives, parameters=None, domain=CurveRegistryConfig.DOMAIN):
    """
    Planar curve from a function t -> (z, z', z'', z''') of complex values.
    """
    return ParametricCurve(
        name=name,
        derivatives=lambda t: _stack_complex(derivatives(t)),
        planar=True,
        domain=domain,
        parameters=dict(parameters or {}),
    )


def epitrochoid(r1, r2, frequency):
    """r1 e^{it} - r2 e^{i f t}."""
    def derivatives(t):
        inner = np.exp(1j * t)
        outer = np.exp(1j * frequency * t)
        return tuple(r1 * (1j) ** n * inner - r2 * (1j * frequency) ** n * outer for n in range(4))
    return complex_curve("epitrochoid", derivatives, {"r1": r1, "r2": r2, "frequency": frequency})


def logspiral(a):
    """e^{(a + i) t}."""
    w = complex(a, 1.0)

    def derivatives(t):
        z = np.exp(w * t)
        return tuple(w ** n * z for n in range(4))
    return complex_curve("logspiral", derivatives, {"a": a})


def circle(radius, center=0j):
    """Circle of the given radius, parametrized by angle."""
    def derivatives(t):
        z = radius * np.exp(1j * t)
        return (center + z, 1j * z, -z, -1j * z)
    return complex_curve("circle", derivatives, {"radius": radius})


def straight_line(direction=(1.0, 0.0), point=(0.0, 0.0)):
    """Planar straight line point + t * direction."""
    p = complex(*point)
    v = complex(*direction)
    return complex_curve("line", lambda t: (p + t * v, v, 0j, 0j))


def _lifted(name, xy, z, parameters):
    """Space curve from a complex xy-part and a real height, both given with derivatives."""
    def derivatives(t):
        return _stack_complex(xy(t), z(t))
    return ParametricCurve(name=name, derivatives=derivatives, planar=False, parameters=parameters)


def helix(a, b):
    """(cos at, sin at, bt)."""
    def xy(t):
        z = np.exp(1j * a * t)
        return tuple((1j * a) ** n * z for n in range(4))
    return _lifted("helix", xy, lambda t: (b * t, b, 0.0, 0.0), {"a": a, "b": b})


def helicalspiral(a, b, frequency):
    """(e^{at} cos ft, e^{at} sin ft, bt)."""
    w = complex(a, frequency)

    def xy(t):
        z = np.exp(w * t)
        return tuple(w ** n * z for n in range(4))
    return _lifted("helicalspiral", xy, lambda t: (b * t, b, 0.0, 0.0),
                   {"a": a, "b": b, "frequency": frequency})


def coil(a, b):
    """((a + sin bt) cos t, (a + sin bt) sin t, cos bt)."""
    def xy(t):
        r = a + math.sin(b * t)
        r1 = b * math.cos(b * t)
        r2 = -b * b * math.sin(b * t)
        r3 = -b ** 3 * math.cos(b * t)
        e = np.exp(1j * t)
        return (
            r * e,
            (r1 + 1j * r) * e,
            (r2 + 2j * r1 - r) * e,
            (r3 + 3j * r2 - 3 * r1 - 1j * r) * e,
        )

    def height(t):
        return (math.cos(b * t), -b * math.sin(b * t), -b * b * math.cos(b * t), b ** 3 * math.sin(b * t))
    return _lifted("coil", xy, height, {"a": a, "b": b})


def trefoil():
    """(sin t + 2 sin 2t, cos t - 2 cos 2t, -sin 3t)."""
    def derivatives(t):
        s1, c1 = math.sin(t), math.cos(t)
        s2, c2 = math.sin(2 * t), math.cos(2 * t)
        s3, c3 = math.sin(3 * t), math.cos(3 * t)
        return (
            np.array([s1 + 2 * s2, c1 - 2 * c2, -s3]),
            np.array([c1 + 4 * c2, -s1 + 4 * s2, -3 * c3]),
            np.array([-s1 - 8 * s2, -c1 + 8 * c2, 9 * s3]),
            np.array([-c1 - 16 * c2, s1 - 16 * s2, 27 * c3]),
        )
    return ParametricCurve(name="trefoil", derivatives=derivatives, planar=False)


def viviani(a):
    """(a (1 + cos 2t), a sin 2t, 2a sin t); lies on the sphere |x| = 2a."""
    def derivatives(t):
        s1, c1 = math.sin(t), math.cos(t)
        s2, c2 = math.sin(2 * t), math.cos(2 * t)
        return (
            np.array([a * (1 + c2), a * s2, 2 * a * s1]),
            np.array([-2 * a * s2, 2 * a * c2, 2 * a * c1]),
            np.array([-4 * a * c2, -4 * a * s2, -2 * a * s1]),
            np.array([8 * a * s2, -8 * a * c2, -2 * a * c1]),
        )
    return ParametricCurve(name="viviani", derivatives=derivatives, planar=False, parameters={"a": a})


# =============================================================================
# REGISTRY
# =============================================================================
REGISTRY = {
    "epitrochoid": lambda: epitrochoid(**CurveRegistryConfig.EPITROCHOID),
    "logspiral": lambda: logspiral(**CurveRegistryConfig.LOGSPIRAL),
    "helix": lambda: helix(**CurveRegistryConfig.HELIX),
    "helicalspiral": lambda: helicalspiral(**CurveRegistryConfig.HELICALSPIRAL),
    "coil": lambda: coil(**CurveRegistryConfig.COIL),
    "trefoil": lambda: trefoil(**CurveRegistryConfig.TREFOIL),
    "viviani": lambda: viviani(**CurveRegistryConfig.VIVIANI),
}


def get_curve(name):
    """Registry curve by name."""
    try:
        return REGISTRY[name]()
    except KeyError:
        raise ConfigError(
            f"unknown curve '{name}'; available: {', '.join(CurveRegistryConfig.CURVE_NAMES)}"
        ) from None


# =============================================================================
# SMOOTH INVARIANTS
# =============================================================================
def _speed(curve, t):
    s, d1, d2, d3 = curve.derivatives(t)
    speed = float(np.linalg.norm(d1))
    if speed == 0.0:
        raise UndefinedQuantityError(f"singular parametrization of {curve.name} at t={t}")
    return s, d1, d2, d3, speed


def smooth_curvature(curve, t):
    """
    kappa = |s' x s''| / |s'|^3; signed det(s', s'') / |s'|^3 for planar curves.
    """
    _, d1, d2, _, speed = _speed(curve, t)
    if curve.planar:
        return float(d1[0] * d2[1] - d1[1] * d2[0]) / speed ** 3
    return float(np.linalg.norm(np.cross(d1, d2))) / speed ** 3


def _binormal_direction(curve, t):
    s, d1, d2, d3, speed = _speed(curve, t)
    w = np.cross(d1, d2)
    w_norm = float(np.linalg.norm(w))
    if w_norm <= ToleranceConfig.COLLINEAR * speed * float(np.linalg.norm(d2)) or w_norm == 0.0:
        raise UndefinedQuantityError(f"curvature of {curve.name} vanishes at t={t}")
    return s, d1, d2, d3, speed, w, w_norm


def _torsion_pair(curve, t):
    _, d1, d2, d3, speed, w, w_norm = _binormal_direction(curve, t)
    tau = -float(np.dot(w, d3)) / w_norm ** 2
    kappa = w_norm / speed ** 3
    normal = np.cross(w / w_norm, d1 / speed)
    return tau, float(np.dot(np.cross(d1, d3), normal)) / (kappa * speed ** 4), kappa


def smooth_torsion_pair(curve, t):
    """
    The torsion by two independent formulas: -<s' x s'', s'''> / |s' x s''|^2
    and <s' x s''', N> / (kappa |s'|^4). Planar curves give (0, 0).
    """
    if curve.planar:
        return 0.0, 0.0
    return _torsion_pair(curve, t)[:2]


def smooth_torsion(curve, t):
    """
    tau = -<s' x s'', s'''> / |s' x s''|^2, cross-checked against the second
    formula of smooth_torsion_pair. Planar curves give 0.
    """
    if curve.planar:
        return 0.0
    tau, check, kappa = _torsion_pair(curve, t)
    scale = max(abs(tau), abs(check), kappa)
    if abs(tau - check) > ToleranceConfig.TORSION_CROSS_CHECK * scale:
        logger.warning("torsion formulas disagree on %s at t=%g: %.17g vs %.17g",
                       curve.name, t, tau, check)
    return tau


def smooth_frame(curve, t):
    """
    T = s'/|s'|, B = s' x s''/|s' x s''|, N = B x T.

    Planar curves use the rotated tangent N = i T and B = (0, 0, 1).
    """
    if curve.planar:
        _, d1, _, _, speed = _speed(curve, t)
        T = d1 / speed
        N = np.array([-T[1], T[0], 0.0])
        return FrenetFrame(T, N, np.cross(T, N))
    _, d1, _, _, speed, w, w_norm = _binormal_direction(curve, t)
    T = d1 / speed
    B = w / w_norm
    return FrenetFrame(T, np.cross(B, T), B)


def smooth_curvature_center(curve, t):
    """Center s + N / kappa of the osculating circle."""
    kappa = smooth_curvature(curve, t)
    if kappa == 0.0:
        raise UndefinedQuantityError(f"curvature of {curve.name} vanishes at t={t}")
    return curve(t) + smooth_frame(curve, t).N / kappa


def smooth_kappa_prime(curve, t):
    """Arclength derivative of the curvature, d kappa / ds = (d kappa / dt) / |s'|."""
    _, d1, d2, d3, speed = _speed(curve, t)
    if curve.planar:
        det2 = float(d1[0] * d2[1] - d1[1] * d2[0])
        det3 = float(d1[0] * d3[1] - d1[1] * d3[0])
        dk_dt = det3 / speed ** 3 - 3.0 * det2 * float(np.dot(d1, d2)) / speed ** 5
        return dk_dt / speed
    _, d1, d2, d3, speed, w, w_norm = _binormal_direction(curve, t)
    w_dot = np.cross(d1, d3)
    dk_dt = (float(np.dot(w, w_dot)) / (w_norm * speed ** 3)
             - 3.0 * w_norm * float(np.dot(d1, d2)) / speed ** 5)
    return dk_dt / speed


def smooth_osculating_sphere(curve, t):
    """
    Osculating sphere with center s + N/kappa + kappa'/(kappa^2 tau) B.

    Raises:
        DegenerateSphereError: planar curve or vanishing torsion (plane variant).
    """
    s = curve(t)
    frame = smooth_frame(curve, t)
    if curve.planar:
        raise DegenerateSphereError(s, frame.B)
    kappa = smooth_curvature(curve, t)
    tau = smooth_torsion(curve, t)
    if tau == 0.0:
        raise DegenerateSphereError(s, frame.B)
    center = s + frame.N / kappa + smooth_kappa_prime(curve, t) / (kappa * kappa * tau) * frame.B
    return Sphere(center, float(np.linalg.norm(center - s)))


def tilde_point(curve, t):
    """
    s~ = s - 2 s'^2 / s'' for a planar curve (complex arithmetic).

    The point lies on the osculating circle; it is the antipode of s iff the
    parametrization is by arclength.
    """
    if not curve.planar:
        raise UndefinedQuantityError("tilde point is defined for planar curves only")
    s, d1, d2, _ = curve.derivatives(t)
    z, z1, z2 = complex(s[0], s[1]), complex(d1[0], d1[1]), complex(d2[0], d2[1])
    if z2 == 0:
        raise UndefinedQuantityError(f"s'' vanishes on {curve.name} at t={t}")
    return z - 2.0 * z1 * z1 / z2


# =============================================================================
# SAMPLING
# =============================================================================
def _discrete(curve, params, closed=False, period=None):
    points = np.array([curve(t) for t in params])
    if curve.planar:
        points = points[:, :2]
    discrete = DiscreteCurve(points, closed=closed, name=curve.name, parameters=params, period=period)
    violations = discrete.distinctness_violations()
    if violations:
        raise DegenerateConfigurationError(
            f"sampling of {curve.name} has coincident vertices, e.g. {violations[0]}")
    return discrete


def sample(curve, u, eps, k_range=range(-1, 3)):
    """Vertex k is s(u + (2k - 1) eps); the default range gives the four-point stencil."""
    params = np.array([u + (2 * k - 1) * eps for k in k_range], dtype=float)
    return _discrete(curve, params)


def sample_full(curve, eps, closed=False, spacing=2.0):
    """
    g_k = s(t0 + k h) with h = spacing * eps, for k = 0 .. floor((t1 - t0) / h).

    The default spacing matches the four-point stencil of sample(), so edge
    (k, k+1) has midpoint parameter t0 + (2k + 1) eps. A closed sampling stops
    short of t1, which would repeat the first vertex, and records t1 - t0 as
    its period.
    """
    if eps <= 0 or spacing <= 0:
        raise ConfigError(f"sampling step must be positive, got eps={eps}, spacing={spacing}")
    t0, t1 = curve.domain
    step = spacing * eps
    steps = (t1 - t0) / step
    if closed:
        count = int(math.ceil(steps - 1e-9))
    else:
        count = int(math.floor(steps + 1e-9)) + 1
    params = t0 + step * np.arange(count)
    return _discrete(curve, params, closed=closed, period=(t1 - t0) if closed else None)
