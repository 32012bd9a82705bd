"""
Per-edge discrete invariants of polygonal curves.

Edge i joins vertices i and i+1 and is analysed from the stencil
(g[i-1], g[i], g[i+1], g[i+2]). Planar curves are processed with complex
arithmetic, space curves with quaternions. Circles, frames and spheres are
always reported with 3-vectors (z = 0 for planar curves).
"""

import logging
from dataclasses import dataclass, field
from itertools import combinations
from typing import List, Optional

import numpy as np

from .config import ToleranceConfig
from .cross_ratio import cross_ratio_quat, is_infinite
from .errors import (
    DegenerateCircumcircleError,
    DegenerateConfigurationError,
    DegenerateSphereError,
    FlatFrameError,
    InsufficientNeighborhoodError,
    UndefinedQuantityError,
)
from .insertion import EdgePointQuad, edge_point_quad
from .quat_core import as_space_point

logger = logging.getLogger(__name__)

# Note prefix on edges whose four edge points are not concyclic within tolerance
CIRCLE_FIT_NOTE = "circle fit residual"


def _unit(v):
    n = np.linalg.norm(v)
    if n == 0.0:
        raise DegenerateConfigurationError("zero vector has no direction")
    return v / n


# =============================================================================
# DOMAIN TYPES
# =============================================================================
@dataclass(frozen=True, eq=False)
class DiscreteCurve:
    """Ordered vertices of shape (n, 2) or (n, 3), open or closed."""
    vertices: np.ndarray
    closed: bool = False
    name: str = "curve"
    # Curve parameter of each vertex, when sampled from a parametric curve
    parameters: Optional[np.ndarray] = None
    # Parameter length of one loop of a closed sampling
    period: Optional[float] = None

    def __post_init__(self):
        vertices = np.asarray(self.vertices, dtype=float)
        if vertices.ndim != 2 or vertices.shape[1] not in (2, 3):
            raise DegenerateConfigurationError(
                f"vertices must have shape (n, 2) or (n, 3), got {vertices.shape}")
        if vertices.shape[0] < 4:
            raise DegenerateConfigurationError("a discrete curve needs at least 4 vertices")
        object.__setattr__(self, "vertices", vertices)
        if self.parameters is not None:
            object.__setattr__(self, "parameters", np.asarray(self.parameters, dtype=float))

    def __len__(self):
        return self.vertices.shape[0]

    @property
    def dim(self):
        return self.vertices.shape[1]

    @property
    def is_planar(self):
        return self.dim == 2

    def point(self, k):
        """Vertex k as a complex number (planar) or a 3-vector; wraps for closed curves."""
        n = len(self)
        if self.closed:
            k %= n
        elif not 0 <= k < n:
            raise InsufficientNeighborhoodError(f"vertex {k} outside open curve of {n} vertices")
        row = self.vertices[k]
        if self.is_planar:
            return complex(row[0], row[1])
        return row.copy()

    def stencil(self, i):
        """The four vertices (g[i-1], g[i], g[i+1], g[i+2]) around edge i."""
        n = len(self)
        if not self.closed and not 1 <= i <= n - 3:
            raise InsufficientNeighborhoodError(
                f"edge {i} of an open curve with {n} vertices lacks the four-point neighborhood")
        return tuple(self.point(k) for k in (i - 1, i, i + 1, i + 2))

    def interior_edges(self):
        if self.closed:
            return list(range(len(self)))
        return list(range(1, len(self) - 2))

    def edge_parameter(self, i):
        """
        Arithmetic midpoint of the parameters of vertices i and i+1.

        On the closing edge of a closed curve the parameter of vertex 0 is
        advanced by the period.

        Raises:
            UndefinedQuantityError: no vertex parameters, or a closing edge
                without a known period.
        """
        if self.parameters is None:
            raise UndefinedQuantityError("curve carries no vertex parameters")
        n = len(self)
        i %= n
        if i < n - 1:
            return 0.5 * (self.parameters[i] + self.parameters[i + 1])
        if not self.closed:
            raise InsufficientNeighborhoodError(f"edge {i} of an open curve with {n} vertices does not exist")
        if self.period is None:
            raise UndefinedQuantityError("closing edge needs the parameter period")
        return 0.5 * (self.parameters[i] + self.parameters[0] + self.period)

    def distinctness_violations(self):
        """Windows of four consecutive vertices that are not pairwise distinct."""
        n = len(self)
        scale = float(np.ptp(self.vertices, axis=0).max()) or 1.0
        starts = range(n) if self.closed else range(n - 3)
        violations = []
        for s in starts:
            window = [self.vertices[(s + k) % n] for k in range(4)]
            for (j, p), (k, q) in combinations(enumerate(window), 2):
                if np.linalg.norm(p - q) <= ToleranceConfig.DISTINCT * scale:
                    violations.append(((s + j) % n, (s + k) % n))
        return violations


@dataclass(frozen=True, eq=False)
class Circle:
    center: np.ndarray
    radius: float
    # unit normal of the circle plane; None for planar curves
    normal: Optional[np.ndarray] = None
    # relative distance of the fourth edge point from the circle through the other three
    fit_residual: float = 0.0
    kind = "circle"

    def points(self, angles):
        """Points of the circle at the given angles."""
        normal = self.normal if self.normal is not None else np.array([0.0, 0.0, 1.0])
        helper = np.array([1.0, 0.0, 0.0]) if abs(normal[0]) < 0.9 else np.array([0.0, 1.0, 0.0])
        e1 = _unit(np.cross(normal, helper))
        e2 = np.cross(normal, e1)
        return [self.center + self.radius * (np.cos(t) * e1 + np.sin(t) * e2) for t in angles]

    def distance(self, point):
        """Distance of a point from the circle."""
        delta = as_space_point(point) - self.center
        normal = self.normal if self.normal is not None else np.array([0.0, 0.0, 1.0])
        height = float(np.dot(delta, normal))
        radial = np.linalg.norm(delta - height * normal)
        return float(np.hypot(radial - self.radius, height))


@dataclass(frozen=True, eq=False)
class Line:
    point: np.ndarray
    direction: np.ndarray
    kind = "line"

    def points(self, offsets):
        return [self.point + t * self.direction for t in offsets]

    def distance(self, point):
        delta = as_space_point(point) - self.point
        return float(np.linalg.norm(delta - np.dot(delta, self.direction) * self.direction))


@dataclass(frozen=True, eq=False)
class FrenetFrame:
    T: np.ndarray
    N: np.ndarray
    B: np.ndarray

    def as_matrix(self):
        return np.vstack([self.T, self.N, self.B])


@dataclass(frozen=True, eq=False)
class Sphere:
    center: np.ndarray
    radius: float

    def distance(self, point):
        return abs(float(np.linalg.norm(as_space_point(point) - self.center)) - self.radius)


@dataclass(eq=False)
class EdgeAnalysis:
    """Everything computed at one edge. Quantities that are undefined stay None."""
    edge: int
    quad: EdgePointQuad
    circle: object
    kappa: float
    frame: Optional[FrenetFrame] = None
    tau: Optional[float] = None
    sphere: Optional[Sphere] = None
    kappa_prime: Optional[float] = None
    arclength: Optional[bool] = None
    notes: List[str] = field(default_factory=list)

    def to_record(self):
        """Flat dictionary for tabular export."""
        def fmt(value):
            if value is None:
                return None
            if is_infinite(value):
                return "inf"
            return " ".join(f"{x:.17g}" for x in as_space_point(value))

        record = {"edge": self.edge}
        for label, point in zip(self.quad.labels(), self.quad.points()):
            record[label] = fmt(point)
        record["circle_kind"] = self.circle.kind
        if isinstance(self.circle, Circle):
            record["center"] = fmt(self.circle.center)
            record["radius"] = self.circle.radius
        else:
            record["center"] = None
            record["radius"] = float("inf")
        record["kappa"] = self.kappa
        for name in ("T", "N", "B"):
            record[name] = fmt(getattr(self.frame, name)) if self.frame is not None else None
        record["tau"] = self.tau
        record["sphere_center"] = fmt(self.sphere.center) if self.sphere is not None else None
        record["sphere_radius"] = self.sphere.radius if self.sphere is not None else None
        record["kappa_prime"] = self.kappa_prime
        record["arclength"] = self.arclength
        record["notes"] = "; ".join(self.notes)
        return record


# =============================================================================
# CIRCUMCENTERS
# =============================================================================
def _line_through(points):
    """Line through the two most distant of the given 3-vectors."""
    p, q = max(combinations(points, 2), key=lambda pq: np.linalg.norm(pq[0] - pq[1]))
    if np.linalg.norm(p - q) == 0.0:
        raise DegenerateConfigurationError("coincident points do not define a line")
    return p, _unit(q - p)


def circumcenter_2d(a, b, c):
    """
    Circumcenter of a planar triangle given by complex numbers.

    With A = a - c, B = b - c and w = Im(conj(A) B), the center is
    c - i (|A|^2 B - |B|^2 A) / (2 w).

    Raises:
        DegenerateCircumcircleError: the points are collinear; carries the line.
    """
    a, b, c = complex(a), complex(b), complex(c)
    A, B = a - c, b - c
    w = (A.conjugate() * B).imag
    if abs(w) <= ToleranceConfig.COLLINEAR * abs(A) * abs(B):
        point, direction = _line_through([as_space_point(p) for p in (a, b, c)])
        raise DegenerateCircumcircleError(point, direction)
    return c - 1j * (abs(A) ** 2 * B - abs(B) ** 2 * A) / (2.0 * w)


def circumcenter_3d(a, b, c):
    """
    Circumcenter of a triangle in space:
    c + ((|A|^2 B - |B|^2 A) x (A x B)) / (2 |A x B|^2), A = a - c, B = b - c.

    Raises:
        DegenerateCircumcircleError: the points are collinear; carries the line.
    """
    a, b, c = (as_space_point(p) for p in (a, b, c))
    A, B = a - c, b - c
    axb = np.cross(A, B)
    norm_axb = np.linalg.norm(axb)
    if norm_axb <= ToleranceConfig.COLLINEAR * np.linalg.norm(A) * np.linalg.norm(B):
        point, direction = _line_through([a, b, c])
        raise DegenerateCircumcircleError(point, direction)
    return c + np.cross(np.dot(A, A) * B - np.dot(B, B) * A, axb) / (2.0 * norm_axb ** 2)


def circle_through_quad(quad, planar):
    """
    Circle (or line) through the four edge points.

    Three points with the largest product of pairwise distances define the
    circle; the fourth is checked against it.
    """
    labels = quad.labels()
    if not quad.is_finite():
        finite = [as_space_point(p) for p in quad.points() if not is_infinite(p)]
        if len(finite) < 2:
            raise DegenerateConfigurationError("fewer than two finite edge points")
        point, direction = _line_through(finite)
        logger.debug("edge point %s at infinity; curvature circle is a line", quad.infinite_labels())
        return Line(point, direction)

    points = [as_space_point(p) for p in quad.points()]

    def conditioning(idx):
        i, j, k = idx
        return (np.linalg.norm(points[i] - points[j]) * np.linalg.norm(points[j] - points[k])
                * np.linalg.norm(points[k] - points[i]))

    best = max(combinations(range(4), 3), key=conditioning)
    try:
        if planar:
            z = [quad.points()[k] for k in best]
            center = as_space_point(circumcenter_2d(*z))
        else:
            center = circumcenter_3d(*(points[k] for k in best))
    except DegenerateCircumcircleError as e:
        return Line(e.point, e.direction)

    radius = float(np.mean([np.linalg.norm(points[k] - center) for k in best]))
    normal = None
    if not planar:
        i, j, k = best
        normal = _unit(np.cross(points[j] - points[i], points[k] - points[i]))
    fourth = next(k for k in range(4) if k not in best)
    through_three = Circle(center, radius, normal)
    residual = through_three.distance(points[fourth]) / radius
    if residual > ToleranceConfig.CIRCLE_FIT_RESIDUAL:
        logger.warning("%s off the curvature circle by %.3g (relative)", labels[fourth], residual)
    return Circle(center, radius, normal, residual)


# =============================================================================
# PER-EDGE OPERATIONS
# =============================================================================
def _quad_and_circle(curve, i):
    quad = edge_point_quad(*curve.stencil(i))
    return quad, circle_through_quad(quad, curve.is_planar)


def _chord(curve, i):
    return as_space_point(curve.point(i + 1)) - as_space_point(curve.point(i))


def curvature_circle(curve, i):
    """
    Discrete curvature circle at edge i: the circle through p_ab, p_bc, p_cd, p_da.

    Returns a Circle, or a Line when an edge point is at infinity or the
    edge points are collinear.

    Raises:
        ZigzagSingularityError: the stencil contains a zigzag quadrilateral.
        InsufficientNeighborhoodError: boundary edge of an open curve.
    """
    return _quad_and_circle(curve, i)[1]


def _curvature_of(circle):
    return 1.0 / circle.radius if isinstance(circle, Circle) else 0.0


def discrete_curvature(curve, i):
    """kappa_i = 1 / radius of the curvature circle; 0 for the line variant."""
    return _curvature_of(curvature_circle(curve, i))


def _frame_from_circle(circle, p_bc, chord):
    if isinstance(circle, Line):
        tangent = circle.direction if np.dot(circle.direction, chord) >= 0 else -circle.direction
        raise FlatFrameError(tangent)
    p_bc = as_space_point(p_bc)
    N = _unit(circle.center - p_bc)
    if circle.normal is None:
        T = np.array([-N[1], N[0], 0.0])
    else:
        T = np.cross(circle.normal, N)
    T = _unit(T - np.dot(T, N) * N)
    if np.dot(T, chord) < 0:
        T = -T
    return FrenetFrame(T, N, np.cross(T, N))


def frenet_frame(curve, i):
    """
    Discrete Frenet frame at edge i, read off the curvature circle at p_bc.

    T is the circle tangent at p_bc oriented along g[i+1] - g[i], N points from
    p_bc to the center and B = T x N.

    Raises:
        FlatFrameError: the curvature circle is a line; carries the tangent.
    """
    quad, circle = _quad_and_circle(curve, i)
    return _frame_from_circle(circle, quad.p_bc, _chord(curve, i))


def _torsion(curve, i, kappa, frame):
    if curve.is_planar:
        return 0.0
    if kappa == 0.0:
        raise UndefinedQuantityError("torsion undefined on straight segment")
    a, b, c, d = curve.stencil(i)
    cr = cross_ratio_quat(a, b, c, d)
    edge2 = float(np.dot(b - c, b - c))
    return -9.0 * float(np.dot(cr.imag, frame.N)) / (2.0 * kappa * edge2)


def discrete_torsion(curve, i):
    """
    tau_i = -9 <Im cr(g[i-1], g[i], g[i+1], g[i+2]), N_i> / (2 kappa_i |g[i] - g[i+1]|^2).

    Identically 0 for planar curves.

    Raises:
        UndefinedQuantityError: kappa_i = 0.
    """
    if curve.is_planar:
        return 0.0
    quad, circle = _quad_and_circle(curve, i)
    kappa = _curvature_of(circle)
    if kappa == 0.0:
        raise UndefinedQuantityError("torsion undefined on straight segment")
    frame = _frame_from_circle(circle, quad.p_bc, _chord(curve, i))
    return _torsion(curve, i, kappa, frame)


def circumsphere(a, b, c, d):
    """
    Sphere through four points of R^3.

    Raises:
        DegenerateSphereError: the points are coplanar; carries the plane.
    """
    p = [as_space_point(x) for x in (a, b, c, d)]
    rows = np.array([p[k] - p[0] for k in (1, 2, 3)])
    det = np.linalg.det(rows)
    scale = float(np.prod(np.linalg.norm(rows, axis=1)))
    if abs(det) <= ToleranceConfig.COPLANAR * scale:
        normal = np.cross(rows[0], rows[1])
        if np.linalg.norm(normal) == 0.0:
            normal = np.cross(rows[0], rows[2])
        raise DegenerateSphereError(p[0], _unit(normal))
    rhs = 0.5 * np.array([np.dot(p[k], p[k]) - np.dot(p[0], p[0]) for k in (1, 2, 3)])
    center = np.linalg.solve(rows, rhs)
    radius = float(np.mean([np.linalg.norm(x - center) for x in p]))
    return Sphere(center, radius)


def osculating_sphere(curve, i):
    """
    Discrete osculating sphere at edge i: the circumsphere of g[i-1] ... g[i+2].

    Raises:
        DegenerateSphereError: planar curve or coplanar stencil (plane variant).
    """
    a, b, c, d = curve.stencil(i)
    if curve.is_planar:
        raise DegenerateSphereError(as_space_point(a), np.array([0.0, 0.0, 1.0]))
    return circumsphere(a, b, c, d)


def _kappa_prime(circle, sphere, frame, kappa, tau):
    if tau == 0.0:
        raise UndefinedQuantityError("kappa' undefined (planar or straight)")
    return float(np.dot(sphere.center - circle.center, frame.B)) * kappa * kappa * tau


def discrete_kappa_prime(curve, i):
    """
    kappa'_i = <sphere center - circle center, B_i> kappa_i^2 tau_i.

    Raises:
        UndefinedQuantityError: planar curve, straight segment or coplanar stencil.
    """
    if curve.is_planar:
        raise UndefinedQuantityError("kappa' undefined (planar or straight)")
    quad, circle = _quad_and_circle(curve, i)
    kappa = _curvature_of(circle)
    if kappa == 0.0:
        raise UndefinedQuantityError("kappa' undefined (planar or straight)")
    frame = _frame_from_circle(circle, quad.p_bc, _chord(curve, i))
    tau = _torsion(curve, i, kappa, frame)
    try:
        sphere = osculating_sphere(curve, i)
    except DegenerateSphereError:
        raise UndefinedQuantityError("kappa' undefined (planar or straight)") from None
    return _kappa_prime(circle, sphere, frame, kappa, tau)


def _is_antipodal(circle, quad, tol):
    center2 = 2.0 * circle.center
    gap = as_space_point(quad.p_bc) + as_space_point(quad.p_da) - center2
    return bool(np.linalg.norm(gap) <= tol * circle.radius)


def is_arclength_edge(curve, i, tol=ToleranceConfig.ARCLENGTH):
    """
    True iff p_bc and p_da are opposite points of the curvature circle.

    A line-variant circle gives False (flat edge).
    """
    quad, circle = _quad_and_circle(curve, i)
    if isinstance(circle, Line):
        logger.debug("edge %d is flat; arclength criterion does not apply", i)
        return False
    return _is_antipodal(circle, quad, tol)


def analyze_edge(curve, i, arclength_tol=ToleranceConfig.ARCLENGTH, with_sphere=True):
    """
    Compute every discrete invariant at edge i in one pass.

    Undefined quantities are left as None with a note. Zigzag singularities
    and missing neighborhoods propagate. with_sphere=False leaves the
    osculating sphere and kappa' out.
    """
    quad, circle = _quad_and_circle(curve, i)
    kappa = _curvature_of(circle)
    result = EdgeAnalysis(edge=i, quad=quad, circle=circle, kappa=kappa)

    if isinstance(circle, Line):
        result.arclength = False
        result.notes.append("flat: curvature circle is a line")
        if quad.infinite_labels():
            result.notes.append(f"{', '.join(quad.infinite_labels())} at infinity")
        if curve.is_planar:
            result.tau = 0.0
        return result

    if circle.fit_residual > ToleranceConfig.CIRCLE_FIT_RESIDUAL:
        result.notes.append(f"{CIRCLE_FIT_NOTE} {circle.fit_residual:.3g}")
    result.frame = _frame_from_circle(circle, quad.p_bc, _chord(curve, i))
    result.arclength = _is_antipodal(circle, quad, arclength_tol)
    result.tau = _torsion(curve, i, kappa, result.frame)
    if curve.is_planar or not with_sphere:
        return result

    try:
        result.sphere = osculating_sphere(curve, i)
    except DegenerateSphereError:
        result.notes.append("coplanar stencil: osculating sphere is a plane")
        return result
    try:
        result.kappa_prime = _kappa_prime(circle, result.sphere, result.frame, kappa, result.tau)
    except UndefinedQuantityError as e:
        result.notes.append(str(e))
    return result
