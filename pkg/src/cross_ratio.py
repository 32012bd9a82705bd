"""
Complex and quaternionic cross-ratios, corner tangents and the circumsphere
machinery built on them.

Planar points are complex numbers, space points are float 3-vectors. Points
at infinity are represented by the INFINITY singleton, never by large
coordinates.
"""

import logging
from dataclasses import dataclass

import numpy as np

from .config import ToleranceConfig
from .errors import ConcyclicPointsError, DegenerateConfigurationError
from .quat_core import Quaternion, as_space_point, inverse, is_negative_real, vector_inverse

logger = logging.getLogger(__name__)


class PointAtInfinity:
    """The point at infinity of the Moebius-extended plane or space."""

    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self):
        return "INFINITY"

    def __str__(self):
        return "inf"


INFINITY = PointAtInfinity()


def is_infinite(point):
    return point is INFINITY


@dataclass(frozen=True)
class CrossRatio:
    """
    Quaternion-valued cross-ratio.

    Planar cross-ratios are stored through the complex embedding
    [Re, (Im, 0, 0)].
    """
    value: Quaternion

    @property
    def real(self):
        return self.value.re

    @property
    def imag(self):
        return self.value.im

    @property
    def complex(self):
        return self.value.to_complex()

    def norm(self):
        return self.value.norm()

    def is_real(self, tolerance=ToleranceConfig.CONCYCLIC):
        """True iff the defining points are concyclic (within the relative gate)."""
        return self.value.im_norm() <= tolerance * self.value.norm()

    def is_negative_real(self, tolerance=ToleranceConfig.NEGATIVE_REAL):
        return is_negative_real(self.value, tolerance)


def _check_denominator(b, c, d, a, scale):
    if abs(b - c) <= ToleranceConfig.DISTINCT * scale or abs(d - a) <= ToleranceConfig.DISTINCT * scale:
        raise DegenerateConfigurationError("degenerate cross-ratio")


def complex_cross_ratio_value(a, b, c, d):
    """(a - b)(c - d) / ((b - c)(d - a)) as a plain complex number."""
    a, b, c, d = complex(a), complex(b), complex(c), complex(d)
    scale = max(abs(a - b), abs(b - c), abs(c - d), abs(d - a))
    _check_denominator(b, c, d, a, scale)
    return (a - b) * (c - d) / ((b - c) * (d - a))


def cross_ratio_complex(a, b, c, d):
    """Complex cross-ratio of four planar points, wrapped as a CrossRatio."""
    return CrossRatio(Quaternion.from_complex(complex_cross_ratio_value(a, b, c, d)))


def cross_ratio_quat(a, b, c, d):
    """
    Quaternionic cross-ratio (a - b)(b - c)^-1 (c - d)(d - a)^-1.

    The product is evaluated left to right. The result is real iff the four
    points are concyclic.
    """
    a, b, c, d = (as_space_point(p) for p in (a, b, c, d))
    ab, bc, cd, da = a - b, b - c, c - d, d - a
    scale = max(np.linalg.norm(ab), np.linalg.norm(bc), np.linalg.norm(cd), np.linalg.norm(da))
    if np.linalg.norm(bc) <= ToleranceConfig.DISTINCT * scale or np.linalg.norm(da) <= ToleranceConfig.DISTINCT * scale:
        raise DegenerateConfigurationError("degenerate cross-ratio")
    value = (Quaternion.from_point(ab) * inverse(Quaternion.from_point(bc))
             * Quaternion.from_point(cd) * inverse(Quaternion.from_point(da)))
    return CrossRatio(value)


def corner_tangent(a, b, c):
    """
    Corner tangent t[a, b, c] = (a - b)^-1 + (b - c)^-1.

    A vector in oriented tangential contact with the circumcircle of the
    triangle at the middle point b; for collinear points it is parallel to
    the line. Homogeneous of degree -1 under scaling.
    """
    a, b, c = (as_space_point(p) for p in (a, b, c))
    ab, bc = a - b, b - c
    scale = max(np.linalg.norm(ab), np.linalg.norm(bc), np.linalg.norm(a - c))
    if np.linalg.norm(ab) <= ToleranceConfig.DISTINCT * scale or np.linalg.norm(bc) <= ToleranceConfig.DISTINCT * scale:
        raise DegenerateConfigurationError("coincident points in corner tangent")
    return vector_inverse(ab) + vector_inverse(bc)


def corner_tangent_product(a, b, c):
    """Product form (a - b)^-1 (a - c) (b - c)^-1 of the corner tangent, as a Quaternion."""
    a, b, c = (as_space_point(p) for p in (a, b, c))
    return (inverse(Quaternion.from_point(a - b)) * Quaternion.from_point(a - c)
            * inverse(Quaternion.from_point(b - c)))


def circumsphere_normal_at_a(a, b, c, d):
    """
    Im cr(a, b, c, d), which is parallel to m - a for the circumsphere center m.

    For coplanar, non-concyclic points the sphere is their plane and the
    vector is the plane normal.

    Raises:
        ConcyclicPointsError: the cross-ratio is real.
    """
    cr = cross_ratio_quat(a, b, c, d)
    if cr.is_real():
        raise ConcyclicPointsError("no unique circumsphere normal")
    return cr.imag


def sphere_point(a, b, c, d, lam, mu):
    """
    Point f on the circumsphere of a, b, c, d with cr(a, b, c, f) = [lam r, mu v],
    where [r, v] = cr(a, b, c, d).

    Uses cr(a, b, c, f) = t[b, a, c]^-1 t[f, a, c]. Writing t1 = t[b, a, c]^-1 and
    t2 = t[d, a, c], the corner tangent at f is t3 = alpha t1 + mu t2 with
    alpha = (lam - mu) <t1, t2> / |t1|^2, and f = a + (t3 - (a - c)^-1)^-1.

    Returns:
        The point as a 3-vector, or INFINITY.

    Raises:
        ConcyclicPointsError: a, b, c, d are concyclic.
    """
    a, b, c, d = (as_space_point(p) for p in (a, b, c, d))
    if cross_ratio_quat(a, b, c, d).is_real():
        raise ConcyclicPointsError("sphere parametrization needs four non-concyclic points")

    t1 = vector_inverse(corner_tangent(b, a, c))
    t2 = corner_tangent(d, a, c)
    alpha = (lam - mu) * float(np.dot(t1, t2)) / float(np.dot(t1, t1))
    t3 = alpha * t1 + mu * t2

    ac_inv = vector_inverse(a - c)
    direction = t3 - ac_inv
    scale = np.linalg.norm(t3) + np.linalg.norm(ac_inv)
    if np.linalg.norm(direction) <= ToleranceConfig.INFINITY * scale:
        logger.debug("sphere_point: parameters (%g, %g) map to infinity", lam, mu)
        return INFINITY
    return a + vector_inverse(direction)


def sphere_inversion(point, center, radius):
    """
    Inversion in the sphere (or circle) |x - center| = radius.

    Complex points are inverted in the plane; INFINITY and the center are
    swapped.
    """
    if is_infinite(point):
        return center
    if isinstance(point, (complex, np.complexfloating)) or isinstance(center, (complex, np.complexfloating)):
        delta = complex(point) - complex(center)
        if delta == 0:
            return INFINITY
        return complex(center) + radius * radius / delta.conjugate()
    point = as_space_point(point)
    center = as_space_point(center)
    delta = point - center
    n2 = float(np.dot(delta, delta))
    if n2 == 0.0:
        return INFINITY
    return center + radius * radius * delta / n2
