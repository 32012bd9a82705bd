"""
Moebius-invariant point insertion in the plane and in space, and the four
edge points that define the discrete curvature circle.

The inserted point f(a, b, c, d) solves cr(c, a, b, f) = -sqrt(cr(c, a, b, d)).
"""

import logging
from dataclasses import dataclass

import numpy as np

from .config import ToleranceConfig
from .cross_ratio import INFINITY, complex_cross_ratio_value, cross_ratio_quat, is_infinite
from .errors import DegenerateConfigurationError, NegativeRealSqrtError, ZigzagSingularityError
from .quat_core import Quaternion, as_space_point, complex_principal_sqrt, inverse, principal_sqrt

logger = logging.getLogger(__name__)

# Cyclic permutations (label, order of a, b, c, d fed to f)
EDGE_PERMUTATIONS = (
    ("p_ab", "f(d, a, b, c)", (3, 0, 1, 2)),
    ("p_bc", "f(a, b, c, d)", (0, 1, 2, 3)),
    ("p_cd", "f(b, c, d, a)", (1, 2, 3, 0)),
    ("p_da", "f(c, d, a, b)", (2, 3, 0, 1)),
)


def _require_distinct(points, distance):
    scale = max(distance(p, q) for i, p in enumerate(points) for q in points[i + 1:])
    for i, p in enumerate(points):
        for q in points[i + 1:]:
            if distance(p, q) <= ToleranceConfig.DISTINCT * scale:
                raise DegenerateConfigurationError("insertion needs four pairwise distinct points")


def insert_complex(a, b, c, d):
    """
    Insert f = (c(b - a) sqrt(q) + b(c - a)) / ((b - a) sqrt(q) + (c - a)),
    q = cr(c, a, b, d), for planar points given as complex numbers.

    Returns:
        A complex number, or INFINITY when the denominator vanishes.

    Raises:
        ZigzagSingularityError: q is a negative real number.
        DegenerateConfigurationError: the points are not pairwise distinct.
    """
    a, b, c, d = complex(a), complex(b), complex(c), complex(d)
    _require_distinct((a, b, c, d), lambda p, q: abs(p - q))

    q = complex_cross_ratio_value(c, a, b, d)
    try:
        root = complex_principal_sqrt(q)
    except NegativeRealSqrtError:
        raise ZigzagSingularityError(q) from None

    denominator = (b - a) * root + (c - a)
    scale = abs(b - a) * abs(root) + abs(c - a)
    if abs(denominator) <= ToleranceConfig.INFINITY * scale:
        return INFINITY
    return (c * (b - a) * root + b * (c - a)) / denominator


def insert_quat(a, b, c, d):
    """
    Quaternionic insertion f = (X sqrt(q) + 1)^-1 (X sqrt(q) c + b) with
    X = (b - a)(c - a)^-1 and q = cr(c, a, b, d), evaluated left to right.

    The result lies on the circumsphere of a, b, c, d. Inputs in the
    xy-plane give the same point as insert_complex.

    Returns:
        A 3-vector, or INFINITY when the left factor vanishes.

    Raises:
        ZigzagSingularityError: q is a negative real number.
        DegenerateConfigurationError: the points are not pairwise distinct.
    """
    a, b, c, d = (as_space_point(p) for p in (a, b, c, d))
    _require_distinct((a, b, c, d), lambda p, q: float(np.linalg.norm(p - q)))

    q = cross_ratio_quat(c, a, b, d).value
    try:
        root = principal_sqrt(q)
    except NegativeRealSqrtError:
        raise ZigzagSingularityError(q) from None

    x_factor = Quaternion.from_point(b - a) * inverse(Quaternion.from_point(c - a))
    x_root = x_factor * root
    left = x_root + 1.0
    if left.norm() <= ToleranceConfig.INFINITY * (x_root.norm() + 1.0):
        return INFINITY
    f = inverse(left) * (x_root * Quaternion.from_point(c) + Quaternion.from_point(b))
    if abs(f.re) > 1e-8 * max(f.norm(), 1.0):
        logger.debug("insert_quat: result has real part %g", f.re)
    return f.to_point()


@dataclass(frozen=True, eq=False)
class EdgePointQuad:
    """The four inserted edge points p_ab, p_bc, p_cd, p_da; any may be INFINITY."""
    p_ab: object
    p_bc: object
    p_cd: object
    p_da: object

    def points(self):
        return (self.p_ab, self.p_bc, self.p_cd, self.p_da)

    def labels(self):
        return ("p_ab", "p_bc", "p_cd", "p_da")

    def infinite_labels(self):
        return [label for label, p in zip(self.labels(), self.points()) if is_infinite(p)]

    def is_finite(self):
        return not self.infinite_labels()


def edge_point_quad(a, b, c, d):
    """
    p_ab = f(d, a, b, c), p_bc = f(a, b, c, d), p_cd = f(b, c, d, a), p_da = f(c, d, a, b).

    Complex inputs use insert_complex, vector inputs insert_quat.

    Raises:
        ZigzagSingularityError: tagged with the permutation that failed.
    """
    points = (a, b, c, d)
    planar = all(isinstance(p, (complex, np.complexfloating)) for p in points)
    insert = insert_complex if planar else insert_quat

    result = {}
    for label, permutation, order in EDGE_PERMUTATIONS:
        try:
            result[label] = insert(*(points[k] for k in order))
        except ZigzagSingularityError as e:
            raise e.with_permutation(f"{label} = {permutation}") from None
    return EdgePointQuad(**result)
