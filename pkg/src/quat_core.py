"""
Quaternion arithmetic for Moebius-geometric computations.

Quaternions are written [r, v] with real part r and imaginary 3-vector v.
Points of R^3 are imaginary quaternions [0, v]; the complex numbers embed
as [x, (y, 0, 0)]. All values are immutable and all functions are pure.
"""

import math
from collections import namedtuple

import numpy as np

from .config import ToleranceConfig
from .errors import NegativeRealSqrtError, QuaternionDomainError


class Quaternion(namedtuple("Quaternion", "re, x, y, z")):
    """
    Quaternion type: Quaternion(re=0.0, x=0.0, y=0.0, z=0.0).

    `re` is the real part, (x, y, z) the imaginary part. The arithmetic
    operators implement the Hamilton product; scalars are accepted on
    either side of + - * and on the right of /.
    """

    __slots__ = ()

    def __new__(cls, re=0.0, x=0.0, y=0.0, z=0.0):
        return super().__new__(cls, float(re), float(x), float(y), float(z))

    @classmethod
    def from_parts(cls, re, im):
        return cls(re, im[0], im[1], im[2])

    @classmethod
    def from_complex(cls, value):
        """Embed a complex number as [Re, (Im, 0, 0)]."""
        value = complex(value)
        return cls(value.real, value.imag, 0.0, 0.0)

    @classmethod
    def from_point(cls, point):
        """Identify a point of R^3 with the imaginary quaternion [0, v]."""
        return cls(0.0, point[0], point[1], point[2])

    @property
    def im(self):
        return np.array([self.x, self.y, self.z])

    def to_complex(self):
        """Inverse of from_complex; only the first imaginary component is kept."""
        return complex(self.re, self.x)

    def to_point(self):
        return np.array([self.x, self.y, self.z])

    def conjugate(self):
        return Quaternion(self.re, -self.x, -self.y, -self.z)

    def norm2(self):
        return self.re * self.re + self.x * self.x + self.y * self.y + self.z * self.z

    def norm(self):
        return math.sqrt(self.norm2())

    def im_norm(self):
        return math.hypot(self.x, self.y, self.z)

    def __neg__(self):
        return Quaternion(-self.re, -self.x, -self.y, -self.z)

    def __add__(self, other):
        if isinstance(other, Quaternion):
            return Quaternion(self.re + other.re, self.x + other.x,
                              self.y + other.y, self.z + other.z)
        try:
            f = float(other)
        except (TypeError, ValueError):
            return NotImplemented
        return Quaternion(self.re + f, self.x, self.y, self.z)

    def __radd__(self, other):
        return self.__add__(other)

    def __sub__(self, other):
        if isinstance(other, Quaternion):
            return Quaternion(self.re - other.re, self.x - other.x,
                              self.y - other.y, self.z - other.z)
        try:
            f = float(other)
        except (TypeError, ValueError):
            return NotImplemented
        return Quaternion(self.re - f, self.x, self.y, self.z)

    def __rsub__(self, other):
        return (-self).__add__(other)

    def __mul__(self, other):
        if isinstance(other, Quaternion):
            return mul(self, other)
        try:
            f = float(other)
        except (TypeError, ValueError):
            return NotImplemented
        return Quaternion(self.re * f, self.x * f, self.y * f, self.z * f)

    def __rmul__(self, other):
        # scalars commute with every quaternion
        return self.__mul__(other)

    def __truediv__(self, other):
        try:
            f = float(other)
        except (TypeError, ValueError):
            return NotImplemented
        return Quaternion(self.re / f, self.x / f, self.y / f, self.z / f)

    def __str__(self):
        return f"[{self.re:g}, ({self.x:g}, {self.y:g}, {self.z:g})]"


ZERO = Quaternion()
ONE = Quaternion(1.0)


def mul(p, q):
    """Hamilton product [r, v][s, w] = [rs - <v, w>, rw + sv + v x w]."""
    a1, b1, c1, d1 = p
    a2, b2, c2, d2 = q
    return Quaternion(
        a1 * a2 - b1 * b2 - c1 * c2 - d1 * d2,
        a1 * b2 + b1 * a2 + c1 * d2 - d1 * c2,
        a1 * c2 - b1 * d2 + c1 * a2 + d1 * b2,
        a1 * d2 + b1 * c2 - c1 * b2 + d1 * a2,
    )


def inverse(q):
    """q^-1 = conj(q) / |q|^2."""
    n2 = q.norm2()
    if n2 == 0.0:
        raise QuaternionDomainError("zero quaternion has no inverse")
    return Quaternion(q.re / n2, -q.x / n2, -q.y / n2, -q.z / n2)


def is_negative_real(q, tolerance=ToleranceConfig.NEGATIVE_REAL):
    """Gate shared by every square root: re q < 0 and |im q| <= tolerance |q|."""
    return q.re < 0.0 and q.im_norm() <= tolerance * q.norm()


def polar(q):
    """
    Polar form q = |q| [cos phi, u sin phi] with unit u and phi in [0, pi].

    Returns (|q|, phi, u). For real q the axis is arbitrary; (1, 0, 0) is used.
    """
    n = q.norm()
    v_norm = q.im_norm()
    phi = math.atan2(v_norm, q.re)
    if v_norm == 0.0:
        axis = np.array([1.0, 0.0, 0.0])
    else:
        axis = q.im / v_norm
    return n, phi, axis


def principal_sqrt(q):
    """
    Principal square root sqrt(|q|) [cos phi/2, u sin phi/2].

    The imaginary part of the root is parallel to, and has the sign of, the
    imaginary part of q. sqrt(0) = 0.

    Raises:
        NegativeRealSqrtError: q is (numerically) a negative real number.
    """
    n = q.norm()
    if n == 0.0:
        return ZERO
    if is_negative_real(q):
        raise NegativeRealSqrtError(q)
    v_norm = q.im_norm()
    if v_norm == 0.0:
        return Quaternion(math.sqrt(q.re))
    phi = math.atan2(v_norm, q.re)
    root = math.sqrt(n)
    scale = root * math.sin(0.5 * phi) / v_norm
    return Quaternion(root * math.cos(0.5 * phi), q.x * scale, q.y * scale, q.z * scale)


def complex_principal_sqrt(z):
    """Principal complex square root with the same negative-real gate as principal_sqrt."""
    return principal_sqrt(Quaternion.from_complex(complex(z))).to_complex()


def as_space_point(point):
    """Return a point of R^2 or R^3 (or a complex number) as a float 3-vector, padding z = 0."""
    if isinstance(point, (complex, np.complexfloating)):
        return np.array([point.real, point.imag, 0.0])
    vec = np.asarray(point, dtype=float).reshape(-1)
    if vec.size == 2:
        return np.array([vec[0], vec[1], 0.0])
    if vec.size != 3:
        raise ValueError(f"expected a 2- or 3-component point, got {vec.size} components")
    return vec


def vector_inverse(v):
    """Inverse of the imaginary quaternion [0, v]: -v / |v|^2."""
    n2 = float(np.dot(v, v))
    if n2 == 0.0:
        raise QuaternionDomainError("zero quaternion has no inverse")
    return -np.asarray(v, dtype=float) / n2
