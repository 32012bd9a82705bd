"""
Exception hierarchy for the discrete curvature toolkit.

Every numerical failure raised by the geometry modules derives from
GeometryError, so analyzers can catch one type per edge or per curve,
record the issue, and carry on with the rest of the data.
"""


class GeometryError(ValueError):
    """Base class for all geometric and numerical domain errors."""


class QuaternionDomainError(GeometryError):
    """An operation was applied outside the domain of the quaternion algebra."""


class NegativeRealSqrtError(QuaternionDomainError):
    """The principal square root is not unique for negative real quaternions."""

    def __init__(self, value, message="sqrt of negative real quaternion is not unique"):
        super().__init__(message)
        self.value = value


class DegenerateConfigurationError(GeometryError):
    """Input points coincide or otherwise fail to define the requested object."""


class DegenerateCircumcircleError(DegenerateConfigurationError):
    """Three collinear points have no circumcircle; the line through them is attached."""

    def __init__(self, point, direction, message="degenerate circumcircle"):
        super().__init__(message)
        self.point = point
        self.direction = direction


class DegenerateSphereError(DegenerateConfigurationError):
    """Four coplanar points have no proper circumsphere; the plane is attached."""

    def __init__(self, point, normal, message="coplanar points: sphere degenerates to a plane"):
        super().__init__(message)
        self.point = point
        self.normal = normal
        self.radius = float("inf")


class ConcyclicPointsError(DegenerateConfigurationError):
    """Four concyclic points do not determine a unique circumsphere."""


class ZigzagSingularityError(GeometryError):
    """
    The insertion rule hit a zigzag quadrilateral, i.e. a concyclic quadruple
    whose cross-ratio is a negative real number.
    """

    def __init__(self, cross_ratio, permutation=None):
        self.cross_ratio = cross_ratio
        self.permutation = permutation
        where = f" in {permutation}" if permutation else ""
        super().__init__(
            f"zigzag quadrilateral{where} (cross-ratio {cross_ratio}): "
            "discrete singularities of our polygons"
        )

    def with_permutation(self, permutation):
        return ZigzagSingularityError(self.cross_ratio, permutation)


class InsufficientNeighborhoodError(GeometryError):
    """The edge lacks the neighbouring vertices the four-point stencil needs."""


class UndefinedQuantityError(GeometryError):
    """A requested invariant is undefined at this edge or parameter."""


class FlatFrameError(UndefinedQuantityError):
    """The curvature circle degenerated to a line, so only a tangent exists."""

    def __init__(self, tangent, message="flat frame: curvature circle is a line"):
        super().__init__(message)
        self.tangent = tangent


class CurveFormatError(ValueError):
    """A polyline file could not be parsed."""

    def __init__(self, message, path=None, line_number=None):
        location = ""
        if path is not None:
            location = f"{path}"
            if line_number is not None:
                location += f":{line_number}"
            location += ": "
        super().__init__(f"{location}{message}")
        self.path = path
        self.line_number = line_number


class ConfigError(ValueError):
    """Invalid experiment or command-line configuration."""


class ArtifactWriteError(OSError):
    """An output artifact could not be written."""

    def __init__(self, path, reason):
        super().__init__(f"cannot write {path}: {reason}")
        self.path = path
