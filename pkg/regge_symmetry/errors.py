"""Exceptions raised by the regge_symmetry package.

Everything derives from ReggeError so callers (the CLI in particular) can
catch one type and map it to an exit code.
"""


class ReggeError(Exception):
    """Base class for every error raised by this package."""


class ConfigError(ReggeError):
    """An environment setting could not be parsed."""


class DomainError(ReggeError, ValueError):
    """An argument lies outside the domain of the requested operation."""


class DegenerateTriangle(DomainError):
    """A triangle inequality holds with equality (within tolerance)."""


class InvalidTetrahedron(ReggeError):
    """Six edge lengths do not describe a usable tetrahedron."""


class NonexistentTetrahedron(InvalidTetrahedron):
    """No tetrahedron with the given edge lengths exists in the model space."""


class DegenerateTetrahedron(InvalidTetrahedron):
    """The tetrahedron exists only as a flat (zero volume) configuration."""


class InvalidPair(ReggeError, ValueError):
    """Two edge labels do not share a vertex."""


class NonpositivePartnerLength(ReggeError):
    """The Regge partner would have an edge of length <= 0."""


class PartnerNonexistent(ReggeError):
    """The Regge partner failed validation (numerical tolerance problem)."""


class PoleParameter(DomainError):
    """A quadric parameter coincides with a squared semi-axis."""


class DegeneratePoint(DomainError):
    """A point lies on the degeneracy set of an elliptic coordinate system."""


class EmptyBox(ReggeError):
    """The box parameters do not bound a nonempty box."""


class BandMismatch(DomainError):
    """Two quadric parameters do not lie in the same parameter band."""


class DegenerateConfiguration(DomainError):
    """A point is collinear with the foci."""


class ConstructionFailure(ReggeError):
    """A planar triangle needed by the partner construction does not exist."""


class QuadratureFailure(ReggeError):
    """Adaptive quadrature did not reach its tolerance."""


class NearDegenerate(ReggeError):
    """The tetrahedron is too close to flat for finite differences."""


class NoValidRange(ReggeError):
    """No value of the free edge yields a valid tetrahedron."""


class PathUnbounded(ReggeError):
    """The flattening deformation has no finite endpoint."""
