"""Exception hierarchy shared by all sphere_re modules."""


class SphereReError(Exception):
    """Base class for all errors raised by this package."""


class DegenerateShape(SphereReError):
    """A pairwise separation is 0 or pi, so the shape is not a triangle."""


class SingularSeparation(SphereReError):
    """Two bodies are coincident or antipodal; the pair force diverges."""


class UnrealizableShape(SphereReError):
    """The requested arc angles cannot be placed on the sphere."""


class ReconstructionOutOfRange(SphereReError):
    """A reconstructed cos(theta) or cos(delta phi) left [-1, 1]."""


class DegenerateNormalization(SphereReError):
    """All bodies lie on the equator; the axis test vector has zero norm."""


class CoordinateSingularity(SphereReError):
    """A body sits at a pole where the azimuth acceleration is undefined."""


class DegenerateDiscriminant(SphereReError):
    """The meridian discriminant vanishes; the two-branch formula fails."""


class InconsistentRatios(SphereReError):
    """The compact meridian equations disagree on the common ratio."""


class ExcludedAngle(SphereReError):
    """The requested isosceles half-angle is one of the excluded values."""


class NoLreForRepulsive(SphereReError):
    """Non-collinear relative equilibria require an attractive force."""


class InternalError(SphereReError):
    """An invariant that should hold by construction was violated."""
