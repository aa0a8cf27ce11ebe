"""Exception hierarchy shared by all entangle modules."""


class EntanglementError(Exception):
    """Base class for every error raised by this package."""


class NonPositiveCoupling(EntanglementError):
    """Coupling matrix has an eigenvalue at or below the solver tolerance."""


class SingularExteriorBlock(EntanglementError):
    """The traced block of Omega could not be Cholesky factorised."""


class NonPositiveGamma(EntanglementError):
    """The reduced matrix gamma is not positive definite."""


class SpectrumOutOfRange(EntanglementError):
    """An eigenvalue of beta' fell outside [0, 1) beyond the clamping band."""


class LatticeTooLarge(EntanglementError):
    pass


class RegionOutOfBounds(EntanglementError):
    pass


class RegionFormatError(EntanglementError):
    """Malformed run-length region file."""


class InvalidMultipole(EntanglementError):
    pass


class PoleSingularity(EntanglementError):
    """A radial site coincides with a coordinate pole (sin chi = 0)."""


class TailNotConvergent(EntanglementError):
    """Fitted partial-wave decay is too slow for the weighted sum to converge."""


class InsufficientPoints(EntanglementError):
    pass
