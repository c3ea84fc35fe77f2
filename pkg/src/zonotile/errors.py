"""Exception hierarchy shared by all modules."""


class ZonotileError(Exception):
    """Base class for every error raised by this package."""


class SingularMatrixError(ZonotileError, ValueError):
    pass


class NonIntegerInputError(ZonotileError, ValueError):
    pass


class NotSymmetricError(ZonotileError, ValueError):
    pass


class InvalidInstanceError(ZonotileError, ValueError):
    """Malformed generators or instance file; ``field`` names the offending entry."""

    def __init__(self, message: str, field: str | None = None):
        super().__init__(message if field is None else f"{field}: {message}")
        self.field = field


class InconsistentLatticeError(ZonotileError):
    """Lattice determinant disagrees with the zonotope volume."""


class NotPositiveDefiniteError(ZonotileError):
    pass


class ToleranceExceededError(ZonotileError):
    pass


class NoSolutionError(ZonotileError):
    """The pQt system only admits Q = 0."""


class NotUnimodularError(ZonotileError):
    pass


class NonLatticeIntersectionError(ZonotileError):
    pass


class EpsilonOutOfRangeError(ZonotileError):
    pass


class UnsupportedDimensionError(ZonotileError, ValueError):
    pass
