"""
Rejections raised by the library.

Every error is a ValueError subclass carrying a descriptive message; the CLI
maps all of them to exit code 2.
"""


class LiePoissonError(ValueError):
    """Base class for rejected inputs."""


class UnsupportedAlgebraError(LiePoissonError):
    pass


class UnsupportedScenarioError(LiePoissonError):
    pass


class DimensionMismatchError(LiePoissonError):
    pass


class NotHomogeneousError(LiePoissonError):
    pass


class ZeroPolynomialError(LiePoissonError):
    pass


class InvalidScalarError(LiePoissonError):
    pass


class NotSkewError(LiePoissonError):
    pass


class SamplingError(LiePoissonError):
    """Not enough regular parameters or points could be produced."""


class UnsupportedDivisorError(LiePoissonError):
    pass


class DocumentError(LiePoissonError):
    """A serialized document is malformed or of the wrong kind/version."""
