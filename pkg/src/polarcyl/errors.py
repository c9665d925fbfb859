"""Exception hierarchy shared by all modules."""


class PolarCylError(Exception):
    """Base class for every error raised by this package."""


class InvalidParameterError(PolarCylError, ValueError):
    """A parameter is outside its documented range (e.g. m < 2, bad index)."""


class InvalidClassError(PolarCylError, ValueError):
    """A divisor class has the wrong lattice tag, length, or a non-rational entry."""


class InvalidDecompositionError(PolarCylError, ValueError):
    """A polarization decomposition violates the coefficient bounds or structure."""


class HypothesisNotMetError(PolarCylError):
    """The cylinder-existence hypothesis (s > 0, or s > 0 or a > 3) fails."""


class InfeasibleSupportError(PolarCylError):
    """No exact nonnegative solution exists on the requested curve support."""


class NotAmpleError(PolarCylError):
    """The polarization failed the best-effort ampleness screen."""


class ConeModelInsufficientError(PolarCylError):
    """The enumerated cone cannot answer the query (LP infeasible for all lambda)."""


class UnrecognizedFaceError(PolarCylError):
    """A Fujita face does not match any supported decomposition pattern."""


class NotContractibleError(PolarCylError):
    """A class scheduled for contraction is not a (-1)-class at its turn."""

    def __init__(self, message, cls=None, square=None):
        super().__init__(message)
        self.cls = cls
        self.square = square
