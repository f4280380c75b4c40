"""Exception types shared across the package."""


class A2Error(Exception):
    """Base class for every error raised by this package."""


class NonPrimeError(A2Error, ValueError):
    pass


class NotPrimePowerError(A2Error, ValueError):
    pass


class ReducibleModulusError(A2Error, ValueError):
    pass


class NoPrimitiveError(A2Error, RuntimeError):
    pass


class NotAPdsError(A2Error, ValueError):
    pass


class NotAMultiplierError(A2Error, ValueError):
    pass


class NotRelatedError(A2Error, ValueError):
    pass


class NotFixedByQError(A2Error, ValueError):
    pass


class InvalidMapError(A2Error, ValueError):
    """A plane map failed its exhaustive incidence check.

    ``witness`` holds the first failing (point, line) pair.
    """

    def __init__(self, message, witness=None):
        super().__init__(message)
        self.witness = witness


class NotALineError(A2Error, ValueError):
    pass


class InconsistentPresentationError(A2Error, ValueError):
    pass


class TooLargeError(A2Error, ValueError):
    pass


class NotEquivalentError(A2Error, ValueError):
    pass


class NotSInvariantError(A2Error, ValueError):
    pass


class UnknownGeneratorError(A2Error, KeyError):
    pass


class UnsupportedFormatError(A2Error, ValueError):
    pass


class RowMismatchError(A2Error, AssertionError):
    pass
