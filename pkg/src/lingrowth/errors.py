"""Exception hierarchy shared by all modules."""


class LingrowthError(Exception):
    """Base class for every error raised by this package."""


class UsageError(LingrowthError, ValueError):
    """Malformed input: bad spec strings, wrong parameters, unknown keys."""


class NotPrime(UsageError):
    pass


class ReducibleModulus(UsageError):
    pass


class DegreeMismatch(UsageError):
    pass


class ZeroInverse(LingrowthError, ZeroDivisionError):
    pass


class SpecMismatch(UsageError):
    pass


class UnsupportedFamily(UsageError):
    pass


class PreconditionViolated(UsageError):
    pass


class NotASubgroup(PreconditionViolated):
    pass


class NotGenerating(PreconditionViolated):
    pass


class NotSymmetric(PreconditionViolated):
    pass


class CentralElement(PreconditionViolated):
    pass


class EmptySet(PreconditionViolated):
    pass


class UnknownGroup(UsageError):
    pass


class ResourceCap(LingrowthError):
    """A desk-scale cap was hit; carries partial progress where available."""

    def __init__(self, message, partial=None):
        super().__init__(message)
        self.partial = partial


class TooLarge(ResourceCap):
    pass


class ResultCapExceeded(ResourceCap):
    pass


class BudgetExceeded(ResourceCap):
    pass


class NotConverged(ResourceCap):
    def __init__(self, message, residual=None, partial=None):
        super().__init__(message, partial)
        self.residual = residual


class SearchFailed(LingrowthError):
    pass


class CoverNotReached(LingrowthError):
    pass
