"""Exception hierarchy shared by all extq modules."""


class ExtqError(Exception):
    """Base class for every error raised by extq."""


class InvalidType(ExtqError, ValueError):
    pass


class CapExceeded(ExtqError):
    pass


class NotDominant(ExtqError, ValueError):
    pass


class NotRegular(ExtqError, ValueError):
    pass


class NotLinked(ExtqError, ValueError):
    pass


class NotRestricted(ExtqError, ValueError):
    pass


class EqualArguments(ExtqError, ValueError):
    pass


class EqualWeights(ExtqError, ValueError):
    pass


class EqualRestrictedParts(ExtqError, ValueError):
    pass


class PreconditionLtooSmall(ExtqError, ValueError):
    pass


class NotWInvariant(ExtqError, ValueError):
    pass


class UnsupportedEll(ExtqError, ValueError):
    pass


class CacheMismatch(ExtqError):
    pass


class InvariantViolation(ExtqError, AssertionError):
    """An internal consistency check failed; always a bug or corrupt data."""
