"""Exception hierarchy. Every domain error is a ``ValueError`` so callers can
catch broadly; the CLI maps all of them to a usage error exit status."""


class QAlphabetError(Exception):
    """Base class for all errors raised by this package."""


class InvalidSizeError(QAlphabetError, ValueError):
    pass


class InvalidTargetError(QAlphabetError, ValueError):
    pass


class DimensionError(QAlphabetError, ValueError):
    pass


class NormalizationError(QAlphabetError, ValueError):
    pass


class DomainError(QAlphabetError, ValueError):
    pass


class RangeError(QAlphabetError, OverflowError):
    pass
