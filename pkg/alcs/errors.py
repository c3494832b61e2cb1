# errors.py
"""Exception hierarchy shared by every alcs module."""


class AlcsError(Exception):
    pass


class ParameterError(AlcsError, ValueError):
    """Rejected argument: epsilon, seed, cap, index bounds, grid input."""


class FingerprintCollisionError(AlcsError):
    """No collision-free Karp-Rabin base found within the attempt budget."""


class IndexIOError(AlcsError):
    """The underlying stream failed while saving or loading an index."""


class IndexFormatError(AlcsError):
    """The bytes read do not form a valid index file."""


class BadMagicError(IndexFormatError):
    pass


class UnsupportedVersionError(IndexFormatError):
    pass


class ChecksumMismatchError(IndexFormatError):
    pass


class TruncatedIndexError(IndexFormatError):
    pass
