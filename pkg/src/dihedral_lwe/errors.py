"""Exception types raised across the package."""


class GrlweError(Exception):
    """Base class for all library errors."""


class InvalidRank(GrlweError, ValueError):
    pass


class NoSuitablePrime(GrlweError, ValueError):
    pass


class DimensionMismatch(GrlweError, ValueError):
    pass


class NttUnavailable(GrlweError, ValueError):
    pass


class NotInvertible(GrlweError, ArithmeticError):
    pass


class OracleSizeExceeded(GrlweError, ValueError):
    pass


class SingularBasis(GrlweError, ArithmeticError):
    pass


class NotInLattice(GrlweError, ValueError):
    pass


class CodecError(GrlweError, ValueError):
    """Malformed or inconsistent serialized data."""


class BadMagic(CodecError):
    pass


class UnsupportedVersion(CodecError):
    pass


class TruncatedBody(CodecError):
    pass


class CoefficientOutOfRange(CodecError):
    pass


class ParamMismatch(CodecError):
    pass
