"""
Exception classes used throughout psrestore.

All classes derive from the built-in exception a caller would expect
(:code:`ValueError` for bad input, :code:`OSError` for file problems), so
:code:`except ValueError:` keeps working for users who do not care about the
finer categories.
"""


class RestoreError(Exception):
    """
    Base class for all psrestore errors.
    """
    category = "error"


class InvariantError(RestoreError, ValueError):
    """
    A parameter or data invariant is violated.
    """
    category = "invariant"


class DimensionError(InvariantError):
    """
    Operands do not share the required width, height or band count.
    """
    category = "dimension"


class DegenerateInputError(InvariantError):
    """
    The input is valid in shape but mathematically degenerate,
    e.g., a constant PAN in global histogram matching.
    """
    category = "degenerate"


class UnsupportedBandCountError(InvariantError):
    """
    The requested operation is only defined for a specific band count.
    """
    category = "unsupported-bands"


class RasterFormatError(RestoreError, OSError):
    """
    Base class for problems decoding an MBR raster file.
    """
    category = "format"


class MalformedHeaderError(RasterFormatError):
    category = "malformed-header"


class TruncatedPayloadError(RasterFormatError):
    category = "truncated-payload"


class DimensionOverflowError(RasterFormatError):
    category = "dimension-overflow"


class UsageError(RestoreError):
    """
    Command line misuse (unknown flag, missing argument).
    """
    category = "usage"
