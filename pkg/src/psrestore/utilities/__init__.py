__all__ = (
    'RestoreError',
    'InvariantError',
    'DimensionError',
    'DegenerateInputError',
    'UnsupportedBandCountError',
    'RasterFormatError',
    'MalformedHeaderError',
    'TruncatedPayloadError',
    'DimensionOverflowError',
    'UsageError',
    'default_threads',
    'parallel_map',
)

from .Errors import *
from .Parallel import *
