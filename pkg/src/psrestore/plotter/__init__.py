__all__ = (
    'ImagePlotter',
)

from .ImagePlotter import ImagePlotter
