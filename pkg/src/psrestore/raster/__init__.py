__all__ = (
    'Raster',
    'MultiBandImage',
    'PanImage',
    'linear_rescale',
    'gamma_correct',
    'to_uint8',
    'load_image',
    'save_image',
    'load_pan',
    'save_pan',
    'export_pgm',
    'export_ppm',
)

from .Raster import Raster
from .MultiBandImage import MultiBandImage
from .PanImage import PanImage
from .Display import linear_rescale, gamma_correct, to_uint8
from .RasterIO import load_image, save_image, load_pan, save_pan, export_pgm, export_ppm
