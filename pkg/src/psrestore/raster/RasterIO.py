"""
File I/O for rasters.

MBR layout (all integers little-endian)::

    offset  size  content
    0       4     magic b"MBR1"
    4       4     width  (uint32)
    8       4     height (uint32)
    12      4     bands  (uint32)
    16      4     reserved, zero
    20      4*WHM IEEE-754 binary32 samples, band 0 first, each band row-major

PGM/PPM files are written for visualization only.
"""
import logging
import numpy as np

from .MultiBandImage import MultiBandImage
from .PanImage import PanImage
from .Display import to_uint8
from ..utilities.Errors import (InvariantError,
                                MalformedHeaderError,
                                TruncatedPayloadError,
                                DimensionOverflowError,
                                RasterFormatError)

logger = logging.getLogger(__name__)

MAGIC = b"MBR1"

HEADER_DTYPE = np.dtype([
    ('magic',    'S4'),
    ('width',    '<u4'),
    ('height',   '<u4'),
    ('bands',    '<u4'),
    ('reserved', '<u4'),
])

SAMPLE_DTYPE = np.dtype('<f4')

# sample counts must fit the uint32 header arithmetic
MAX_SAMPLES = 2**32 - 1


def _decode(raw, path):
    if len(raw) < HEADER_DTYPE.itemsize:
        raise MalformedHeaderError(f"{path}: file shorter than the {HEADER_DTYPE.itemsize}-byte MBR header")

    header = np.frombuffer(raw, dtype=HEADER_DTYPE, count=1)[0]

    if header['magic'] != MAGIC:
        raise MalformedHeaderError(f"{path}: bad magic {bytes(header['magic'])!r}, expected {MAGIC!r}")
    if header['reserved'] != 0:
        raise MalformedHeaderError(f"{path}: reserved header field must be zero")

    width  = int(header['width'])
    height = int(header['height'])
    bands  = int(header['bands'])

    if width < 1 or height < 1 or bands < 1:
        raise MalformedHeaderError(f"{path}: invalid dimensions {width}x{height}x{bands}")

    count = width * height * bands
    if count > MAX_SAMPLES:
        raise DimensionOverflowError(f"{path}: {width}x{height}x{bands} exceeds {MAX_SAMPLES} samples")

    payload = len(raw) - HEADER_DTYPE.itemsize
    expected = count * SAMPLE_DTYPE.itemsize
    if payload < expected:
        raise TruncatedPayloadError(f"{path}: payload has {payload} bytes, header declares {expected}")
    if payload > expected:
        raise RasterFormatError(f"{path}: {payload - expected} trailing bytes after the payload")

    samples = np.frombuffer(raw, dtype=SAMPLE_DTYPE, count=count, offset=HEADER_DTYPE.itemsize)
    return samples.astype(np.float64).reshape(bands, height, width)


def load_image(path):
    """
    Read an MBR file.

    :param path: file path
    :returns: :py:class:`MultiBandImage` with the header-declared dimensions
    :raises MalformedHeaderError: bad magic, reserved field or dimensions
    :raises TruncatedPayloadError: fewer samples than declared
    :raises DimensionOverflowError: declared sample count not addressable
    """
    with open(path, 'rb') as fh:
        raw = fh.read()
    img = MultiBandImage(_decode(raw, path))
    logger.debug("loaded %s: %dx%dx%d", path, img.width, img.height, img.bands)
    return img


def save_image(img, path):
    """
    Write **img** as MBR. :py:func:`load_image` inverts this bit-exactly.

    :param img: :py:class:`MultiBandImage` (a :py:class:`PanImage` is written as one band)
    :param path: destination file path
    """
    data = img.data if img.data.ndim == 3 else img.data[np.newaxis]
    bands, height, width = data.shape

    header = np.zeros(1, dtype=HEADER_DTYPE)
    header['magic']  = MAGIC
    header['width']  = width
    header['height'] = height
    header['bands']  = bands

    with open(path, 'wb') as fh:
        fh.write(header.tobytes())
        fh.write(data.astype(SAMPLE_DTYPE).tobytes())

    logger.debug("saved %s: %dx%dx%d", path, width, height, bands)


def load_pan(path):
    """
    Read a single band MBR file as :py:class:`PanImage`.
    """
    img = load_image(path)
    if img.bands != 1:
        raise InvariantError(f"{path}: PAN file must hold exactly one band, found {img.bands}")
    return PanImage(img.band(0))


def save_pan(pan, path):
    save_image(pan, path)


def export_pgm(raster, path, gamma=0.75):
    """
    Write a single band raster (or band 0 of a multi band one) as binary 8-bit PGM.

    :param gamma: display gamma, **None** for a plain linear rescale
    """
    data = raster.data if raster.data.ndim == 2 else raster.data[0]
    pixels = to_uint8(PanImage(data), gamma=gamma)
    height, width = pixels.shape
    with open(path, 'wb') as fh:
        fh.write(f"P5\n{width} {height}\n255\n".encode('ascii'))
        fh.write(pixels.tobytes())


def export_ppm(img, path, rgb=(2, 1, 0), gamma=0.75):
    """
    Write three bands of **img** as binary 8-bit PPM.

    :param rgb: band indices shown as red, green, blue (default: R, G, B of a B-G-R-NIR stack)
    :param gamma: display gamma, **None** for a plain linear rescale
    """
    if len(rgb) != 3 or max(rgb) >= img.bands:
        raise InvariantError(f"invalid RGB band selection {rgb} for {img.bands} bands")

    shown = MultiBandImage(img.data[list(rgb)])
    pixels = to_uint8(shown, gamma=gamma)
    height, width = shown.height, shown.width
    with open(path, 'wb') as fh:
        fh.write(f"P6\n{width} {height}\n255\n".encode('ascii'))
        fh.write(np.ascontiguousarray(np.moveaxis(pixels, 0, -1)).tobytes())
