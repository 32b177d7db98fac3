"""
Display oriented intensity transforms (linear rescale, gamma correction).

Both functions accept any single or multi band raster and return a new raster
of the same class and shape.
"""
import numpy as np

from ..utilities.Errors import InvariantError


def _as_bands(raster):
    # view a single band raster as a (1, H, W) stack
    data = raster.data
    return data if data.ndim == 3 else data[np.newaxis]


def _rebuild(raster, bands):
    data = bands if raster.data.ndim == 3 else bands[0]
    return raster.__class__(data)


def linear_rescale(img):
    """
    Per band affine map of [min, max] onto [0, 1].

    A constant band has no range to stretch and is mapped to all zeros.

    :param img: :py:class:`MultiBandImage` or :py:class:`PanImage`
    :returns: rescaled raster of the same class
    """
    bands = _as_bands(img)
    out = np.zeros_like(bands)
    for m, band in enumerate(bands):
        lo = band.min()
        hi = band.max()
        if hi > lo:
            out[m] = (band - lo) / (hi - lo)
    return _rebuild(img, out)


def gamma_correct(img, gamma):
    """
    Sample-wise power law :math:`s \\mapsto s^\\gamma`.

    :param img: raster with samples in [0, 1] (see :py:func:`linear_rescale`)
    :param gamma: positive exponent; 0.75 is used for quick-looks
    :returns: corrected raster of the same class
    """
    if not gamma > 0.0:
        raise InvariantError(f"gamma must be positive, got {gamma}")

    data = img.data
    if data.min() < 0.0 or data.max() > 1.0:
        msg = "gamma_correct expects samples in [0, 1]; apply linear_rescale first"
        raise InvariantError(msg)

    return img.__class__(np.power(data, gamma))


def to_uint8(img, gamma=0.75):
    """
    8-bit display samples: linear rescale, optional gamma, then clamp-round to [0, 255].

    :param img: raster to convert
    :param gamma: exponent or **None** to skip the gamma step
    :returns: uint8 array with the raster's shape
    """
    shown = linear_rescale(img)
    if gamma is not None:
        shown = gamma_correct(shown, gamma)
    return np.clip(np.rint(shown.data * 255.0), 0, 255).astype(np.uint8)
