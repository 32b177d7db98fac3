"""
Reduced-resolution simulation protocol: Fourier-domain MTF filtering,
decimation, PAN synthesis and Fourier interpolation.
"""
import json
import logging
from dataclasses import dataclass, asdict
from typing import Tuple

import numpy as np
import scipy.fft as sfft

from ..raster.MultiBandImage import MultiBandImage
from ..raster.PanImage import PanImage
from ..utilities.Errors import InvariantError

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class SimulationSpec:
    """
    Parameters of the simulated dataset.

    Attributes:
        pan_coeffs: band weights of the synthetic PAN (B, G, R, NIR), nonnegative, summing to 1
        ref_factor: decimation from the original grid to the reference/PAN grid
        ref_mtf: MTF value at the Nyquist frequency of the reference grid
        ms_factor: resolution ratio between PAN and MS
        ms_cut: MTF value at the Nyquist frequency of the MS grid (no hard cut, aliasing kept)
    """
    pan_coeffs: Tuple[float, ...] = (0.1, 0.4, 0.25, 0.25)
    ref_factor: int = 3
    ref_mtf: float = 0.15
    ms_factor: int = 4
    ms_cut: float = 0.35

    def __post_init__(self):
        object.__setattr__(self, 'pan_coeffs', tuple(float(c) for c in self.pan_coeffs))
        check_coefficients(self.pan_coeffs)
        for name in ('ref_factor', 'ms_factor'):
            value = getattr(self, name)
            if int(value) != value or value < 1:
                raise InvariantError(f"{name} must be an integer >= 1, got {value}")
        for name in ('ref_mtf', 'ms_cut'):
            value = getattr(self, name)
            if not 0.0 < value <= 1.0:
                raise InvariantError(f"{name} must lie in (0, 1], got {value}")

    @classmethod
    def fromJson(cls, path):
        """
        Read a JSON file; keys missing from the file keep their defaults.
        """
        with open(path, 'r') as fh:
            params = json.load(fh)
        known = set(cls.__dataclass_fields__)
        unknown = set(params) - known
        if unknown:
            raise InvariantError(f"{path}: unknown simulation keys {sorted(unknown)}")
        return cls(**params)

    def toJson(self, path):
        with open(path, 'w') as fh:
            json.dump(asdict(self), fh, indent=2)


def check_coefficients(coeffs, bands=None):
    coeffs = np.asarray(coeffs, dtype=np.float64)
    if coeffs.ndim != 1 or coeffs.size < 1:
        raise InvariantError("PAN coefficients must be a non-empty vector")
    if bands is not None and coeffs.size != bands:
        raise InvariantError(f"{coeffs.size} PAN coefficients given for {bands} bands")
    if np.any(coeffs < 0.0):
        raise InvariantError(f"PAN coefficients must be nonnegative, got {coeffs}")
    if abs(coeffs.sum() - 1.0) > 1e-12:
        raise InvariantError(f"PAN coefficients must sum to 1, got sum {coeffs.sum()!r}")
    return coeffs


def _as_stack(img):
    return img.data if img.data.ndim == 3 else img.data[np.newaxis]


def _rebuild(img, stack):
    return img.__class__(stack if img.data.ndim == 3 else stack[0])


def mtf_transfer(height, width, factor, cut_value, hard_cut=True):
    """
    Isotropic Gaussian transfer function on the unshifted DFT grid.

    The Gaussian equals **cut_value** at :math:`\\|\\xi\\| = \\pi/factor`, the
    Nyquist frequency of the decimated grid. With **hard_cut** all
    frequencies beyond that Nyquist frequency along either axis are removed.

    :returns: (height, width) real array
    """
    ky = sfft.fftfreq(height, d=1.0 / height)
    kx = sfft.fftfreq(width, d=1.0 / width)

    if cut_value == 1.0:
        transfer = np.ones((height, width))
    else:
        xi_y = 2.0 * np.pi * ky / height
        xi_x = 2.0 * np.pi * kx / width
        r2 = xi_y[:, np.newaxis]**2 + xi_x[np.newaxis, :]**2
        nyquist2 = (np.pi / factor)**2
        # exp(-r^2 / (2 s^2)) with s chosen so the value at Nyquist is cut_value
        transfer = np.exp(np.log(cut_value) * r2 / nyquist2)

    if hard_cut:
        # integer test: |k| / N > 1 / (2 factor)
        keep_y = 2 * factor * np.abs(ky) <= height
        keep_x = 2 * factor * np.abs(kx) <= width
        transfer = transfer * (keep_y[:, np.newaxis] & keep_x[np.newaxis, :])

    return transfer


def mtf_downsample(img, factor, cut_value, hard_cut=True):
    """
    Low-pass filter every band in the Fourier domain and keep every
    **factor**-th sample.

    :param img: :py:class:`MultiBandImage` or :py:class:`PanImage`
    :param factor: integer decimation factor
    :param cut_value: MTF value at the target Nyquist frequency, in (0, 1]
    :param hard_cut: remove frequencies beyond the target Nyquist frequency
    :returns: raster of the same class, (W/factor) x (H/factor)
    """
    if int(factor) != factor or factor < 1:
        raise InvariantError(f"factor must be an integer >= 1, got {factor}")
    if not 0.0 < cut_value <= 1.0:
        raise InvariantError(f"cut value must lie in (0, 1], got {cut_value}")
    if img.width % factor or img.height % factor:
        raise InvariantError(f"{img.width}x{img.height} is not divisible by factor {factor}")

    stack = _as_stack(img)
    transfer = mtf_transfer(img.height, img.width, factor, cut_value, hard_cut)

    spectra = sfft.fft2(stack, axes=(-2, -1))
    filtered = sfft.ifft2(spectra * transfer[np.newaxis], axes=(-2, -1)).real

    return _rebuild(img, np.ascontiguousarray(filtered[:, ::factor, ::factor]))


def _zero_pad_axis(spectrum, axis, new_n):
    # embed an unshifted spectrum into a longer one; an even-size Nyquist bin is split
    n = spectrum.shape[axis]
    shape = list(spectrum.shape)
    shape[axis] = new_n
    out = np.zeros(shape, dtype=complex)

    def sl(start, stop):
        index = [slice(None)] * spectrum.ndim
        index[axis] = slice(start, stop)
        return tuple(index)

    if n % 2:
        half = (n + 1) // 2
        out[sl(0, half)] += spectrum[sl(0, half)]
        if n - half:
            out[sl(new_n - (n - half), new_n)] += spectrum[sl(half, n)]
    else:
        half = n // 2
        out[sl(0, half)] += spectrum[sl(0, half)]
        if half > 1:
            out[sl(new_n - half + 1, new_n)] += spectrum[sl(half + 1, n)]
        nyquist = spectrum[sl(half, half + 1)]
        out[sl(half, half + 1)] += 0.5 * nyquist
        out[sl(new_n - half, new_n - half + 1)] += 0.5 * nyquist

    return out * (new_n / n)


def upsample(ms, factor):
    """
    Fourier zero-padding interpolation to a **factor** times finer grid.

    :param ms: :py:class:`MultiBandImage` (or single band raster)
    :param factor: integer >= 1
    :returns: raster of the same class on the finer grid; the band means are kept
    """
    if int(factor) != factor or factor < 1:
        raise InvariantError(f"factor must be an integer >= 1, got {factor}")
    if factor == 1:
        return _rebuild(ms, np.array(_as_stack(ms)))

    stack = _as_stack(ms)
    _, H, W = stack.shape
    spectrum = sfft.fft2(stack, axes=(-2, -1))
    spectrum = _zero_pad_axis(spectrum, 1, H * factor)
    spectrum = _zero_pad_axis(spectrum, 2, W * factor)
    return _rebuild(ms, sfft.ifft2(spectrum, axes=(-2, -1)).real)


def simulate_pan(highres, coeffs):
    """
    Pixel-wise weighted band average :math:`\\sum_m \\alpha_m f_m`.

    :param highres: :py:class:`MultiBandImage`
    :param coeffs: nonnegative weights summing to one, one per band
    :returns: :py:class:`PanImage`
    """
    alpha = check_coefficients(coeffs, bands=highres.bands)
    return PanImage(np.tensordot(alpha, highres.data, axes=1))


def simulate_dataset(highres, spec=SimulationSpec()):
    """
    Reduced-resolution dataset from an original high resolution image.

    .. code::

        reference = mtf_downsample(highres, ref_factor, ref_mtf)
        pan       = mtf_downsample(simulate_pan(highres), ref_factor, ref_mtf)
        ms        = mtf_downsample(highres, ref_factor*ms_factor, ms_cut, hard_cut=False)

    :returns: tuple (reference, pan, ms)
    """
    total = spec.ref_factor * spec.ms_factor
    if highres.width % total or highres.height % total:
        msg = f"{highres.width}x{highres.height} is not divisible by ref_factor*ms_factor = {total}"
        raise InvariantError(msg)

    reference = mtf_downsample(highres, spec.ref_factor, spec.ref_mtf)
    pan = mtf_downsample(simulate_pan(highres, spec.pan_coeffs), spec.ref_factor, spec.ref_mtf)
    ms = mtf_downsample(highres, total, spec.ms_cut, hard_cut=False)

    logger.info("simulated reference %dx%d, pan %dx%d, ms %dx%d",
                reference.width, reference.height, pan.width, pan.height, ms.width, ms.height)
    return reference, pan, ms
