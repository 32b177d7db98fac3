"""
Procedural multispectral test scenes.

A scene is a mosaic of materials (Voronoi cells plus a few disks), each with
its own reflectance spectrum: a brightness times a slightly tinted
scene-wide spectral shape, so bands are strongly but not perfectly
correlated. The mosaic is modulated by a smooth illumination field and a
fine band-correlated texture. Edges are shared by all bands, the spectra are
not, which gives the mix of structure and chromaticity that pansharpening
and its restoration act on.
"""
import numpy as np
from scipy import ndimage

from ..raster.MultiBandImage import MultiBandImage
from ..utilities.Errors import InvariantError


def make_scene(size, bands=4, seed=0, materials=12, disks=6, texture=0.04):
    """
    :param size: width and height of the square scene in pixels
    :param bands: number of spectral bands
    :param seed: seed of the :py:func:`numpy.random.default_rng` generator
    :param materials: number of Voronoi cells
    :param disks: number of superimposed disks
    :param texture: relative amplitude of the fine texture
    :returns: :py:class:`MultiBandImage` of shape (bands, size, size), samples in (0, 1)
    """
    if int(size) != size or size < 4:
        raise InvariantError(f"scene size must be an integer >= 4, got {size}")
    if int(bands) != bands or bands < 1:
        raise InvariantError(f"scene needs at least one band, got {bands}")
    if materials < 1:
        raise InvariantError(f"scene needs at least one material, got {materials}")

    rng = np.random.default_rng(seed)
    shape = rng.uniform(0.6, 1.0, size=bands)
    brightness = rng.uniform(0.2, 0.85, size=materials + disks)
    tint = 1.0 + 0.15 * rng.standard_normal((materials + disks, bands))
    spectra = np.clip(brightness[:, np.newaxis] * shape * tint, 0.05, 0.95)

    yy, xx = np.mgrid[0:size, 0:size].astype(np.float64)

    seeds = rng.uniform(0, size, size=(materials, 2))
    dist2 = (yy[..., np.newaxis] - seeds[:, 0])**2 + (xx[..., np.newaxis] - seeds[:, 1])**2
    labels = np.argmin(dist2, axis=-1)

    for k in range(disks):
        cy, cx = rng.uniform(0, size, size=2)
        radius = rng.uniform(0.04, 0.12) * size
        labels[(yy - cy)**2 + (xx - cx)**2 <= radius**2] = materials + k

    illumination = ndimage.gaussian_filter(rng.standard_normal((size, size)), sigma=size / 8.0, mode='wrap')
    spread = np.abs(illumination).max()
    if spread > 0.0:
        illumination /= spread
    illumination = 1.0 + 0.15 * illumination

    grain = ndimage.gaussian_filter(rng.standard_normal((size, size)), sigma=1.0, mode='wrap')
    grain /= max(grain.std(), 1e-12)

    data = np.empty((bands, size, size))
    band_gain = rng.uniform(0.5, 1.0, size=bands)
    for m in range(bands):
        data[m] = spectra[labels, m] * illumination * (1.0 + texture * band_gain[m] * grain)

    return MultiBandImage(np.clip(data, 1e-3, 1.0 - 1e-3))
