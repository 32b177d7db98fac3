import numpy as np

from .Raster import Raster
from ..utilities.Errors import InvariantError


class MultiBandImage(Raster):
    """
    A W x H x M raster, band-sequential, each band row-major.

    Carries the fused image, reference images, low resolution MS data and
    stacks of principal components.

    :param data: array of shape (bands, height, width)
    """

    def __init__(self, data):
        super(MultiBandImage, self).__init__(data, ndim=3)
        if self._data.shape[0] < 1:
            raise InvariantError("MultiBandImage requires at least one band")

    @classmethod
    def fromBands(cls, bands):
        """
        Stack a sequence of (height, width) arrays or single band rasters.
        """
        arrays = [b.data if isinstance(b, Raster) else np.asarray(b, dtype=np.float64) for b in bands]
        return cls(np.stack(arrays, axis=0))

    @classmethod
    def fromSamples(cls, samples, width, height, bands):
        """
        Build an image from a flat, band-sequential sample vector of length W*H*M.
        """
        samples = np.asarray(samples, dtype=np.float64)
        if samples.size != width * height * bands:
            msg = f"expected {width*height*bands} samples for {width}x{height}x{bands}, got {samples.size}"
            raise InvariantError(msg)
        return cls(samples.reshape(bands, height, width))

    @property
    def bands(self):
        return self._data.shape[0]

    @property
    def samples(self):
        """flat band-sequential sample vector of length W*H*M"""
        return self._data.reshape(-1)

    def band(self, m):
        """
        :returns: read-only (height, width) array of band **m**
        """
        return self._data[m]

    def pixelVectors(self):
        """
        :returns: array of shape (N, M) holding one spectral vector per pixel
        """
        return self._data.reshape(self.bands, -1).T

    def replaceBand(self, m, values):
        """
        :returns: a new image with band **m** replaced by **values**
        """
        data = np.array(self._data)
        data[m] = np.asarray(values.data if isinstance(values, Raster) else values)
        return MultiBandImage(data)
