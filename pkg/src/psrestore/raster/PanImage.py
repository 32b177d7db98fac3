from .Raster import Raster


class PanImage(Raster):
    """
    The single band panchromatic guidance image P.

    :param data: array of shape (height, width)
    """

    def __init__(self, data):
        super(PanImage, self).__init__(data, ndim=2)

    @property
    def samples(self):
        """flat row-major sample vector of length W*H"""
        return self._data.reshape(-1)

    def dynamicRange(self):
        """
        :returns: max(P) - min(P)
        """
        return float(self._data.max() - self._data.min())
