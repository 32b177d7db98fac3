import numpy as np

from ..utilities.Errors import InvariantError, DimensionError


class Raster():
    """
    Abstract base for all rasters: an immutable, finite, 64-bit float array on
    a regular grid.

    Pixels are linearized by rows: the pixel at column :code:`x` and row
    :code:`y` has the (0-based) linear index :code:`i = y*width + x`.

    :param data: array-like of samples; the last two axes are (height, width)
    :param ndim: required number of array axes
    """

    def __init__(self, data, ndim=2):
        arr = np.array(data, dtype=np.float64, copy=True)

        if arr.ndim != ndim:
            msg = f"{self.__class__.__name__} requires a {ndim}-dimensional array, got shape {arr.shape}"
            raise InvariantError(msg)

        if arr.shape[-1] < 1 or arr.shape[-2] < 1:
            msg = f"{self.__class__.__name__} requires width >= 1 and height >= 1, got shape {arr.shape}"
            raise InvariantError(msg)

        if not np.all(np.isfinite(arr)):
            msg = f"{self.__class__.__name__} samples must be finite (no NaN/Inf)"
            raise InvariantError(msg)

        arr.setflags(write=False)
        self._data = arr

    def __repr__(self):
        return "{}(shape={})".format(self.__class__.__name__, self._data.shape)

    @property
    def data(self):
        """read-only sample array"""
        return self._data

    @property
    def width(self):
        return self._data.shape[-1]

    @property
    def height(self):
        return self._data.shape[-2]

    @property
    def npixels(self):
        """number of pixels N = W*H"""
        return self.width * self.height

    @property
    def shape2d(self):
        return (self.height, self.width)

    def sameGrid(self, other):
        """
        :returns: **True** if **other** lives on the same (height, width) grid
        """
        return self.shape2d == other.shape2d

    def checkGrid(self, other, what="operands"):
        """
        Raise :py:class:`DimensionError` unless **other** shares the pixel grid.
        """
        if not self.sameGrid(other):
            msg = f"{what}: grid {self.width}x{self.height} does not match {other.width}x{other.height}"
            raise DimensionError(msg)

    def pixelIndex(self, x, y):
        """
        :returns: linear (row-major) index of pixel (x, y)
        """
        return y * self.width + x

    def pixelCoordinates(self, i):
        """
        :returns: tuple (x, y) of linear index **i**
        """
        return (i % self.width, i // self.width)
