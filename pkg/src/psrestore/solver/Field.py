import numpy as np

from ..raster.Raster import Raster
from ..utilities.Errors import InvariantError, DimensionError


class Field(Raster):
    """
    A scalar image on the pixel grid: one PCA component :math:`u` or
    :math:`f_{C_m}`, or the matched structural component.

    :param data: array of shape (height, width)
    """

    def __init__(self, data):
        super(Field, self).__init__(data, ndim=2)

    @classmethod
    def fromRaster(cls, raster, band=0):
        """
        Take a :py:class:`PanImage` or one band of a :py:class:`MultiBandImage`.
        """
        data = raster.data
        return cls(data if data.ndim == 2 else data[band])

    @property
    def values(self):
        """flat row-major values, length N"""
        return self._data.reshape(-1)

    def mean(self):
        return float(self._data.mean())

    def sd(self):
        """population standard deviation"""
        return float(self._data.std())


class DualField():
    """
    Per-pixel window vectors :math:`q_i \\in \\mathbb{R}^{(2\\nu_r+1)^2}`,
    the layout of the dual variable and of :math:`\\nabla_\\omega u`.

    :code:`values[k, y, x]` belongs to pixel (x, y) and window offset k
    (row-major window order).

    :param values: array of shape (K, height, width)
    :param nu_r: window radius
    """

    def __init__(self, values, nu_r):
        values = np.array(values, dtype=np.float64, copy=True)
        K = (2 * nu_r + 1)**2
        if values.ndim != 3 or values.shape[0] != K:
            raise InvariantError(f"dual array of shape {values.shape} does not match nu_r={nu_r}")
        if not np.all(np.isfinite(values)):
            raise InvariantError("DualField values must be finite")
        values.setflags(write=False)
        self.values = values
        self.nu_r = nu_r

    def __repr__(self):
        return "DualField({}x{}, nu_r={})".format(self.width, self.height, self.nu_r)

    @classmethod
    def zeros(cls, graph):
        return cls(np.zeros(graph.weights.shape), graph.nu_r)

    @property
    def width(self):
        return self.values.shape[2]

    @property
    def height(self):
        return self.values.shape[1]

    @property
    def shape2d(self):
        return self.values.shape[1:]

    def pixelNorms(self):
        """
        :returns: (H, W) array of Euclidean norms :math:`\\|q_i\\|`
        """
        return np.sqrt(np.einsum('kij,kij->ij', self.values, self.values))

    def checkGraph(self, graph):
        if tuple(self.values.shape) != tuple(graph.weights.shape):
            msg = f"dual field {self.values.shape} does not match weight graph {graph.weights.shape}"
            raise DimensionError(msg)
