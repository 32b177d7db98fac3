import logging
import numpy as np
import matplotlib.pyplot as plt

from ..raster.Display import linear_rescale, gamma_correct
from ..raster.MultiBandImage import MultiBandImage
from ..utilities.Errors import InvariantError

logger = logging.getLogger(__name__)


class ImagePlotter():
    """
    Quick-look figures of multispectral rasters, principal components and
    solver energy histories.

    Every plot is written to **filename** when given, otherwise shown.
    """

    def __init__(self):
        self.image = None
        self.pan   = None
        self.gamma = 0.75

    def __str__(self):
        return "{}() object".format(self.__class__.__name__)

    def __repr__(self):
        return str(self)

    def setImage(self, img):
        """
        :param img: :py:class:`MultiBandImage` to display
        """
        self.image = img

    def setPan(self, pan):
        self.pan = pan

    def setGamma(self, gamma):
        if not gamma > 0.0:
            raise InvariantError(f"gamma must be positive, got {gamma}")
        self.gamma = gamma

    def _finish(self, fig, filename):
        if filename:
            fig.savefig(filename, bbox_inches='tight')
            plt.close(fig)
            logger.info("figure written to %s", filename)
        else:
            plt.show()

    def rgbArray(self, rgb=(2, 1, 0)):
        """
        :returns: (height, width, 3) array in [0, 1] after linear rescale and gamma
        """
        if self.image is None:
            raise InvariantError("no image set on the plotter")
        if len(rgb) != 3 or max(rgb) >= self.image.bands or min(rgb) < 0:
            raise InvariantError(f"invalid band selection {rgb} for {self.image.bands} bands")
        picked = MultiBandImage(self.image.data[list(rgb)])
        shown = gamma_correct(linear_rescale(picked), self.gamma)
        return np.moveaxis(shown.data, 0, -1)

    def quicklook(self, rgb=(2, 1, 0), filename=None, title=None, **kwargs):
        """
        Color composite of three bands; the PAN is shown alongside when set.
        """
        panels = 2 if self.pan is not None else 1
        fig, axs = plt.subplots(1, panels, figsize=kwargs.get('figsize', (6 * panels, 6)), squeeze=False)

        axs[0, 0].imshow(self.rgbArray(rgb), interpolation='nearest')
        axs[0, 0].set_title(title or "bands {}".format(rgb))

        if self.pan is not None:
            pan = gamma_correct(linear_rescale(self.pan), self.gamma)
            axs[0, 1].imshow(pan.data, cmap='gray', interpolation='nearest')
            axs[0, 1].set_title("PAN")

        for ax in axs.flat:
            ax.set_axis_off()

        self._finish(fig, filename)

    def componentPlot(self, components, filename=None, variances=None):
        """
        One panel per principal component.

        :param components: :py:class:`MultiBandImage` from :py:func:`forward_pca`
        :param variances: optional eigenvalues used in the panel titles
        """
        M = components.bands
        fig, axs = plt.subplots(1, M, figsize=(4 * M, 4), squeeze=False)
        for k in range(M):
            ax = axs[0, k]
            im = ax.imshow(components.band(k), cmap='gray', interpolation='nearest')
            name = "f_S" if k == 0 else "f_C{}".format(k)
            if variances is not None:
                name += " ({:.3g})".format(variances[k])
            ax.set_title(name)
            ax.set_axis_off()
            fig.colorbar(im, ax=ax, fraction=0.046)

        self._finish(fig, filename)

    def historyPlot(self, trace, filename=None, logscale=True):
        """
        Energy over iterations, one line per chromatic component.

        :param trace: :py:class:`pandas.DataFrame` as returned by :py:meth:`Restoration.fetchTrace`
        """
        if len(trace) == 0:
            raise InvariantError("empty energy trace")

        fig, axs = plt.subplots()
        for component, rows in trace.groupby('component'):
            axs.plot(rows['iteration'], rows['energy'], label="C{}".format(int(component)))
        if logscale:
            axs.set_yscale('log')
        axs.set_xlabel('iteration')
        axs.set_ylabel('energy')
        axs.grid(True)
        axs.legend()

        self._finish(fig, filename)
