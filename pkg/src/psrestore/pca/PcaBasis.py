import logging
import numpy as np
import scipy.linalg as sla

from ..raster.MultiBandImage import MultiBandImage
from ..utilities.Errors import InvariantError, DimensionError

logger = logging.getLogger(__name__)


class PcaBasis():
    """
    Principal component basis of a multi band image.

    Column :code:`k` of :code:`basis` is the unit eigenvector of the band
    covariance matrix with the k-th largest eigenvalue :code:`variances[k]`.
    Column 0 generates the structural component :math:`f_S`, the remaining
    columns the chromatic components :math:`f_{C_1}, \\ldots, f_{C_{M-1}}`.

    Orientation is fixed so that the entry of largest magnitude in every
    eigenvector is positive.

    :param mean: per band sample mean, length M
    :param basis: M x M matrix with orthonormal columns
    :param variances: eigenvalues, length M, descending
    """

    def __init__(self, mean, basis, variances):
        self.mean      = np.array(mean, dtype=np.float64)
        self.basis     = np.array(basis, dtype=np.float64)
        self.variances = np.array(variances, dtype=np.float64)

        M = self.mean.size
        if self.basis.shape != (M, M) or self.variances.size != M:
            msg = f"inconsistent PCA basis: mean {self.mean.shape}, basis {self.basis.shape}, variances {self.variances.shape}"
            raise InvariantError(msg)

        for arr in (self.mean, self.basis, self.variances):
            arr.setflags(write=False)

    def __str__(self):
        return "PcaBasis(M={}, variances={})".format(self.bands, self.variances)

    def __repr__(self):
        return str(self)

    @property
    def bands(self):
        return self.mean.size

    def checkBands(self, img, what="image"):
        if img.bands != self.bands:
            msg = f"{what} has {img.bands} bands, PCA basis expects {self.bands}"
            raise DimensionError(msg)

    def explainedVariance(self):
        """
        :returns: fraction of total variance carried by each component
        """
        total = self.variances.sum()
        if total <= 0.0:
            return np.zeros_like(self.variances)
        return self.variances / total


def _orient(vectors):
    # largest |entry| of every column becomes positive
    lead = np.argmax(np.abs(vectors), axis=0)
    signs = np.sign(vectors[lead, np.arange(vectors.shape[1])])
    signs[signs == 0] = 1.0
    return vectors * signs, lead


def fit_pca(img):
    """
    Eigen-decomposition of the M x M band covariance (divisor N).

    :param img: :py:class:`MultiBandImage` with M >= 2 and N >= M
    :returns: :py:class:`PcaBasis`
    """
    M = img.bands
    N = img.npixels
    if M < 2:
        raise InvariantError(f"PCA needs at least 2 bands, got {M}")
    if N < M:
        raise InvariantError(f"PCA needs at least as many pixels as bands ({N} < {M})")

    X = img.data.reshape(M, N)
    mean = X.mean(axis=1)
    centered = X - mean[:, np.newaxis]
    cov = (centered @ centered.T) / N
    cov = 0.5 * (cov + cov.T)

    evals, evecs = sla.eigh(cov)
    evecs, lead = _orient(evecs)

    # descending variance, ties by band index of the leading coordinate
    order = np.lexsort((lead, -evals))
    evals = evals[order]
    evecs = evecs[:, order]

    if evals.min() < -1e-12 * max(1.0, abs(evals.max())):
        logger.warning("covariance has a negative eigenvalue %g; clamped to 0", evals.min())
    evals = np.maximum(evals, 0.0)

    logger.debug("PCA variances: %s", evals)
    return PcaBasis(mean, evecs, evals)


def forward_pca(img, basis):
    """
    Project **img** onto the principal axes.

    Output band k at pixel i is :math:`\\sum_m B_{mk} (f_m(i) - \\mu_m)`;
    band 0 is :math:`f_S`, bands 1..M-1 are the chromatic components.

    :returns: :py:class:`MultiBandImage` of components
    """
    basis.checkBands(img)
    M = basis.bands
    X = img.data.reshape(M, -1) - basis.mean[:, np.newaxis]
    C = basis.basis.T @ X
    return MultiBandImage(C.reshape(img.data.shape))


def inverse_pca(components, basis):
    """
    Map components back to bands: :math:`f_m(i) = \\mu_m + \\sum_k B_{mk} c_k(i)`.

    :returns: :py:class:`MultiBandImage`
    """
    basis.checkBands(components, what="component stack")
    M = basis.bands
    C = components.data.reshape(M, -1)
    X = basis.basis @ C + basis.mean[:, np.newaxis]
    return MultiBandImage(X.reshape(components.data.shape))
