"""
Full-reference quality indices: RMSE, ERGAS and SAM.
"""
import logging
import numpy as np

from ..utilities.Errors import DimensionError, DegenerateInputError, InvariantError

logger = logging.getLogger(__name__)


def _check_pair(ref, test, what):
    if ref.data.shape != test.data.shape:
        raise DimensionError(f"{what}: shape {ref.data.shape} does not match {test.data.shape}")


def band_rmse(ref, test):
    """
    :returns: array of per band root mean square errors
    """
    _check_pair(ref, test, "rmse")
    diff = ref.data - test.data
    return np.sqrt(np.mean(diff**2, axis=(1, 2)))


def rmse(ref, test):
    """
    :math:`\\sqrt{\\frac{1}{NM}\\sum (ref - test)^2}`
    """
    _check_pair(ref, test, "rmse")
    return float(np.sqrt(np.mean((ref.data - test.data)**2)))


def ergas(ref, test, ratio=4):
    """
    Relative dimensionless global error

    .. math::

        \\frac{100}{ratio} \\sqrt{\\frac1M \\sum_m \\left(\\frac{RMSE_m}{\\mu_m}\\right)^2}

    with :math:`\\mu_m` the mean of reference band m.

    :param ratio: resolution ratio between PAN and MS (4 for the simulated data)
    :raises DegenerateInputError: a reference band has zero mean
    """
    if not ratio > 0:
        raise InvariantError(f"ratio must be positive, got {ratio}")
    errors = band_rmse(ref, test)
    means = ref.data.mean(axis=(1, 2))
    if np.any(means == 0.0):
        raise DegenerateInputError(f"ERGAS is undefined for zero-mean reference bands {np.flatnonzero(means == 0.0)}")
    return float(100.0 / ratio * np.sqrt(np.mean((errors / means)**2)))


def sam(ref, test):
    """
    Spectral angle mapper in degrees, averaged over pixels.

    Pixels where either spectral vector is zero are skipped.

    :raises DegenerateInputError: every pixel is degenerate
    """
    _check_pair(ref, test, "sam")
    r = ref.data.reshape(ref.data.shape[0], -1)
    t = test.data.reshape(test.data.shape[0], -1)

    dot = np.einsum('mi,mi->i', r, t)
    nr2 = np.einsum('mi,mi->i', r, r)
    nt2 = np.einsum('mi,mi->i', t, t)

    valid = (nr2 > 0.0) & (nt2 > 0.0)
    skipped = int(valid.size - valid.sum())
    if skipped == valid.size:
        raise DegenerateInputError("SAM: every pixel has a zero spectral vector")
    if skipped:
        logger.debug("sam: skipped %d zero spectral vectors", skipped)

    cos = dot[valid] / np.sqrt(nr2[valid] * nt2[valid])
    angles = np.arccos(np.clip(cos, -1.0, 1.0))
    return float(np.degrees(angles.mean()))
