"""
Moment-based histogram matching of the PAN image to the structural component.

Matching maps :math:`P` to :math:`a P + b` with :math:`a = \\sigma_t/\\sigma_P`
and :math:`b = \\mu_t - a \\mu_P`, so that mean and (population) standard
deviation of the result equal those of the target. The local variant applies
this map on every sliding patch and averages the values assigned to a pixel.
"""
import logging
import numpy as np
from numpy.lib.stride_tricks import sliding_window_view

from .MatchParams import MatchParams
from ..solver.Field import Field
from ..utilities.Errors import DegenerateInputError

logger = logging.getLogger(__name__)

# patch sd below this fraction of the PAN range counts as constant
DEGENERATE_FRACTION = 1.0e-12

# origin rows processed at once when collecting patch statistics
_CHUNK_ROWS = 16


def _moments(a):
    return float(a.mean()), float(a.std())


def match_global(pan, target):
    """
    Global matching with whole-image mean and standard deviation.

    :param pan: :py:class:`Field` (or :py:class:`PanImage`)
    :param target: :py:class:`Field`, typically :math:`f_S`
    :returns: :py:class:`Field`
    :raises DegenerateInputError: the PAN is constant
    """
    pan.checkGrid(target, "match_global")

    mp, sp = _moments(pan.data)
    mt, st = _moments(target.data)

    prange = float(pan.data.max() - pan.data.min())
    if sp == 0.0 or sp <= DEGENERATE_FRACTION * prange:
        raise DegenerateInputError("cannot match a constant PAN image (zero standard deviation)")

    a = st / sp
    b = mt - a * mp
    return Field(a * pan.data + b)


def _origins(n, window, stride):
    # patch origins along one axis; the last patch is flush with the border
    last = n - window
    origins = list(range(0, last + 1, stride))
    if origins[-1] != last:
        origins.append(last)
    return np.array(origins)


def _patch_stats(data, oy, ox, wy, wx):
    # mean and population sd of every patch, shape (len(oy), len(ox))
    view = sliding_window_view(data, (wy, wx))
    means = np.empty((oy.size, ox.size))
    sds = np.empty((oy.size, ox.size))
    for start in range(0, oy.size, _CHUNK_ROWS):
        rows = oy[start:start + _CHUNK_ROWS]
        block = view[rows][:, ox]
        means[start:start + rows.size] = block.mean(axis=(2, 3))
        sds[start:start + rows.size] = block.std(axis=(2, 3))
    return means, sds


def match_local(pan, target, params=MatchParams()):
    """
    Local matching on sliding patches with averaged aggregation.

    Patch origins lie on a **stride** grid, the last patch of every row and
    column is flush with the image border, so every pixel is covered at least
    once. A window larger than the image is clipped to the image. A patch
    whose PAN is constant (sd below 1e-12 of the PAN range) contributes the
    target patch mean.

    :param pan: :py:class:`Field` (or :py:class:`PanImage`)
    :param target: :py:class:`Field`
    :param params: :py:class:`MatchParams`
    :returns: :py:class:`Field`
    """
    pan.checkGrid(target, "match_local")

    if params.use_global:
        return match_global(pan, target)

    P = pan.data
    T = target.data
    H, W = P.shape
    wy = min(params.window, H)
    wx = min(params.window, W)

    oy = _origins(H, wy, params.stride)
    ox = _origins(W, wx, params.stride)

    if oy.size == 1 and ox.size == 1:
        # a single patch covering the image: identical to global matching
        mp, sp = _moments(P)
        mt, st = _moments(T)
        mp, sp = np.array([[mp]]), np.array([[sp]])
        mt, st = np.array([[mt]]), np.array([[st]])
    else:
        mp, sp = _patch_stats(P, oy, ox, wy, wx)
        mt, st = _patch_stats(T, oy, ox, wy, wx)

    prange = float(P.max() - P.min())
    flat = sp <= DEGENERATE_FRACTION * prange
    if np.any(flat):
        logger.debug("match_local: %d of %d patches with constant PAN", int(flat.sum()), flat.size)

    a = np.where(flat, 0.0, st / np.where(flat, 1.0, sp))
    b = np.where(flat, mt, mt - a * mp)

    sum_a = np.zeros((H, W))
    sum_b = np.zeros((H, W))
    count = np.zeros((H, W))
    for ty in range(wy):
        for tx in range(wx):
            idx = np.ix_(oy + ty, ox + tx)
            sum_a[idx] += a
            sum_b[idx] += b
            count[idx] += 1.0

    return Field((sum_a * P + sum_b) / count)

