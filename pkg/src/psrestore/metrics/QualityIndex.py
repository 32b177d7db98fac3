"""
Block-wise universal image quality index and its quaternion extension Q4.

Both indices are evaluated on square blocks whose origins lie on a
**stride** grid inside the image (samples right of or below the last full
block are not visited) and averaged over the blocks. Blocks whose
denominator falls below :code:`DEGENERATE_DENOMINATOR` are skipped.
"""
import logging
import numpy as np
from numpy.lib.stride_tricks import sliding_window_view

from ..raster.Raster import Raster
from ..utilities.Errors import (DegenerateInputError, DimensionError, InvariantError,
                                UnsupportedBandCountError)

logger = logging.getLogger(__name__)

DEGENERATE_DENOMINATOR = 1.0e-12

# origin rows processed at once
_CHUNK_ROWS = 16


def _values(x):
    return x.data if isinstance(x, Raster) else np.asarray(x, dtype=np.float64)


def block_origins(n, block, stride):
    """
    :returns: block origins along an axis of length **n**
    """
    if int(block) != block or block < 1:
        raise InvariantError(f"block size must be a positive integer, got {block}")
    if int(stride) != stride or stride < 1:
        raise InvariantError(f"block stride must be a positive integer, got {stride}")
    if n < block:
        raise InvariantError(f"image extent {n} is smaller than the block size {block}")
    return np.arange(0, n - block + 1, stride)


def _average(q, valid, what):
    total = valid.size
    used = int(valid.sum())
    if used == 0:
        raise DegenerateInputError(f"{what}: all {total} blocks are degenerate")
    if used < total:
        logger.debug("%s: skipped %d of %d degenerate blocks", what, total - used, total)
    return float(q[valid].mean())


def uiqi_blocks(a, b, block=32, stride=None):
    """
    Block values of the universal image quality index

    .. math::

        Q = \\frac{4\\, \\sigma_{ab}\\, \\bar a\\, \\bar b}{(\\sigma_a^2 + \\sigma_b^2)(\\bar a^2 + \\bar b^2)}

    :returns: tuple (q, valid), arrays over the block grid; q is 0 where not valid
    """
    A = _values(a)
    B = _values(b)
    if A.shape != B.shape or A.ndim != 2:
        raise DimensionError(f"uiqi: shapes {A.shape} and {B.shape} differ or are not 2D")

    stride = block if stride is None else stride
    oy = block_origins(A.shape[0], block, stride)
    ox = block_origins(A.shape[1], block, stride)

    view_a = sliding_window_view(A, (block, block))
    view_b = sliding_window_view(B, (block, block))

    num = np.empty((oy.size, ox.size))
    den = np.empty((oy.size, ox.size))
    for start in range(0, oy.size, _CHUNK_ROWS):
        rows = oy[start:start + _CHUNK_ROWS]
        blk_a = view_a[rows][:, ox]
        blk_b = view_b[rows][:, ox]

        ma = blk_a.mean(axis=(2, 3))
        mb = blk_b.mean(axis=(2, 3))
        da = blk_a - ma[..., np.newaxis, np.newaxis]
        db = blk_b - mb[..., np.newaxis, np.newaxis]
        va = (da * da).mean(axis=(2, 3))
        vb = (db * db).mean(axis=(2, 3))
        cov = (da * db).mean(axis=(2, 3))

        sl = slice(start, start + rows.size)
        num[sl] = 4.0 * cov * (ma * mb)
        den[sl] = (va + vb) * (ma * ma + mb * mb)

    valid = den >= DEGENERATE_DENOMINATOR
    q = np.where(valid, num / np.where(valid, den, 1.0), 0.0)
    return q, valid


def uiqi(a, b, block=32, stride=None):
    """
    Universal image quality index averaged over blocks.

    :param a: :py:class:`Field` (or any 2D raster)
    :param b: :py:class:`Field` on the same grid
    :param block: block side length
    :param stride: distance between block origins; defaults to **block**
    :returns: value in [-1, 1]
    :raises DegenerateInputError: every block is degenerate
    """
    q, valid = uiqi_blocks(a, b, block, stride)
    return _average(q, valid, "uiqi")


def _qmul(p, q):
    # Hamilton product of quaternion arrays stacked on axis 0
    a1, b1, c1, d1 = p
    a2, b2, c2, d2 = q
    return np.stack([
        a1 * a2 - b1 * b2 - c1 * c2 - d1 * d2,
        (a1 * b2 + b1 * a2) + (c1 * d2 - d1 * c2),
        (a1 * c2 + c1 * a2) + (d1 * b2 - b1 * d2),
        (a1 * d2 + d1 * a2) + (b1 * c2 - c1 * b2),
    ])


def _qconj(p):
    return np.concatenate([p[:1], -p[1:]])


def q2n_blocks(ref, test, block=32, stride=None):
    """
    Block values of Q4 for 4-band images, each pixel read as the quaternion
    :math:`z = f_1 + f_2 i + f_3 j + f_4 k`.

    :returns: tuple (q, valid) over the block grid
    """
    R = _values(ref)
    T = _values(test)
    if R.shape != T.shape:
        raise DimensionError(f"q2n: shape {R.shape} does not match {T.shape}")
    if R.shape[0] != 4:
        raise UnsupportedBandCountError(f"Q2n is implemented for 4 bands (quaternions) only, got {R.shape[0]}")

    stride = block if stride is None else stride
    oy = block_origins(R.shape[1], block, stride)
    ox = block_origins(R.shape[2], block, stride)

    view_r = sliding_window_view(R, (block, block), axis=(1, 2))
    view_t = sliding_window_view(T, (block, block), axis=(1, 2))

    num = np.empty((oy.size, ox.size))
    den = np.empty((oy.size, ox.size))
    for start in range(0, oy.size, _CHUNK_ROWS):
        rows = oy[start:start + _CHUNK_ROWS]
        blk_r = view_r[:, rows][:, :, ox]
        blk_t = view_t[:, rows][:, :, ox]

        mr = blk_r.mean(axis=(3, 4))
        mt = blk_t.mean(axis=(3, 4))
        dr = blk_r - mr[..., np.newaxis, np.newaxis]
        dt = blk_t - mt[..., np.newaxis, np.newaxis]

        cov = _qmul(dr, _qconj(dt)).mean(axis=(3, 4))
        vr = _qmul(dr, _qconj(dr))[0].mean(axis=(2, 3))
        vt = _qmul(dt, _qconj(dt))[0].mean(axis=(2, 3))

        cov_mod = np.sqrt(np.sum(cov**2, axis=0))
        m2r = np.sum(mr**2, axis=0)
        m2t = np.sum(mt**2, axis=0)

        sl = slice(start, start + rows.size)
        num[sl] = 4.0 * cov_mod * np.sqrt(m2r * m2t)
        den[sl] = (vr + vt) * (m2r + m2t)

    valid = den >= DEGENERATE_DENOMINATOR
    q = np.where(valid, num / np.where(valid, den, 1.0), 0.0)
    return q, valid


def q2n(ref, test, block=32, stride=None):
    """
    Q4 index of a 4-band image against its reference, averaged over blocks.

    .. math::

        Q4 = \\frac{4 |\\sigma_{z_r z_t}|\\, |\\bar z_r|\\, |\\bar z_t|}
                  {(\\sigma_{z_r}^2 + \\sigma_{z_t}^2)(|\\bar z_r|^2 + |\\bar z_t|^2)}

    :param ref: :py:class:`MultiBandImage` with 4 bands
    :param test: :py:class:`MultiBandImage` of the same shape
    :param block: block side length (32)
    :param stride: distance between block origins; defaults to **block**
    :raises UnsupportedBandCountError: the images do not have 4 bands
    """
    q, valid = q2n_blocks(ref, test, block, stride)
    return _average(q, valid, "q2n")
