"""
Quality with no reference: spectral distortion D_lambda, spatial
distortion D_s and their combination QNR.
"""
import logging
from itertools import combinations

from .QualityIndex import uiqi
from ..utilities.Errors import DimensionError, InvariantError

logger = logging.getLogger(__name__)

# MTF value of the PAN sensor at its Nyquist frequency
PAN_MTF = 0.15


def _fit_block(block, shape2d):
    return max(1, min(int(block), *shape2d))


def degrade_pan(pan, ratio, ms_mtf=None):
    """
    PAN brought to the MS grid; the PAN itself when **ratio** is 1.

    By default the PAN MTF filter (gain 0.15 at Nyquist) with the ideal cut
    is applied. With **ms_mtf** the PAN is degraded the way the MS bands are
    acquired instead: Gaussian gain **ms_mtf** at Nyquist and no ideal cut,
    so the degraded PAN carries the same aliasing as the MS bands.
    """
    if ratio == 1:
        return pan
    # pipeline imports this package
    from ..pipeline.Simulation import mtf_downsample
    if ms_mtf is None:
        return mtf_downsample(pan, ratio, PAN_MTF)
    return mtf_downsample(pan, ratio, ms_mtf, hard_cut=False)


def d_lambda(fused, ms, block=32, ratio=4, p=1):
    """
    :math:`D_\\lambda = \\left(\\frac{1}{M(M-1)} \\sum_{m \\ne n}
    |Q(F_m, F_n) - Q(MS_m, MS_n)|^p\\right)^{1/p}`

    The fused image is evaluated with **block**, the MS image with
    **block**/**ratio** (at least 2), both clipped to the image.
    """
    if fused.bands != ms.bands:
        raise DimensionError(f"fused has {fused.bands} bands, ms has {ms.bands}")
    if fused.bands < 2:
        raise InvariantError("D_lambda needs at least 2 bands")

    bf = _fit_block(block, fused.shape2d)
    bm = _fit_block(max(2, block // ratio), ms.shape2d)

    total = 0.0
    pairs = list(combinations(range(fused.bands), 2))
    for m, n in pairs:
        qf = uiqi(fused.band(m), fused.band(n), bf)
        qm = uiqi(ms.band(m), ms.band(n), bm)
        total += abs(qf - qm)**p
    return (total / len(pairs))**(1.0 / p)


def d_s(fused, ms, pan, pan_low, block=32, ratio=4, q=1):
    """
    :math:`D_s = \\left(\\frac1M \\sum_m |Q(F_m, P) - Q(MS_m, P_{low})|^q\\right)^{1/q}`
    """
    fused.checkGrid(pan, "D_s (fused vs pan)")
    ms.checkGrid(pan_low, "D_s (ms vs degraded pan)")

    bf = _fit_block(block, fused.shape2d)
    bm = _fit_block(max(2, block // ratio), ms.shape2d)

    total = 0.0
    for m in range(fused.bands):
        qf = uiqi(fused.band(m), pan.data, bf)
        qm = uiqi(ms.band(m), pan_low.data, bm)
        total += abs(qf - qm)**q
    return (total / fused.bands)**(1.0 / q)


def qnr(fused, ms, pan, ratio=4, block=32, alpha=1.0, beta=1.0, ms_mtf=None):
    """
    :param fused: :py:class:`MultiBandImage` on the PAN grid
    :param ms: :py:class:`MultiBandImage` on a grid **ratio** times coarser
    :param pan: :py:class:`PanImage`
    :param ratio: integer resolution ratio
    :param block: UIQI block size on the PAN grid
    :param ms_mtf: MS sensor MTF gain at Nyquist; when given D_s degrades the
                   PAN like the MS bands (see :py:func:`degrade_pan`)
    :returns: tuple (d_lambda, d_s, qnr)
    """
    if int(ratio) != ratio or ratio < 1:
        raise InvariantError(f"ratio must be an integer >= 1, got {ratio}")
    fused.checkGrid(pan, "qnr (fused vs pan)")
    if fused.width != ratio * ms.width or fused.height != ratio * ms.height:
        msg = f"fused {fused.width}x{fused.height} is not {ratio} x ms {ms.width}x{ms.height}"
        raise DimensionError(msg)

    pan_low = degrade_pan(pan, ratio, ms_mtf)
    dl = d_lambda(fused, ms, block, ratio)
    ds = d_s(fused, ms, pan, pan_low, block, ratio)
    value = (1.0 - dl)**alpha * (1.0 - ds)**beta
    logger.debug("qnr: D_lambda=%g D_s=%g QNR=%g", dl, ds, value)
    return dl, ds, value
