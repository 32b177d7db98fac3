import logging

from .MetricReport import MetricReport
from .FullReference import rmse, ergas, sam
from .QualityIndex import q2n
from .NoReference import qnr, _fit_block

logger = logging.getLogger(__name__)

FULL_REFERENCE_KEYS = ('RMSE', 'ERGAS', 'SAM', 'Q4')
NO_REFERENCE_KEYS = ('D_lambda', 'D_s', 'QNR')


def evaluate_full_reference(ref, test, ratio=4, block=32, label='value'):
    """
    RMSE, ERGAS, SAM and (for 4 bands) Q4 of **test** against **ref**.

    The Q4 block is clipped to the image size. Images with another band
    count than 4 are reported without Q4.

    :returns: :py:class:`MetricReport`
    """
    values = {
        'RMSE': rmse(ref, test),
        'ERGAS': ergas(ref, test, ratio),
        'SAM': sam(ref, test),
    }
    q_block = _fit_block(block, ref.shape2d)
    if ref.bands == 4:
        values['Q4'] = q2n(ref, test, q_block)
    else:
        logger.info("Q4 skipped for a %d band image", ref.bands)

    parameters = {'ratio': ratio, 'block': q_block, 'stride': q_block}
    return MetricReport(values, parameters, label=label)


def evaluate_no_reference(fused, ms, pan, ratio=4, block=32, label='value', ms_mtf=None):
    """
    D_lambda, D_s and QNR with exponents p = q = 1 and alpha = beta = 1.
    **ms_mtf** selects the MS-matched PAN degradation of D_s.

    :returns: :py:class:`MetricReport`
    """
    dl, ds, value = qnr(fused, ms, pan, ratio, block, ms_mtf=ms_mtf)
    parameters = {'ratio': ratio, 'block': block, 'ms_mtf': ms_mtf, 'p': 1, 'q': 1, 'alpha': 1, 'beta': 1}
    return MetricReport({'D_lambda': dl, 'D_s': ds, 'QNR': value}, parameters, label=label)
