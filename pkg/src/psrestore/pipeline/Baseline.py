import logging

from .Simulation import upsample
from ..pca.PcaBasis import fit_pca, forward_pca, inverse_pca
from ..histmatch.HistogramMatch import match_global
from ..solver.Field import Field
from ..utilities.Errors import DimensionError

logger = logging.getLogger(__name__)


def baseline_pansharpen(ms, pan, factor):
    """
    PCA component substitution.

    The MS image is interpolated to the PAN grid, its first principal
    component is replaced by the PAN histogram-matched to it, and the
    transform is inverted.

    :param ms: :py:class:`MultiBandImage` on the coarse grid
    :param pan: :py:class:`PanImage` on a grid **factor** times finer
    :param factor: integer resolution ratio
    :returns: fused :py:class:`MultiBandImage` on the PAN grid
    """
    if pan.width != factor * ms.width or pan.height != factor * ms.height:
        msg = f"pan {pan.width}x{pan.height} is not {factor} x ms {ms.width}x{ms.height}"
        raise DimensionError(msg)

    up = upsample(ms, factor)
    basis = fit_pca(up)
    components = forward_pca(up, basis)

    structure = match_global(pan, Field(components.band(0)))
    components = components.replaceBand(0, structure)

    logger.info("baseline fusion of %d bands at ratio %d", ms.bands, factor)
    return inverse_pca(components, basis)
