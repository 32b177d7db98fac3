import logging
import time

from .RestoreParams import RestoreParams
from .Simulation import SimulationSpec, simulate_dataset, upsample
from .Baseline import baseline_pansharpen
from .Restoration import Restoration
from ..metrics.Evaluation import evaluate_full_reference, evaluate_no_reference
from ..metrics.MetricReport import compare_reports

logger = logging.getLogger(__name__)


class Experiment():
    """
    Reduced-resolution experiment on one high resolution image.

    .. code::

        reference, pan, ms = simulate_dataset(highres, spec)
        fused    = baseline_pansharpen(ms, pan, spec.ms_factor)
        restored = restore(fused, pan, params)

    and the quality of the interpolated MS, the fused and the restored image
    against the reference (plus QNR) is collected for comparison. D_s degrades
    the PAN like the simulated MS bands.

    :param spec: :py:class:`SimulationSpec`
    :param params: :py:class:`RestoreParams`
    :param threads: thread budget of the restoration
    :param block: UIQI/Q4 block size
    """

    def __init__(self, spec=SimulationSpec(), params=RestoreParams(), threads=1, block=32):
        self.spec    = spec
        self.params  = params
        self.threads = threads
        self.block   = block

        self.reference = None
        self.pan       = None
        self.ms        = None
        self.fused     = None
        self.restored  = None
        self.reports   = {}
        self.timing    = {}

    def run(self, highres):
        """
        :param highres: original :py:class:`MultiBandImage`
        :returns: :py:class:`pandas.DataFrame` with columns EXP, Fus, Rest
        """
        ratio = self.spec.ms_factor
        self.reference, self.pan, self.ms = simulate_dataset(highres, self.spec)

        start = time.perf_counter()
        self.fused = baseline_pansharpen(self.ms, self.pan, ratio)
        self.timing['fusion'] = time.perf_counter() - start

        restoration = Restoration(self.params, threads=self.threads)
        start = time.perf_counter()
        self.restored = restoration.run(self.fused, self.pan)
        self.timing['restoration'] = time.perf_counter() - start

        candidates = {'EXP': upsample(self.ms, ratio), 'Fus': self.fused, 'Rest': self.restored}
        self.reports = {}
        for label, img in candidates.items():
            full = evaluate_full_reference(self.reference, img, ratio, self.block, label=label)
            noref = evaluate_no_reference(img, self.ms, self.pan, ratio, self.block, label=label,
                                          ms_mtf=self.spec.ms_cut)
            full.values.update(noref.values)
            full.parameters.update(noref.parameters)
            self.reports[label] = full

        logger.info("experiment finished: fusion %.2f s, restoration %.2f s",
                    self.timing['fusion'], self.timing['restoration'])
        return self.table()

    def table(self):
        return compare_reports(self.reports)
