import logging
import time
import numpy as np

from .RestoreParams import RestoreParams
from ..raster.MultiBandImage import MultiBandImage
from ..pca.PcaBasis import fit_pca, forward_pca, inverse_pca
from ..weights.WeightGraph import compute_weights
from ..solver.Field import Field
from ..solver.PrimalDualSolver import PrimalDualSolver
from ..histmatch.HistogramMatch import match_local
from ..recorder.Recorder import Recorder, merge_recorders
from ..utilities.Errors import InvariantError, DimensionError
from ..utilities.Parallel import parallel_map

logger = logging.getLogger(__name__)


class Restoration():
    """
    The restoration chain for one fused image.

    .. code::

        basis      = fit_pca(fused)
        components = forward_pca(fused, basis)          # f_S, f_C1 .. f_C(M-1)
        graph      = compute_weights(pan)               # once, shared by all components
        f_Cm      <- nonlocal TV filter of f_Cm         # m = 1 .. M-1, independent
        f_S       <- match_local(pan, f_S)
        restored   = inverse_pca(components, basis)

    The MS image is never used.

    :param params: :py:class:`RestoreParams`
    :param threads: number of chromatic components filtered concurrently
    """

    def __init__(self, params=RestoreParams(), threads=1):
        self.params  = params
        self.threads = max(1, int(threads))

        self.basis  = None
        self.graph  = None
        self.scale  = 1.0
        self.states = []

        self.record    = False
        self.recorders = []

    def __str__(self):
        return "Restoration(params={}, threads={})".format(self.params, self.threads)

    def startRecorder(self):
        """
        Record the energy of every primal-dual iteration, one
        :py:class:`Recorder` per chromatic component.
        """
        self.record = True

    def stopRecorder(self):
        self.record = False

    def fetchTrace(self):
        """
        :returns: :py:class:`pandas.DataFrame` with columns component, iteration,
            energy, primal_change of the last run
        """
        return merge_recorders(self.recorders)

    def run(self, fused, pan, graph=None):
        """
        Restore **fused** using the weights of **pan**.

        :param fused: :py:class:`MultiBandImage`, M >= 2
        :param pan: :py:class:`PanImage` on the same grid
        :param graph: optional precomputed :py:class:`WeightGraph` of **pan**
        :returns: restored :py:class:`MultiBandImage`
        """
        if fused.bands < 2:
            raise InvariantError(f"restoration needs at least 2 bands, got {fused.bands}")
        fused.checkGrid(pan, "restore (fused vs pan)")

        start = time.perf_counter()

        self.basis = fit_pca(fused)
        components = forward_pca(fused, self.basis)

        if graph is None:
            graph = compute_weights(pan, self.params.weights)
        elif tuple(graph.shape2d) != tuple(fused.shape2d):
            raise DimensionError(f"weight graph {graph.shape2d} does not match image {fused.shape2d}")
        self.graph = graph
        logger.info("weights ready after %.2f s", time.perf_counter() - start)

        self.scale = self.params.componentScale(fused)
        chromatic = list(range(1, fused.bands))

        self.recorders = [Recorder(label=f"C{m}") if self.record else None for m in chromatic]
        jobs = list(zip(chromatic, self.recorders))

        def filter_one(job):
            m, recorder = job
            solver = PrimalDualSolver(self.graph, self.params.solver,
                                      lam=self.params.solver.lambdaFor(m))
            if recorder is not None:
                solver.setRecorder(recorder)
            f_c = Field(components.band(m) * self.scale)
            u = solver.solve(f_c, component=m)
            return u.data / self.scale, solver.fetchState()

        results = parallel_map(filter_one, jobs, threads=self.threads)
        self.states = [state for _, state in results]

        structure = match_local(pan, Field(components.band(0)), self.params.match)

        stack = np.empty(components.data.shape)
        stack[0] = structure.data
        for m, (values, _) in zip(chromatic, results):
            stack[m] = values

        restored = inverse_pca(MultiBandImage(stack), self.basis)
        logger.info("restoration of %d bands finished in %.2f s", fused.bands, time.perf_counter() - start)
        return restored

    def report(self):
        """
        Print a summary of the last run.
        """
        if self.basis is None:
            print("Restoration: not run yet")
            return

        print("PCA variances:", " ".join(f"{v:.6g}" for v in self.basis.variances))
        print("component scale: {:.6g}".format(self.scale))
        for m, state in enumerate(self.states, start=1):
            print("  C{}: lambda={:g} iterations={} converged={}".format(
                m, state['lambda'], state['iterations'], state['converged']))


def restore(fused, pan, params=RestoreParams(), threads=1, graph=None):
    """
    Restore a pansharpened image (see :py:class:`Restoration`).

    :param fused: :py:class:`MultiBandImage`
    :param pan: :py:class:`PanImage`
    :param params: :py:class:`RestoreParams`
    :param threads: thread budget for the chromatic filters
    :param graph: optional precomputed :py:class:`WeightGraph`
    :returns: :py:class:`MultiBandImage`
    """
    return Restoration(params, threads=threads).run(fused, pan, graph=graph)
