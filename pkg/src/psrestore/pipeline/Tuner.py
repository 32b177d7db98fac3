import json
import logging
from dataclasses import replace
import numpy as np
import pandas as pd

from .RestoreParams import RestoreParams
from .Restoration import restore
from ..weights.WeightGraph import compute_weights
from ..metrics.FullReference import rmse
from ..utilities.Errors import InvariantError

logger = logging.getLogger(__name__)


def load_grid(path):
    """
    Read a tuning grid from JSON.

    .. code::

        {"h_sim": [2.0, 4.0, 8.0], "lambda": [0.25, 0.5, 1.0]}

    A missing key keeps the single default value of :py:class:`RestoreParams`.

    :returns: tuple (h_sims, lambdas)
    """
    with open(path, 'r') as fh:
        grid = json.load(fh)
    unknown = set(grid) - {'h_sim', 'lambda'}
    if unknown:
        raise InvariantError(f"{path}: unknown grid keys {sorted(unknown)}")
    return grid.get('h_sim', [None]), grid.get('lambda', [RestoreParams().solver.lam])


class Tuner():
    """
    Grid search of :math:`(h_{sim}, \\lambda)` minimizing the RMSE of the
    restored image against a reference.

    One weight graph is computed per :math:`h_{sim}` and shared by all
    values of :math:`\\lambda`.

    :param params: :py:class:`RestoreParams` providing all other settings
    :param threads: thread budget passed to :py:func:`restore`
    """

    def __init__(self, params=RestoreParams(), threads=1):
        self.params  = params
        self.threads = threads
        self.results = None

    def run(self, fused, pan, reference, h_sims, lambdas):
        """
        :param h_sims: candidate similarity decays (**None** selects the PAN-range default)
        :param lambdas: candidate :math:`\\lambda` values
        :returns: :py:class:`pandas.DataFrame` with columns h_sim, lambda, rmse, sorted by rmse
        """
        h_sims = list(h_sims)
        lambdas = list(lambdas)
        if not h_sims or not lambdas:
            raise InvariantError("tuning grid must not be empty")
        reference.checkGrid(fused, "tune (reference vs fused)")

        rows = []
        for h_sim in h_sims:
            weights = replace(self.params.weights, h_sim=h_sim)
            graph = compute_weights(pan, weights)
            resolved = weights.resolveHsim(pan)
            for lam in lambdas:
                solver = replace(self.params.solver, lam=float(lam), lambdas=None)
                params = replace(self.params, weights=weights, solver=solver)
                restored = restore(fused, pan, params, threads=self.threads, graph=graph)
                err = rmse(reference, restored)
                logger.info("tune: h_sim=%g lambda=%g rmse=%g", resolved, lam, err)
                rows.append({'h_sim': resolved, 'lambda': float(lam), 'rmse': err})

        self.results = pd.DataFrame(rows).sort_values('rmse', kind='mergesort').reset_index(drop=True)
        return self.results

    def best(self):
        """
        :returns: dict with the h_sim, lambda and rmse of the best grid point
        """
        if self.results is None:
            raise InvariantError("Tuner.best() called before Tuner.run()")
        row = self.results.iloc[0]
        return {'h_sim': float(row['h_sim']), 'lambda': float(row['lambda']), 'rmse': float(row['rmse'])}

    def bestParams(self):
        """
        :returns: :py:class:`RestoreParams` at the best grid point
        """
        best = self.best()
        return replace(self.params,
                       weights=replace(self.params.weights, h_sim=best['h_sim']),
                       solver=replace(self.params.solver, lam=best['lambda'], lambdas=None))
