import logging
import numpy as np

from .Solver import Solver
from .Field import Field, DualField
from .SolverParams import SolverParams
from .NonlocalOperator import gradient_norms, estimate_operator_norm, _check
from ..utilities.Errors import DimensionError, InvariantError

logger = logging.getLogger(__name__)

# pixels per band of the in-place sweeps over the window offsets
_BAND_PIXELS = 32768


def prox_data_array(u, f, tau):
    # (u + tau f) / (1 + tau), written so that u == f returns f exactly
    return u + (tau / (1.0 + tau)) * (f - u)


def prox_dual_array(q, lam):
    """
    In-place projection of every :math:`q_i` onto the ball of radius **lam**.
    """
    if lam == 0.0:
        q[...] = 0.0
        return q
    norms = np.sqrt(np.einsum('kij,kij->ij', q, q))
    scale = lam / np.maximum(lam, norms)
    q *= scale[np.newaxis]
    return q


def prox_data(u, f, tau):
    """
    Proximal map of :math:`G(u) = \\frac12\\|u - f\\|_2^2`:
    :math:`(u + \\tau f)/(1 + \\tau)` pointwise.

    :param u: :py:class:`Field`
    :param f: :py:class:`Field`
    :param tau: positive step
    :returns: :py:class:`Field`
    """
    u.checkGrid(f, "prox_data")
    if not tau > 0.0:
        raise InvariantError(f"tau must be positive, got {tau}")
    return Field(prox_data_array(u.data, f.data, tau))


def prox_dual(q, lam):
    """
    Projection onto :math:`\\{q : \\max_i \\|q_i\\| \\le \\lambda\\}`:
    :math:`q_{i,j} \\mapsto \\lambda q_{i,j} / \\max(\\lambda, \\|q_i\\|)`.

    :param q: :py:class:`DualField`
    :param lam: radius :math:`\\lambda`
    :returns: :py:class:`DualField`
    """
    if not lam >= 0.0:
        raise InvariantError(f"lambda must be nonnegative, got {lam}")
    values = np.array(q.values)
    return DualField(prox_dual_array(values, lam), q.nu_r)


def energy(u, f, graph, lam):
    """
    :math:`\\lambda \\sum_i \\|(\\nabla_\\omega u)_i\\| + \\frac12 \\|u - f\\|_2^2`

    :returns: nonnegative float
    """
    u.checkGrid(f, "energy")
    _check(u, graph)
    return _energy_array(u.data, f.data, graph.sqrtWeights(), graph.edgeSlices(), lam)


def _energy_array(u, f, sw, slices, lam):
    data = 0.5 * float(np.sum((u - f)**2))
    if lam == 0.0:
        return data
    return lam * float(np.sum(gradient_norms(u, sw, slices))) + data


class PrimalDualSolver(Solver):
    """
    First-order primal-dual iteration for the nonlocal TV filter

    .. math::

        \\min_u \\; \\lambda \\|\\nabla_\\omega u\\|_1 + \\tfrac12 \\|u - f\\|_2^2

    written as the saddle point problem
    :math:`\\min_u \\max_q \\langle \\nabla_\\omega u, q\\rangle - \\delta_Q(q) + \\frac12\\|u-f\\|^2`.
    Each iteration performs

    .. code::

        q    = prox_dual(q + sigma * grad(ubar), lam)
        u'   = prox_data(u + tau * div(q), f, tau)
        ubar = u' + theta * (u' - u)

    starting from :math:`u^0 = \\bar u^0 = f`, :math:`q^0 = 0`.

    :param graph: :py:class:`WeightGraph`
    :param params: :py:class:`SolverParams`
    :param lam: overrides :code:`params.lam` (per-component values)
    """

    def __init__(self, graph, params=SolverParams(), lam=None):
        super(PrimalDualSolver, self).__init__()
        self.connect(graph)
        self.params = params
        self.lam    = params.lam if lam is None else float(lam)
        self.TOL    = params.rel_tol

        self.L = estimate_operator_norm(graph)
        self.tau, self.sigma = params.steps(self.L)

    def fetchState(self):
        """
        Extends :py:meth:`Solver.fetchState` with **lambda**, **tau**, **sigma** and **L**.
        """
        state = super(PrimalDualSolver, self).fetchState()
        state['lambda'] = self.lam
        state['tau']    = self.tau
        state['sigma']  = self.sigma
        state['L']      = self.L
        return state

    def solve(self, f, component=0):
        """
        Filter one component.

        Stops after :code:`max_iters` iterations or once the relative primal
        change drops below :code:`rel_tol`. Running out of iterations is not an
        error: the last iterate is returned and :code:`self.converged` is False.

        The dual ascent, the projection and the divergence are fused into two
        sweeps over the window offsets that update the dual variable in place,
        one horizontal band of pixels at a time.

        :param f: :py:class:`Field` to filter
        :param component: component number written to the recorder
        :returns: :py:class:`Field`
        """
        _check(f, self.graph)

        sw     = self.graph.sqrtWeights()
        slices = self.graph.edgeSlices()
        rows   = max(1, _BAND_PIXELS // self.graph.width)
        bands  = self.graph.bandSlices(rows)
        lam    = self.lam
        tau    = self.tau
        sigma  = self.sigma
        theta  = self.params.theta

        fd   = f.data
        u    = np.array(fd)
        ubar = np.array(fd)
        q    = np.zeros(self.graph.weights.shape)
        acc  = np.empty(fd.shape)
        div  = np.empty(fd.shape)
        buf  = np.empty((min(rows, fd.shape[0]), fd.shape[1]))

        self.converged  = False
        self.iterations = 0

        if self.record:
            self._record(component, 0, _energy_array(u, fd, sw, slices, lam), 0.0)

        for n in range(1, self.params.max_iters + 1):
            # q <- q + sigma * grad(ubar), accumulating |q_i|^2
            sb = sigma * ubar
            acc.fill(0.0)
            for band in bands:
                for k, dst, src in band:
                    b = buf[:dst[0].stop - dst[0].start, :dst[1].stop - dst[1].start]
                    np.subtract(sb[src], sb[dst], out=b)
                    b *= sw[k][dst]
                    qk = q[k][dst]
                    qk += b
                    np.multiply(qk, qk, out=b)
                    acc[dst] += b

            if lam == 0.0:
                scale = np.zeros(fd.shape)
            else:
                scale = lam / np.maximum(lam, np.sqrt(acc, out=acc))

            # project q onto the lambda ball and take its divergence
            div.fill(0.0)
            for band in bands:
                for k, dst, src in band:
                    b = buf[:dst[0].stop - dst[0].start, :dst[1].stop - dst[1].start]
                    qk = q[k][dst]
                    qk *= scale[dst]
                    np.multiply(sw[k][dst], qk, out=b)
                    div[dst] += b
                    div[src] -= b

            u_new = prox_data_array(u + tau * div, fd, tau)
            ubar  = u_new + theta * (u_new - u)

            change = self.relativeChange(u_new, u)
            u = u_new
            self.iterations = n

            if self.record:
                self._record(component, n, _energy_array(u, fd, sw, slices, lam), change)

            if change < self.TOL:
                self.converged = True
                break

        if self.converged:
            logger.info("component %d: converged after %d iterations", component, self.iterations)
        else:
            logger.warning("component %d: no convergence within %d iterations (rel_tol=%g)",
                           component, self.iterations, self.TOL)

        return Field(u)

    def _record(self, component, n, value, change):
        self.recorder.addData({'component': component,
                               'iteration': n,
                               'energy': value,
                               'primal_change': change})


def filter_component(f_c, graph, params=SolverParams(), lam=None, recorder=None, component=0):
    """
    Nonlocal TV filtering of one chromatic component conditioned on the PAN
    weights (see :py:class:`PrimalDualSolver`).

    :param f_c: :py:class:`Field`
    :param graph: :py:class:`WeightGraph`
    :param params: :py:class:`SolverParams`
    :param lam: optional override of :code:`params.lam`
    :param recorder: optional :py:class:`Recorder` receiving the energy trace
    :param component: component number used in the trace
    :returns: :py:class:`Field` :math:`\\tilde f_{C_m}`
    """
    if tuple(f_c.shape2d) != tuple(graph.shape2d):
        raise DimensionError(f"component grid {f_c.shape2d} does not match weight graph {graph.shape2d}")
    solver = PrimalDualSolver(graph, params, lam=lam)
    if recorder is not None:
        solver.setRecorder(recorder)
    return solver.solve(f_c, component=component)
