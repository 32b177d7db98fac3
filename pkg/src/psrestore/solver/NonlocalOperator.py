"""
The weighted nonlocal gradient and its negative adjoint.

.. math::

    (\\nabla_\\omega u)_{i,j} = \\sqrt{\\omega_{i,j}}\\,(u_j - u_i)

    (\\mathrm{div}_\\omega q)_i = \\sum_j \\sqrt{\\omega_{i,j}}\\, q_{i,j}
                                - \\sum_j \\sqrt{\\omega_{j,i}}\\, q_{j,i}

so that :math:`\\langle \\nabla_\\omega u, q\\rangle = -\\langle u, \\mathrm{div}_\\omega q\\rangle`.
The array kernels below work in place on plain numpy arrays and are used by
the solver loop; the public functions wrap them for :py:class:`Field` and
:py:class:`DualField`.
"""
import numpy as np

from .Field import Field, DualField
from ..utilities.Errors import DimensionError


def _check(field, graph):
    if tuple(field.shape2d) != tuple(graph.shape2d):
        msg = f"field grid {field.shape2d} does not match weight graph grid {graph.shape2d}"
        raise DimensionError(msg)


def gradient_accumulate(u, sw, slices, out):
    """
    :code:`out += grad(u)` on arrays; **out** has shape (K, H, W) and
    **slices** are the (k, dst, src) entries of :py:meth:`WeightGraph.edgeSlices`.
    """
    buf = np.empty(u.shape)
    for k, dst, src in slices:
        b = buf[:dst[0].stop - dst[0].start, :dst[1].stop - dst[1].start]
        np.subtract(u[src], u[dst], out=b)
        b *= sw[k][dst]
        out[k][dst] += b
    return out


def divergence_array(q, sw, slices):
    """
    :returns: (H, W) array :math:`\\mathrm{div}_\\omega q`
    """
    div = np.zeros(q.shape[1:])
    buf = np.empty(q.shape[1:])
    for k, dst, src in slices:
        p = buf[:dst[0].stop - dst[0].start, :dst[1].stop - dst[1].start]
        np.multiply(sw[k][dst], q[k][dst], out=p)
        div[dst] += p
        div[src] -= p
    return div


def gradient_norms(u, sw, slices):
    """
    :returns: (H, W) array of :math:`\\|(\\nabla_\\omega u)_i\\|`
    """
    acc = np.zeros(u.shape)
    buf = np.empty(u.shape)
    for k, dst, src in slices:
        g = buf[:dst[0].stop - dst[0].start, :dst[1].stop - dst[1].start]
        np.subtract(u[src], u[dst], out=g)
        g *= sw[k][dst]
        g *= g
        acc[dst] += g
    return np.sqrt(acc, out=acc)


def nonlocal_gradient(u, graph):
    """
    :param u: :py:class:`Field`
    :param graph: :py:class:`WeightGraph`
    :returns: :py:class:`DualField` :math:`\\nabla_\\omega u`
    """
    _check(u, graph)
    out = np.zeros(graph.weights.shape)
    gradient_accumulate(u.data, graph.sqrtWeights(), graph.edgeSlices(), out)
    return DualField(out, graph.nu_r)


def nonlocal_divergence(q, graph):
    """
    :param q: :py:class:`DualField`
    :param graph: :py:class:`WeightGraph`
    :returns: :py:class:`Field` :math:`\\mathrm{div}_\\omega q = -\\nabla_\\omega^* q`
    """
    q.checkGraph(graph)
    return Field(divergence_array(q.values, graph.sqrtWeights(), graph.edgeSlices()))


def estimate_operator_norm(graph):
    """
    Upper bound of :math:`\\|\\nabla_\\omega\\|`:

    .. math::

        L = \\sqrt{2\\,(\\max_i \\sum_j \\omega_{i,j} + \\max_j \\sum_i \\omega_{i,j})}

    which follows from :math:`(u_j-u_i)^2 \\le 2u_i^2 + 2u_j^2`.

    :returns: positive float
    """
    rows = graph.rowSums().max()
    cols = graph.columnSums().max()
    return float(np.sqrt(2.0 * (rows + cols)))
