import logging
import numpy as np

from .WeightParams import WeightParams
from ..utilities.Errors import InvariantError

logger = logging.getLogger(__name__)


def window_offsets(nu_r):
    """
    Offsets (dy, dx) of a (2*nu_r+1)^2 search window in row-major order.

    The position of an offset in this list is its index k in every
    per-pixel weight or dual array.
    """
    return [(dy, dx) for dy in range(-nu_r, nu_r + 1) for dx in range(-nu_r, nu_r + 1)]


def overlap(height, width, dy, dx):
    """
    :returns: (dst, src) slice pairs: :code:`a[src]` holds the neighbors at
              (dy, dx) of the pixels :code:`a[dst]`; **None** if no pixel has
              an in-grid neighbor at that offset
    """
    y0, y1 = max(0, -dy), min(height, height - dy)
    x0, x1 = max(0, -dx), min(width, width - dx)
    if y1 <= y0 or x1 <= x0:
        return None
    dst = (slice(y0, y1), slice(x0, x1))
    src = (slice(y0 + dy, y1 + dy), slice(x0 + dx, x1 + dx))
    return dst, src


def offset_slices(height, width, offsets):
    """
    :returns: list of (k, dst, src) for every offset with a nonempty overlap
    """
    slices = []
    for k, (dy, dx) in enumerate(offsets):
        pair = overlap(height, width, dy, dx)
        if pair is not None:
            slices.append((k, pair[0], pair[1]))
    return slices


def domain_mask(height, width, nu_r):
    """
    :returns: boolean array of shape (K, height, width), True where the k-th
              neighbor of a pixel lies inside the grid
    """
    offsets = window_offsets(nu_r)
    mask = np.zeros((len(offsets), height, width), dtype=bool)
    for k, dst, src in offset_slices(height, width, offsets):
        mask[k][dst] = True
    return mask


class WeightGraph():
    """
    Sparse nonlocal weights :math:`\\omega_{i,j}` stored densely per pixel over
    the (2*nu_r+1)^2 search window.

    :code:`weights[k, y, x]` is the weight between pixel (x, y) and its
    neighbor (x+dx, y+dy) where (dy, dx) is the k-th entry of
    :py:func:`window_offsets`. Neighbors outside the image must carry zero
    weight; a graph violating this is rejected.

    :param weights: array of shape (K, height, width)
    :param nu_r: window radius
    """

    def __init__(self, weights, nu_r):
        weights = np.asarray(weights, dtype=np.float64)
        K = (2 * nu_r + 1)**2
        if weights.ndim != 3 or weights.shape[0] != K:
            raise InvariantError(f"weight array of shape {weights.shape} does not match nu_r={nu_r}")
        if np.any(weights < 0.0) or not np.all(np.isfinite(weights)):
            raise InvariantError("weights must be finite and nonnegative")
        H, W = weights.shape[1:]
        outside = ~domain_mask(H, W, nu_r)
        if np.any(weights[outside] != 0.0):
            raise InvariantError("nonzero weight on a neighbor outside the image")

        weights.setflags(write=False)
        self.weights = weights
        self.nu_r    = nu_r
        self.offsets = window_offsets(nu_r)
        self.center  = K // 2
        self.slices  = offset_slices(H, W, self.offsets)
        self._sqrt   = None
        self._bands  = {}

    def __repr__(self):
        return "WeightGraph({}x{}, nu_r={})".format(self.width, self.height, self.nu_r)

    @property
    def width(self):
        return self.weights.shape[2]

    @property
    def height(self):
        return self.weights.shape[1]

    @property
    def shape2d(self):
        return self.weights.shape[1:]

    @property
    def nneighbors(self):
        return self.weights.shape[0]

    def edgeSlices(self):
        """
        :returns: the (k, dst, src) entries of :code:`slices` without the self offset,
                  whose gradient component is identically zero
        """
        return [s for s in self.slices if s[0] != self.center]

    def bandSlices(self, rows):
        """
        :py:meth:`edgeSlices` split into horizontal bands of at most **rows**
        pixel rows (by the rows of the destination pixels).

        :returns: list with one (k, dst, src) list per band
        """
        if rows not in self._bands:
            edges = self.edgeSlices()
            bands = []
            for r0 in range(0, self.height, rows):
                r1 = min(self.height, r0 + rows)
                band = []
                for k, dst, src in edges:
                    y0, y1 = max(dst[0].start, r0), min(dst[0].stop, r1)
                    if y1 <= y0:
                        continue
                    dy = src[0].start - dst[0].start
                    band.append((k, (slice(y0, y1), dst[1]), (slice(y0 + dy, y1 + dy), src[1])))
                bands.append(band)
            self._bands[rows] = bands
        return self._bands[rows]

    def sqrtWeights(self):
        """
        :returns: cached :math:`\\sqrt{\\omega}` array of shape (K, H, W)
        """
        if self._sqrt is None:
            s = np.sqrt(self.weights)
            s.setflags(write=False)
            self._sqrt = s
        return self._sqrt

    def rowSums(self):
        """
        :returns: (H, W) array of :math:`\\sum_j \\omega_{i,j}`
        """
        return self.weights.sum(axis=0)

    def columnSums(self):
        """
        :returns: (H, W) array of :math:`\\sum_i \\omega_{i,j}`
        """
        cols = np.zeros(self.shape2d)
        for k, dst, src in self.slices:
            cols[src] += self.weights[k][dst]
        return cols

    def row(self, x, y):
        """
        Weights of pixel (x, y) arranged as a (2*nu_r+1) x (2*nu_r+1) window.
        """
        if not (0 <= x < self.width and 0 <= y < self.height):
            raise InvariantError(f"pixel ({x},{y}) outside the {self.width}x{self.height} grid")
        n = 2 * self.nu_r + 1
        return self.weights[:, y, x].reshape(n, n)

    def dense(self):
        """
        Explicit N x N weight matrix (row i, column j). Meant for small grids only.
        """
        H, W = self.shape2d
        N = H * W
        mat = np.zeros((N, N))
        for k, (dy, dx) in enumerate(self.offsets):
            for y in range(H):
                for x in range(W):
                    w = self.weights[k, y, x]
                    if w != 0.0:
                        mat[y * W + x, (y + dy) * W + (x + dx)] = w
        return mat


def _check_pan(pan, params):
    size = params.patch_size
    if pan.width < size or pan.height < size:
        msg = f"PAN of {pan.width}x{pan.height} is smaller than the {size}x{size} comparison patch"
        raise InvariantError(msg)


def patch_distance(pan, i, j, patch_radius=1):
    """
    Unnormalized sum of squared differences between the PAN patches centered
    at linear indices **i** and **j**. Samples outside the image are taken
    from the mirror (symmetric) extension.

    :param pan: :py:class:`PanImage`
    :param i: linear pixel index (0-based, row-major)
    :param j: linear pixel index
    :param patch_radius: patch radius (1 -> 3x3)
    :returns: nonnegative float
    """
    N = pan.npixels
    if not (0 <= i < N and 0 <= j < N):
        raise InvariantError(f"pixel index out of range [0, {N})")

    r = patch_radius
    Q = np.pad(pan.data, r, mode='symmetric')
    xi, yi = pan.pixelCoordinates(i)
    xj, yj = pan.pixelCoordinates(j)
    Pi = Q[yi:yi + 2 * r + 1, xi:xi + 2 * r + 1]
    Pj = Q[yj:yj + 2 * r + 1, xj:xj + 2 * r + 1]
    return float(np.sum((Pi - Pj)**2))


def compute_kernel(pan, params=WeightParams()):
    """
    Unnormalized nonlocal kernel

    .. math::

        k_{i,j} = \\exp\\left(-\\frac{\\|x_i-x_j\\|^2}{h_{spt}^2}
                             -\\frac{\\|P(p_i)-P(p_j)\\|^2}{h_{sim}^2}\\right)

    for every in-image neighbor j with :math:`\\|x_i-x_j\\|_\\infty \\le \\nu_r`.
    The kernel is symmetric in (i, j).

    :returns: array of shape (K, H, W)
    """
    _check_pan(pan, params)

    H, W = pan.shape2d
    r = params.patch_radius
    h_spt2 = params.h_spt**2
    h_sim2 = params.resolveHsim(pan)**2

    Q = np.pad(pan.data, r, mode='symmetric')
    offsets = window_offsets(params.nu_r)
    kernel = np.zeros((len(offsets), H, W))

    for k, (dy, dx) in enumerate(offsets):
        # pixels whose neighbor at (dy, dx) lies inside the image
        y0, y1 = max(0, -dy), min(H, H - dy)
        x0, x1 = max(0, -dx), min(W, W - dx)
        if y1 <= y0 or x1 <= x0:
            continue
        h = y1 - y0
        w = x1 - x0

        ssd = np.zeros((h, w))
        for ty in range(2 * r + 1):
            for tx in range(2 * r + 1):
                a = Q[y0 + ty:y0 + ty + h, x0 + tx:x0 + tx + w]
                b = Q[y0 + dy + ty:y0 + dy + ty + h, x0 + dx + tx:x0 + dx + tx + w]
                ssd += (a - b)**2

        kernel[k, y0:y1, x0:x1] = np.exp(-(dy * dy + dx * dx) / h_spt2 - ssd / h_sim2)

    return kernel


def compute_weights(pan, params=WeightParams()):
    """
    Row-normalized nonlocal weight graph computed on the PAN image.

    Each row is divided by :math:`\\Gamma_i`, the kernel sum over the search
    window clipped to the image, so every row sums to one including at the
    borders.

    :param pan: :py:class:`PanImage`
    :param params: :py:class:`WeightParams`
    :returns: :py:class:`WeightGraph`
    """
    kernel = compute_kernel(pan, params)
    gamma = kernel.sum(axis=0)
    kernel /= gamma[np.newaxis]
    logger.debug("weights: %dx%d, nu_r=%d, h_sim=%g", pan.width, pan.height,
                 params.nu_r, params.resolveHsim(pan))
    return WeightGraph(kernel, params.nu_r)
