__all__ = (
    'PcaBasis',
    'fit_pca',
    'forward_pca',
    'inverse_pca',
)

from .PcaBasis import PcaBasis, fit_pca, forward_pca, inverse_pca
