__all__ = (
    'WeightParams',
    'WeightGraph',
    'window_offsets',
    'domain_mask',
    'overlap',
    'patch_distance',
    'compute_kernel',
    'compute_weights',
)

from .WeightParams import WeightParams
from .WeightGraph import (WeightGraph, window_offsets, domain_mask, overlap,
                          patch_distance, compute_kernel, compute_weights)
