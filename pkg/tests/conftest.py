import matplotlib
matplotlib.use('Agg')

import numpy as np
import pytest

from psrestore.raster import MultiBandImage, PanImage
from psrestore.pipeline import make_scene, simulate_dataset, SimulationSpec, baseline_pansharpen


@pytest.fixture
def rng():
    return np.random.default_rng(20240611)


@pytest.fixture
def random_image(rng):
    def build(width=16, height=16, bands=4):
        return MultiBandImage(rng.uniform(0.05, 1.0, size=(bands, height, width)))
    return build


@pytest.fixture
def random_pan(rng):
    def build(width=8, height=8):
        return PanImage(rng.uniform(0.0, 1.0, size=(height, width)))
    return build


@pytest.fixture(scope='module')
def small_dataset():
    """
    Synthetic scene at 288 x 288 simulated to a 96 x 96 reference/PAN and a
    24 x 24 MS image, plus the baseline fusion.
    """
    spec = SimulationSpec()
    highres = make_scene(288, bands=4, seed=3)
    reference, pan, ms = simulate_dataset(highres, spec)
    fused = baseline_pansharpen(ms, pan, spec.ms_factor)
    return {'highres': highres, 'reference': reference, 'pan': pan, 'ms': ms, 'fused': fused}
