__all__ = (
    'RestoreParams',
    'Restoration',
    'restore',
    'SimulationSpec',
    'mtf_downsample',
    'simulate_pan',
    'simulate_dataset',
    'upsample',
    'baseline_pansharpen',
    'make_scene',
    'Tuner',
    'load_grid',
    'Experiment',
)

from .RestoreParams import RestoreParams
from .Restoration import Restoration, restore
from .Simulation import SimulationSpec, mtf_downsample, simulate_pan, simulate_dataset, upsample
from .Baseline import baseline_pansharpen
from .SyntheticScene import make_scene
from .Tuner import Tuner, load_grid
from .Experiment import Experiment
