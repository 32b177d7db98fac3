__all__ = (
    'Field',
    'DualField',
    'SolverParams',
    'Solver',
    'PrimalDualSolver',
    'nonlocal_gradient',
    'nonlocal_divergence',
    'estimate_operator_norm',
    'prox_data',
    'prox_dual',
    'energy',
    'filter_component',
)

from .Field import Field, DualField
from .SolverParams import SolverParams
from .Solver import Solver
from .NonlocalOperator import nonlocal_gradient, nonlocal_divergence, estimate_operator_norm
from .PrimalDualSolver import PrimalDualSolver, prox_data, prox_dual, energy, filter_component
