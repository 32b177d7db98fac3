from dataclasses import dataclass, field

from ..weights.WeightParams import WeightParams
from ..solver.SolverParams import SolverParams
from ..histmatch.MatchParams import MatchParams


@dataclass(frozen=True)
class RestoreParams:
    """
    All parameters of the restoration chain.

    Attributes:
        weights: :py:class:`WeightParams` of the nonlocal weights computed on PAN
        solver: :py:class:`SolverParams` of the chromatic filter
        match: :py:class:`MatchParams` of the structural component replacement
        normalize: filter chromatic components in 8-bit units, i.e. after
            scaling by 255 / (max - min) of the fused image
    """
    weights: WeightParams = field(default_factory=WeightParams)
    solver: SolverParams = field(default_factory=SolverParams)
    match: MatchParams = field(default_factory=MatchParams)
    normalize: bool = True

    def componentScale(self, fused):
        """
        :returns: factor applied to the chromatic components before filtering
        """
        if not self.normalize:
            return 1.0
        spread = float(fused.data.max() - fused.data.min())
        return 255.0 / spread if spread > 0.0 else 1.0
