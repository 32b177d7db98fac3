from dataclasses import dataclass
from typing import Optional

from ..utilities.Errors import InvariantError

# fraction of the PAN dynamic range used when h_sim is not given
H_SIM_RANGE_FRACTION = 0.04


@dataclass(frozen=True)
class WeightParams:
    """
    Parameters of the nonlocal weights.

    Attributes:
        nu_r: search window radius; the window is (2*nu_r+1)^2 pixels
        patch_radius: radius of the compared PAN patches (1 -> 3x3)
        h_spt: spatial decay in pixels
        h_sim: similarity decay in PAN intensity units; **None** selects
            0.04 x (max(P) - min(P)) when the weights are computed
    """
    nu_r: int = 7
    patch_radius: int = 1
    h_spt: float = 2.5
    h_sim: Optional[float] = None

    def __post_init__(self):
        if int(self.nu_r) != self.nu_r or self.nu_r < 1:
            raise InvariantError(f"nu_r must be an integer >= 1, got {self.nu_r}")
        if int(self.patch_radius) != self.patch_radius or self.patch_radius < 0:
            raise InvariantError(f"patch_radius must be an integer >= 0, got {self.patch_radius}")
        if not self.h_spt > 0.0:
            raise InvariantError(f"h_spt must be positive, got {self.h_spt}")
        if self.h_sim is not None and not self.h_sim > 0.0:
            raise InvariantError(f"h_sim must be positive, got {self.h_sim}")

    @property
    def window(self):
        """side length of the search window"""
        return 2 * self.nu_r + 1

    @property
    def patch_size(self):
        """side length of the compared patches"""
        return 2 * self.patch_radius + 1

    def resolveHsim(self, pan):
        """
        :returns: h_sim, falling back to the PAN-range default
        """
        if self.h_sim is not None:
            return float(self.h_sim)
        h_sim = H_SIM_RANGE_FRACTION * pan.dynamicRange()
        if h_sim <= 0.0:
            # constant PAN: similarity term vanishes anyway
            h_sim = 1.0
        return h_sim
