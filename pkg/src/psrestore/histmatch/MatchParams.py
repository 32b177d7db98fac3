from dataclasses import dataclass

from ..utilities.Errors import InvariantError


@dataclass(frozen=True)
class MatchParams:
    """
    Sliding-patch histogram matching parameters.

    Attributes:
        window: odd side length of the sliding patch in pixels
        stride: distance between consecutive patch origins in pixels
        use_global: match with whole-image statistics instead of sliding patches
    """
    window: int = 15
    stride: int = 1
    use_global: bool = False

    def __post_init__(self):
        if int(self.window) != self.window or self.window < 1 or self.window % 2 == 0:
            raise InvariantError(f"window must be an odd integer >= 1, got {self.window}")
        if int(self.stride) != self.stride or self.stride < 1:
            raise InvariantError(f"stride must be an integer >= 1, got {self.stride}")
