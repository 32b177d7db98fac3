__all__ = (
    'MatchParams',
    'match_global',
    'match_local',
)

from .MatchParams import MatchParams
from .HistogramMatch import match_global, match_local
