__all__ = (
    'Application',
    'RunConfig',
    'build_parser',
    'run',
)

from .RunConfig import RunConfig
from .Application import Application, build_parser, run
