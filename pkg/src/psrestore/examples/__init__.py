__all__ = [
    "Example",
]

from .Example import *
