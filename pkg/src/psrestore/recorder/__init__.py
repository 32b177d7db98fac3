__all__ = (
    "Record",
    "Recorder",
    "export_frame",
    "merge_recorders",
)

from .Record import Record
from .Recorder import Recorder, export_frame, merge_recorders
