import logging
import numpy as np
import pandas as pd

from .Record import Record

logger = logging.getLogger(__name__)


class Recorder():
    """
    Iteration history recorder for the primal-dual solver.

    :param variables: names of the recorded quantities
    :param label: prefix used for record labels (e.g. the component name)
    """

    solver_types = (
        'component',
        'iteration',
        'energy',
        'primal_change',
    )

    def __init__(self, variables=solver_types, label=''):
        self.active = False
        self.label  = label
        self.data   = {}
        for var in variables:
            self.data[var] = Record(key=var, label=f"{label}:{var}" if label else var)

    def __len__(self):
        return max((len(rec) for rec in self.data.values()), default=0)

    def addData(self, dta):
        """
        Append one row.

        :param dta: variable code as key and scalar value pairs.
        :type dta: dict
        """
        if not self.active:
            return

        for var in self.data:
            if var in dta:
                self.data[var].append(dta[var])
            else:
                self.data[var].append()
                logger.debug("Recorder.addData: '%s' missing from row, padded with nan", var)

        for var in dta:
            if var not in self.data:
                logger.debug("Recorder.addData: '%s' not initialized by the recorder: ignored", var)

    def fetchRecord(self, keys=None):
        """
        :param keys: a single key returns one array, a list of keys a dict of arrays,
            **None** returns the full dict of :py:class:`Record` objects
        """
        if keys is None:
            return self.data
        if isinstance(keys, str):
            return self.data[keys].asArray() if keys in self.data else np.array([])
        return {key: self.data[key].asArray() for key in keys if key in self.data}

    def getVariables(self):
        return list(self.data.keys())

    def enable(self):
        """
        Enables the recorder. Data collection may be suspended with :py:meth:`disable`.
        """
        self.active = True

    def disable(self):
        self.active = False

    def isActive(self):
        return self.active

    def reset(self):
        """
        Reset to a *disabled* state and wipe all collected data.
        """
        self.active = False
        for var in self.data:
            self.data[var].clear()

    def toDataFrame(self):
        return pd.DataFrame({var: rec.toSeries() for var, rec in self.data.items()})

    def export(self, filename='trace.csv'):
        """
        :param filename: full path to file where recorded data shall be written to.
            The file type will be determined from the given extension.

            .. list-table::

                * - .txt
                  - tab-separated text file
                * - .csv
                  - comma-separated text file
                * - .json, .jsn
                  - JSON records
        """
        export_frame(self.toDataFrame(), filename)


def export_frame(df, filename):
    """
    Write a recorded history (see :py:meth:`Recorder.toDataFrame`) by file extension.
    """
    parts = str(filename).rsplit('.', 1)
    suffix = parts[-1].lower() if len(parts) > 1 else 'txt'

    if suffix in ('csv',):
        df.to_csv(filename, sep=',', index=False)
    elif suffix in ('jsn', 'json'):
        df.to_json(filename, orient='records')
    else:
        df.to_csv(filename, sep='\t', index=False)


def merge_recorders(recorders):
    """
    Concatenate several recorders (one per chromatic component) in the given order.

    :returns: :py:class:`pandas.DataFrame`
    """
    frames = [rec.toDataFrame() for rec in recorders if rec is not None and len(rec)]
    if not frames:
        return pd.DataFrame(columns=list(Recorder.solver_types))
    return pd.concat(frames, ignore_index=True)
