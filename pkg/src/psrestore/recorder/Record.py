import numpy as np
import pandas as pd


class Record():
    """
    One column of a solver trace, e.g. the energy of every iteration.

    Values are stored as floats; a missing value is kept as ``nan`` so that
    all columns of a :py:class:`Recorder` stay aligned by iteration.
    """

    def __init__(self, key='', label=''):
        self.key    = key
        self.label  = label
        self.values = []

    def __str__(self):
        head = self.values[:3]
        return "{}::{}::{}".format(self.label, self.key, head)

    def __repr__(self):
        return "Record(label={}, key={}, n={})".format(self.label, self.key, len(self.values))

    def __len__(self):
        return len(self.values)

    def append(self, value=np.nan):
        self.values.append(float(value))

    def clear(self):
        self.values = []

    def last(self):
        """
        :return: the most recent value, ``nan`` for an empty column
        """
        return self.values[-1] if self.values else np.nan

    def asArray(self):
        return np.asarray(self.values, dtype=float)

    def toSeries(self):
        """
        :return: the column as a :py:class:`pandas.Series` indexed by row number
        """
        return pd.Series(self.values, name=self.key, dtype=float)
