import json
import pandas as pd


class MetricReport():
    """
    Named quality values of one image together with the settings they were
    computed with.

    :param values: metric name and value pairs, in report order
    :param parameters: settings such as ratio, block size and exponents
    :param label: column header used in tables
    """

    def __init__(self, values, parameters=None, label='value'):
        self.values     = {name: float(v) for name, v in values.items()}
        self.parameters = dict(parameters or {})
        self.label      = label

    def __repr__(self):
        return "MetricReport({})".format(self.values)

    def __getitem__(self, name):
        return self.values[name]

    def __contains__(self, name):
        return name in self.values

    def keys(self):
        return list(self.values.keys())

    def toDataFrame(self):
        return pd.DataFrame({self.label: pd.Series(self.values)})

    def table(self):
        """
        :returns: aligned, human readable table
        """
        return self.toDataFrame().to_string(float_format=lambda v: f"{v:.6f}")

    def lines(self):
        """
        :returns: one :code:`name=value` line per metric
        """
        return "\n".join(f"{name}={value:.10g}" for name, value in self.values.items())

    def toDict(self):
        return {'metrics': dict(self.values), 'parameters': dict(self.parameters)}

    def toJson(self):
        return json.dumps(self.toDict(), indent=2, sort_keys=False)


def compare_reports(reports):
    """
    Side-by-side table of several reports.

    :param reports: mapping column label -> :py:class:`MetricReport`
    :returns: :py:class:`pandas.DataFrame` with one row per metric
    """
    return pd.DataFrame({label: pd.Series(report.values) for label, report in reports.items()})
