__all__ = (
    'MetricReport',
    'compare_reports',
    'rmse',
    'ergas',
    'sam',
    'uiqi',
    'q2n',
    'qnr',
    'd_lambda',
    'd_s',
    'evaluate_full_reference',
    'evaluate_no_reference',
)

from .MetricReport import MetricReport, compare_reports
from .FullReference import rmse, ergas, sam
from .QualityIndex import uiqi, q2n
from .NoReference import qnr, d_lambda, d_s
from .Evaluation import evaluate_full_reference, evaluate_no_reference
