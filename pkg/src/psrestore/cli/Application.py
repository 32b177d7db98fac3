"""
Command line front end.

Exit status: 0 success, 1 usage error, 2 violated invariant, 3 I/O or file
format problem. Failures print a single line ``error: <category>: <message>``
to stderr.
"""
import argparse
import json
import logging
import os
import sys

from .RunConfig import RunConfig, parse_int_list
from .. import __version__
from ..raster.RasterIO import load_image, save_image, load_pan, save_pan, export_pgm, export_ppm
from ..raster.PanImage import PanImage
from ..recorder.Recorder import export_frame
from ..pca.PcaBasis import fit_pca, forward_pca
from ..weights.WeightGraph import compute_weights
from ..pipeline.Restoration import Restoration
from ..pipeline.Simulation import simulate_dataset
from ..pipeline.Baseline import baseline_pansharpen
from ..pipeline.SyntheticScene import make_scene
from ..pipeline.Tuner import Tuner, load_grid
from ..pipeline.Experiment import Experiment
from ..metrics.Evaluation import evaluate_full_reference, evaluate_no_reference
from ..plotter.ImagePlotter import ImagePlotter
from ..utilities.Errors import InvariantError, RestoreError, UsageError

logger = logging.getLogger(__name__)

EXIT_OK        = 0
EXIT_USAGE     = 1
EXIT_INVARIANT = 2
EXIT_IO        = 3


class _Parser(argparse.ArgumentParser):
    # report misuse through the exit code table instead of argparse's exit(2)
    def error(self, message):
        raise UsageError(message)


def _add_common(parser):
    parser.add_argument('--threads', type=int, default=None,
                        help="thread budget (default: $PSRESTORE_THREADS or 1)")
    parser.add_argument('--verbose', '-v', action='store_true', help="debug logging")
    parser.add_argument('--quiet', '-q', action='store_true', help="errors only")


def _add_restore_flags(parser):
    group = parser.add_argument_group('restoration parameters')
    group.add_argument('--lambda', dest='lam', type=float, default=0.5,
                       help="TV weight of the chromatic filter (8-bit component units)")
    group.add_argument('--lambda-per-component', default=None, metavar='L1,L2,..',
                       help="one lambda per chromatic component")
    group.add_argument('--h-sim', type=float, default=None,
                       help="similarity decay; default 0.04 x PAN range")
    group.add_argument('--h-spt', type=float, default=2.5, help="spatial decay in pixels")
    group.add_argument('--nu-r', type=int, default=7, help="search window radius (15x15 window)")
    group.add_argument('--patch-size', type=int, default=3, help="side of the compared PAN patches")
    group.add_argument('--max-iters', type=int, default=300, help="primal-dual iteration cap")
    group.add_argument('--rel-tol', type=float, default=1e-5, help="relative primal change stopping tolerance")
    group.add_argument('--tau', type=float, default=None, help="primal step; default 0.99/L")
    group.add_argument('--sigma', type=float, default=None, help="dual step; default 0.99/L")
    group.add_argument('--theta', type=float, default=1.0, help="extrapolation parameter in [0, 1]")
    group.add_argument('--hist-window', type=int, default=15, help="local histogram matching window")
    group.add_argument('--hist-stride', type=int, default=1, help="local histogram matching stride")
    group.add_argument('--hist-global', action='store_true', help="match PAN with global statistics")


def _add_metric_flags(parser):
    parser.add_argument('--ratio', type=int, default=4, help="PAN/MS resolution ratio")
    parser.add_argument('--block', type=int, default=32, help="UIQI/Q4 block size")
    parser.add_argument('--json', action='store_true', help="JSON output")


def build_parser():
    """
    :returns: the :py:class:`argparse.ArgumentParser` of the ``psrestore`` command
    """
    fmt = argparse.ArgumentDefaultsHelpFormatter
    parser = _Parser(prog='psrestore', formatter_class=fmt,
                     description="Restoration of pansharpened multispectral images")
    parser.add_argument('--version', action='version', version=f"psrestore {__version__}")
    sub = parser.add_subparsers(dest='command', parser_class=_Parser)
    sub.required = True

    p = sub.add_parser('simulate', formatter_class=fmt, help="reduced-resolution dataset")
    src = p.add_mutually_exclusive_group(required=True)
    src.add_argument('--input', help="original high resolution MBR image")
    src.add_argument('--synthetic', type=int, metavar='SIZE', help="generate a synthetic SIZE x SIZE scene")
    p.add_argument('--seed', type=int, default=0, help="synthetic scene seed")
    p.add_argument('--bands', type=int, default=4, help="synthetic scene band count")
    p.add_argument('--spec', help="JSON file with SimulationSpec fields (0.1/0.4/0.25/0.25, 3, 0.15, 4, 0.35)")
    p.add_argument('--out-dir', required=True, help="receives reference.mbr, pan.mbr, ms.mbr")
    _add_common(p)

    p = sub.add_parser('pansharpen', formatter_class=fmt, help="PCA substitution baseline")
    p.add_argument('--ms', required=True)
    p.add_argument('--pan', required=True)
    p.add_argument('--factor', type=int, default=4)
    p.add_argument('--out', required=True)
    _add_common(p)

    p = sub.add_parser('restore', formatter_class=fmt, help="restore a pansharpened image")
    p.add_argument('--fused', required=True)
    p.add_argument('--pan', required=True)
    p.add_argument('--out', required=True)
    p.add_argument('--trace-energy', metavar='FILE', help="energy trace (.csv, .txt or .json)")
    _add_restore_flags(p)
    _add_common(p)

    p = sub.add_parser('metrics', formatter_class=fmt, help="quality indices")
    kinds = p.add_subparsers(dest='kind', parser_class=_Parser)
    kinds.required = True
    q = kinds.add_parser('full', formatter_class=fmt, help="RMSE, ERGAS, SAM, Q4")
    q.add_argument('--ref', required=True)
    q.add_argument('--test', required=True)
    _add_metric_flags(q)
    _add_common(q)
    q = kinds.add_parser('qnr', formatter_class=fmt, help="D_lambda, D_s, QNR")
    q.add_argument('--fused', required=True)
    q.add_argument('--ms', required=True)
    q.add_argument('--pan', required=True)
    q.add_argument('--ms-mtf', type=float, default=None,
                   help="MS sensor MTF gain at Nyquist; D_s then degrades the PAN like the MS bands "
                        "instead of with the PAN MTF 0.15")
    _add_metric_flags(q)
    _add_common(q)

    p = sub.add_parser('pca-dump', formatter_class=fmt, help="write principal components")
    p.add_argument('--input', required=True)
    p.add_argument('--out-dir', required=True)
    _add_common(p)

    p = sub.add_parser('weights-dump', formatter_class=fmt, help="print one row of the weight graph")
    p.add_argument('--pan', required=True)
    p.add_argument('--pixel', required=True, metavar='X,Y')
    _add_restore_flags(p)
    _add_common(p)

    p = sub.add_parser('tune', formatter_class=fmt, help="grid search of h_sim and lambda by RMSE")
    p.add_argument('--fused', required=True)
    p.add_argument('--pan', required=True)
    p.add_argument('--reference', required=True)
    p.add_argument('--grid', required=True, help='JSON {"h_sim": [...], "lambda": [...]}')
    p.add_argument('--json', action='store_true')
    _add_restore_flags(p)
    _add_common(p)

    p = sub.add_parser('experiment', formatter_class=fmt, help="simulate, fuse, restore and compare")
    src = p.add_mutually_exclusive_group(required=True)
    src.add_argument('--input', help="original high resolution MBR image")
    src.add_argument('--synthetic', type=int, metavar='SIZE')
    p.add_argument('--seed', type=int, default=0)
    p.add_argument('--bands', type=int, default=4)
    p.add_argument('--spec')
    p.add_argument('--block', type=int, default=32)
    p.add_argument('--out-dir', help="also write the simulated, fused and restored images")
    p.add_argument('--json', action='store_true')
    _add_restore_flags(p)
    _add_common(p)

    p = sub.add_parser('quicklook', formatter_class=fmt, help="PNG, PPM or PGM preview")
    p.add_argument('--input', required=True)
    p.add_argument('--out', required=True, help="suffix .png, .ppm or .pgm")
    p.add_argument('--rgb', default='2,1,0', help="bands shown as red, green, blue")
    p.add_argument('--gamma', type=float, default=0.75)
    _add_common(p)

    return parser


class Application():
    """
    Dispatches one parsed command line to the library.
    """

    def __init__(self, out=None):
        self.out = out if out is not None else sys.stdout
        self.parser = build_parser()

    def emit(self, text=''):
        print(text, file=self.out)

    def run(self, argv=None):
        """
        :param argv: argument list without the program name
        :returns: exit status
        """
        try:
            ns = self.parser.parse_args(argv)
            config = RunConfig.fromNamespace(ns)
            logging.basicConfig(level=config.log_level, force=True,
                                format="%(levelname)s %(name)s: %(message)s")
            config.checkInputs()
            handler = getattr(self, 'do_' + config.command.replace('-', '_'))
            handler(config)
        except SystemExit as exc:
            # --help and --version
            return exc.code if isinstance(exc.code, int) else EXIT_OK
        except UsageError as exc:
            return self._fail(exc, EXIT_USAGE)
        except (OSError, json.JSONDecodeError) as exc:
            return self._fail(exc, EXIT_IO)
        except InvariantError as exc:
            return self._fail(exc, EXIT_INVARIANT)
        return EXIT_OK

    def _fail(self, exc, status):
        if isinstance(exc, RestoreError):
            category = exc.category
        elif isinstance(exc, json.JSONDecodeError):
            category = "format"
        else:
            category = "io"
        message = str(exc).replace('\n', ' ')
        print(f"error: {category}: {message}", file=sys.stderr)
        return status

    def _source(self, config):
        if 'input' in config.inputs:
            return load_image(config.inputs['input'])
        return make_scene(config.options['synthetic'],
                          bands=config.options.get('bands', 4),
                          seed=config.options.get('seed', 0))

    def _report(self, config, report):
        if config.as_json:
            self.emit(report.toJson())
        else:
            self.emit(report.table())
            self.emit()
            self.emit(report.lines())

    def do_simulate(self, config):
        highres = self._source(config)
        reference, pan, ms = simulate_dataset(highres, config.spec)
        out_dir = config.outputs['out_dir']
        os.makedirs(out_dir, exist_ok=True)
        save_image(reference, os.path.join(out_dir, 'reference.mbr'))
        save_pan(pan, os.path.join(out_dir, 'pan.mbr'))
        save_image(ms, os.path.join(out_dir, 'ms.mbr'))
        if 'input' not in config.inputs:
            save_image(highres, os.path.join(out_dir, 'highres.mbr'))

    def do_pansharpen(self, config):
        ms = load_image(config.inputs['ms'])
        pan = load_pan(config.inputs['pan'])
        fused = baseline_pansharpen(ms, pan, config.options.get('factor', 4))
        save_image(fused, config.outputs['out'])

    def do_restore(self, config):
        fused = load_image(config.inputs['fused'])
        pan = load_pan(config.inputs['pan'])

        restoration = Restoration(config.restore, threads=config.threads)
        if 'trace_energy' in config.outputs:
            restoration.startRecorder()
        restored = restoration.run(fused, pan)
        save_image(restored, config.outputs['out'])

        if 'trace_energy' in config.outputs:
            trace = restoration.fetchTrace()
            export_frame(trace, config.outputs['trace_energy'])

    def do_metrics_full(self, config):
        ref = load_image(config.inputs['ref'])
        test = load_image(config.inputs['test'])
        self._report(config, evaluate_full_reference(ref, test, config.ratio, config.block))

    def do_metrics_qnr(self, config):
        fused = load_image(config.inputs['fused'])
        ms = load_image(config.inputs['ms'])
        pan = load_pan(config.inputs['pan'])
        self._report(config, evaluate_no_reference(fused, ms, pan, config.ratio, config.block,
                                                   ms_mtf=config.options.get('ms_mtf')))

    def do_pca_dump(self, config):
        img = load_image(config.inputs['input'])
        basis = fit_pca(img)
        components = forward_pca(img, basis)
        out_dir = config.outputs['out_dir']
        os.makedirs(out_dir, exist_ok=True)
        for k in range(components.bands):
            pc = PanImage(components.band(k))
            stem = os.path.join(out_dir, f"pc{k + 1}")
            save_pan(pc, stem + '.mbr')
            export_pgm(pc, stem + '.pgm', gamma=0.75 if k == 0 else 1.0)

        for k, (variance, share) in enumerate(zip(basis.variances, basis.explainedVariance()), start=1):
            self.emit(f"PC{k} variance={variance:.10g} explained={share:.6f}")

    def do_weights_dump(self, config):
        pan = load_pan(config.inputs['pan'])
        x, y = parse_int_list(config.options['pixel'], "--pixel", count=2)
        if not (0 <= x < pan.width and 0 <= y < pan.height):
            raise InvariantError(f"pixel ({x}, {y}) outside the {pan.width}x{pan.height} PAN")
        graph = compute_weights(pan, config.restore.weights)
        row = graph.row(x, y)
        self.emit(f"# weights of pixel x={x} y={y}, window {row.shape[1]}x{row.shape[0]}, sum={row.sum():.12g}")
        for line in row:
            self.emit(" ".join(f"{w:.6e}" for w in line))

    def do_tune(self, config):
        fused = load_image(config.inputs['fused'])
        pan = load_pan(config.inputs['pan'])
        reference = load_image(config.inputs['reference'])
        h_sims, lambdas = load_grid(config.inputs['grid'])

        tuner = Tuner(config.restore, threads=config.threads)
        table = tuner.run(fused, pan, reference, h_sims, lambdas)
        best = tuner.best()
        if config.as_json:
            self.emit(json.dumps({'best': best, 'grid': table.to_dict(orient='records')}, indent=2))
        else:
            self.emit(table.to_string(index=False))
            self.emit()
            self.emit("\n".join(f"{key}={value:.10g}" for key, value in best.items()))

    def do_experiment(self, config):
        highres = self._source(config)
        experiment = Experiment(config.spec, config.restore, threads=config.threads, block=config.block)
        table = experiment.run(highres)

        if 'out_dir' in config.outputs:
            out_dir = config.outputs['out_dir']
            os.makedirs(out_dir, exist_ok=True)
            save_image(experiment.reference, os.path.join(out_dir, 'reference.mbr'))
            save_pan(experiment.pan, os.path.join(out_dir, 'pan.mbr'))
            save_image(experiment.ms, os.path.join(out_dir, 'ms.mbr'))
            save_image(experiment.fused, os.path.join(out_dir, 'fused.mbr'))
            save_image(experiment.restored, os.path.join(out_dir, 'restored.mbr'))

        if config.as_json:
            self.emit(json.dumps({label: report.toDict() for label, report in experiment.reports.items()}, indent=2))
        else:
            self.emit(table.to_string(float_format=lambda v: f"{v:.6f}"))

    def do_quicklook(self, config):
        img = load_image(config.inputs['input'])
        out = config.outputs['out']
        gamma = config.options.get('gamma', 0.75)
        rgb = parse_int_list(config.options.get('rgb', '2,1,0'), "--rgb", count=3)
        suffix = os.path.splitext(out)[1].lower()

        if suffix == '.ppm':
            export_ppm(img, out, rgb=rgb, gamma=gamma)
        elif suffix == '.pgm':
            export_pgm(PanImage(img.band(rgb[0])), out, gamma=gamma)
        else:
            plotter = ImagePlotter()
            plotter.setGamma(gamma)
            plotter.setImage(img)
            plotter.quicklook(rgb=rgb, filename=out)


def run(argv=None):
    """
    Console entry point.

    :returns: exit status (0 ok, 1 usage, 2 invariant, 3 I/O)
    """
    return Application().run(argv)
