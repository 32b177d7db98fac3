import logging
import os
from dataclasses import dataclass, field
from typing import Dict

from ..weights.WeightParams import WeightParams
from ..solver.SolverParams import SolverParams
from ..histmatch.MatchParams import MatchParams
from ..pipeline.RestoreParams import RestoreParams
from ..pipeline.Simulation import SimulationSpec
from ..utilities.Errors import InvariantError, UsageError
from ..utilities.Parallel import default_threads

# namespace attributes holding input files
INPUT_KEYS = ('input', 'fused', 'pan', 'ms', 'ref', 'test', 'reference', 'spec', 'grid')

# namespace attributes holding output files or directories
OUTPUT_KEYS = ('out', 'out_dir', 'trace_energy')


def parse_float_list(text, what):
    try:
        return tuple(float(v) for v in text.split(','))
    except ValueError:
        raise UsageError(f"{what}: expected comma separated numbers, got {text!r}")


def parse_int_list(text, what, count=None):
    try:
        values = tuple(int(v) for v in text.split(','))
    except ValueError:
        raise UsageError(f"{what}: expected comma separated integers, got {text!r}")
    if count is not None and len(values) != count:
        raise UsageError(f"{what}: expected {count} values, got {len(values)}")
    return values


@dataclass
class RunConfig:
    """
    Everything one command line invocation needs, with the default settings.

    Attributes:
        command: subcommand name (``metrics full`` is stored as ``metrics-full``)
        inputs: input file paths by role
        outputs: output paths by role
        restore: :py:class:`RestoreParams` assembled from the flags
        spec: :py:class:`SimulationSpec`, read from ``--spec`` when given
        ratio: PAN/MS resolution ratio of the metrics
        block: UIQI/Q4 block size
        threads: thread budget, default from ``PSRESTORE_THREADS``
        log_level: level of the root logger
        as_json: emit JSON instead of the table and ``name=value`` lines
        options: remaining subcommand specific values
    """
    command: str
    inputs: Dict[str, str] = field(default_factory=dict)
    outputs: Dict[str, str] = field(default_factory=dict)
    restore: RestoreParams = field(default_factory=RestoreParams)
    spec: SimulationSpec = field(default_factory=SimulationSpec)
    ratio: int = 4
    block: int = 32
    threads: int = 1
    log_level: int = logging.WARNING
    as_json: bool = False
    options: Dict[str, object] = field(default_factory=dict)

    @classmethod
    def fromNamespace(cls, ns):
        """
        Build the configuration from parsed :py:mod:`argparse` arguments.
        """
        command = ns.command
        if command == 'metrics':
            command = 'metrics-' + ns.kind

        inputs = {key: getattr(ns, key) for key in INPUT_KEYS if getattr(ns, key, None)}
        outputs = {key: getattr(ns, key) for key in OUTPUT_KEYS if getattr(ns, key, None)}

        if ns.verbose:
            log_level = logging.DEBUG
        elif ns.quiet:
            log_level = logging.ERROR
        else:
            log_level = logging.WARNING

        threads = ns.threads if ns.threads is not None else default_threads()
        if threads < 1:
            raise UsageError(f"--threads must be >= 1, got {threads}")

        config = cls(command=command,
                     inputs=inputs,
                     outputs=outputs,
                     ratio=getattr(ns, 'ratio', 4),
                     block=getattr(ns, 'block', 32),
                     threads=threads,
                     log_level=log_level,
                     as_json=getattr(ns, 'json', False))

        if hasattr(ns, 'nu_r'):
            config.restore = restore_params(ns)
        if 'spec' in inputs:
            config.spec = SimulationSpec.fromJson(inputs['spec'])

        for key in ('factor', 'pixel', 'rgb', 'gamma', 'synthetic', 'seed', 'bands', 'ms_mtf'):
            if getattr(ns, key, None) is not None:
                config.options[key] = getattr(ns, key)

        return config

    def checkInputs(self):
        """
        :raises FileNotFoundError: an input file does not exist
        """
        for role, path in self.inputs.items():
            if not os.path.isfile(path):
                raise FileNotFoundError(f"{role} file not found: {path}")


def restore_params(ns):
    """
    :returns: :py:class:`RestoreParams` from the restoration flags
    """
    if ns.patch_size < 1 or ns.patch_size % 2 == 0:
        raise InvariantError(f"--patch-size must be odd and positive, got {ns.patch_size}")

    lambdas = None
    if ns.lambda_per_component:
        lambdas = parse_float_list(ns.lambda_per_component, "--lambda-per-component")

    weights = WeightParams(nu_r=ns.nu_r,
                           patch_radius=(ns.patch_size - 1) // 2,
                           h_spt=ns.h_spt,
                           h_sim=ns.h_sim)
    solver = SolverParams(lam=ns.lam,
                          tau=ns.tau,
                          sigma=ns.sigma,
                          theta=ns.theta,
                          max_iters=ns.max_iters,
                          rel_tol=ns.rel_tol,
                          lambdas=lambdas)
    match = MatchParams(window=ns.hist_window,
                        stride=ns.hist_stride,
                        use_global=ns.hist_global)
    return RestoreParams(weights=weights, solver=solver, match=match)
