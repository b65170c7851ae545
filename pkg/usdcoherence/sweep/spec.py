"""
Definition of the SweepSpec class

A SweepSpec fixes every parameter of one command-line run: which figure-style
table to produce, the fixed instance data and the swept parameter. It is built
from a dictionary made of command-line flags, overridden by an optional spec
file, and checked with a Cerberus schema followed by per-target rules.
"""

import math
from dataclasses import asdict, dataclass
from typing import Optional, Tuple

import yaml
from cerberus import Validator  # type: ignore
from yaml import YAMLError

from usdcoherence.model import UsdError

REGION_MAP = 'RegionMap'
FILTERING_DELTA_Q = 'FilteringDeltaQ'
MIXED_DELTA_Q = 'MixedDeltaQ'
EXAMPLE1_BINOMIAL = 'Example1Binomial'
EXAMPLE1_GAUSSIAN = 'Example1Gaussian'
EXAMPLE2_BINOMIAL = 'Example2Binomial'
EXAMPLE2_GAUSSIAN = 'Example2Gaussian'
VERIFY = 'Verify'

TARGETS = (
    REGION_MAP, FILTERING_DELTA_Q, MIXED_DELTA_Q, EXAMPLE1_BINOMIAL,
    EXAMPLE1_GAUSSIAN, EXAMPLE2_BINOMIAL, EXAMPLE2_GAUSSIAN, VERIFY
)

EXAMPLE_TARGETS = (
    EXAMPLE1_BINOMIAL, EXAMPLE1_GAUSSIAN, EXAMPLE2_BINOMIAL, EXAMPLE2_GAUSSIAN
)

# Parameter swept by each target
SWEPT_PARAMETERS = {
    FILTERING_DELTA_Q: 'beta1',
    MIXED_DELTA_Q: 'lambda',
    EXAMPLE1_BINOMIAL: 'alpha',
    EXAMPLE1_GAUSSIAN: 'alpha',
    EXAMPLE2_BINOMIAL: 'alpha',
    EXAMPLE2_GAUSSIAN: 'alpha'
}

P1_DEFAULT = 0.15
GRID_DEFAULT = 200
REGION_BETA_DEFAULT = (0.1, 0.9)
FILTERING_OVERLAPS_DEFAULT = (0.0, 0.5)
MIXED_OVERLAPS_DEFAULT = (0.2, 0.5, 0.5)
BINOMIAL_N_DEFAULT = 10
OVERLAP_DEFAULT = 0.5
SCHEDULE_DEFAULT = {'split': 4, 'head': 0.5, 'tail': 0.2, 'reversed': False}

# Largest number of points one sweep may hold
MAX_SWEEP_POINTS = 1_000_000

# Settings a spec falls back on when neither flags nor file set them
SETTINGS_DEFAULTS = {
    'tail_bound': 1.0e-12,
    'n_max_cap': 4096,
    'alpha_stop': 3.0,
    'step': 0.01,
    'count': 10000,
    'seed': 42,
    'workers': 1
}


class SpecError(UsdError, ValueError):
    """
    Raise when a sweep specification is malformed or asks for a sweep that
    the chosen target cannot perform
    """


_NUMBER_LIST = {'type': 'list', 'schema': {'type': 'number'}}
_UNIT_LIST = {'type': 'list', 'schema': {'type': 'number', 'min': 0, 'max': 1}}

SCHEMA = {
    'target': {'type': 'string', 'required': True, 'allowed': list(TARGETS)},
    'p1': {'type': 'number', 'min': 0, 'max': 0.5},
    'beta': _UNIT_LIST,
    'overlaps': _UNIT_LIST,
    'phases': _NUMBER_LIST,
    'diag_overlaps': _UNIT_LIST,
    't_index': {'type': 'integer', 'min': 0},
    'overlap': {'type': 'number', 'min': 0, 'max': 1},
    'distribution': {
        'type': 'string',
        'allowed': ['binomial', 'poisson', 'squeezed']
    },
    'n': {'type': 'integer', 'min': 1},
    'schedule': {
        'type': 'dict',
        'schema': {
            'split': {'type': 'integer', 'min': 0, 'required': True},
            'head': {'type': 'number', 'min': 0, 'max': 1, 'required': True},
            'tail': {'type': 'number', 'min': 0, 'max': 1, 'required': True},
            'reversed': {'type': 'boolean', 'default': False}
        }
    },
    'sweep': {
        'type': 'dict',
        'schema': {
            'parameter': {
                'type': 'string',
                'allowed': ['beta1', 'lambda', 'alpha']
            },
            'start': {'type': 'number'},
            'stop': {'type': 'number'},
            'step': {'type': 'number', 'min': 1.0e-9}
        }
    },
    'grid': {'type': 'integer', 'min': 2},
    'count': {'type': 'integer', 'min': 1},
    'seed': {'type': 'integer', 'min': 0},
    'tail_bound': {
        'type': 'float',
        'coerce': float,
        'min': 1.0e-300,
        'max': 1.0e-6
    },
    'n_max_cap': {'type': 'integer', 'min': 1},
    'workers': {'type': 'integer', 'min': 1},
    'out': {'type': 'string', 'empty': False}
}


@dataclass(frozen=True)
class SweepRange:
    """Swept parameter with its inclusive range"""

    parameter: str
    start: float
    stop: float
    step: float


@dataclass(frozen=True)
class SweepSpec:
    """Fully resolved description of one run"""

    target: str
    p1: float = P1_DEFAULT
    beta: Tuple[float, ...] = ()
    overlaps: Tuple[float, ...] = ()
    phases: Tuple[float, ...] = ()
    diag_overlaps: Tuple[float, ...] = ()
    t_index: int = 0
    overlap: float = OVERLAP_DEFAULT
    distribution: Optional[str] = None
    n: Optional[int] = None
    schedule: Optional[dict] = None
    sweep: Optional[SweepRange] = None
    grid: int = GRID_DEFAULT
    count: int = SETTINGS_DEFAULTS['count']
    seed: int = SETTINGS_DEFAULTS['seed']
    tail_bound: float = SETTINGS_DEFAULTS['tail_bound']
    n_max_cap: int = SETTINGS_DEFAULTS['n_max_cap']
    workers: int = SETTINGS_DEFAULTS['workers']
    out: Optional[str] = None

    @property
    def example(self):
        """@return 1 or 2 for the photon-number examples, None otherwise"""

        if self.target in (EXAMPLE1_BINOMIAL, EXAMPLE1_GAUSSIAN):
            return 1

        if self.target in (EXAMPLE2_BINOMIAL, EXAMPLE2_GAUSSIAN):
            return 2

        return None

    def to_dict(self):
        """@return the spec as a JSON-friendly dictionary, used as CSV header"""

        spec = asdict(self)

        for key in ('beta', 'overlaps', 'phases', 'diag_overlaps'):
            spec[key] = list(spec[key])

        return {key: value for key, value in spec.items()
                if value is not None and value != []}


def _validated_document(document):
    if not isinstance(document, dict):
        raise SpecError('a sweep spec must be a mapping')

    # Unset flags arrive as None
    document = {key: value for key, value in document.items()
                if value is not None}

    validator = Validator(SCHEMA)
    if not validator.validate(document):
        raise SpecError(f"{validator.errors}")

    return validator.document


def _require_length(name, values, length):
    if len(values) != length:
        raise SpecError(f"{name} needs {length} entries, got {len(values)}")


def _resolve_sweep(target, document, settings):
    expected = SWEPT_PARAMETERS[target]
    sweep = dict(document.get('sweep', {}))

    parameter = sweep.get('parameter', expected)
    if parameter != expected:
        raise SpecError(f"{target} sweeps {expected}, not {parameter}")

    stop_default = settings['alpha_stop'] if parameter == 'alpha' else 1.0
    start = float(sweep.get('start', 0.0))
    stop = float(sweep.get('stop', stop_default))
    step = float(sweep.get('step', settings['step']))

    if not (math.isfinite(start) and math.isfinite(stop)) or stop < start:
        raise SpecError(f"sweep range [{start}, {stop}] is not a finite range")

    if (stop - start) / step >= MAX_SWEEP_POINTS:
        raise SpecError(
            f"sweep [{start}, {stop}] with step {step} exceeds "
            f"{MAX_SWEEP_POINTS} points")

    return SweepRange(parameter, start, stop, step)


def _resolve_region_map(document, values):
    beta = tuple(document.get('beta', REGION_BETA_DEFAULT))
    if len(beta) == 1:
        beta = (beta[0], 1.0 - beta[0])

    _require_length('beta', beta, 2)
    if 'sweep' in document:
        raise SpecError('RegionMap scans a grid over (s_11, s_12), not a sweep')

    values['beta'] = beta
    values['phases'] = tuple(document.get('phases', (0.0, 0.0)))
    _require_length('phases', values['phases'], 2)


def _resolve_filtering(document, values):
    values['overlaps'] = tuple(document.get('overlaps', FILTERING_OVERLAPS_DEFAULT))
    values['phases'] = tuple(document.get('phases', (0.0, 0.0)))

    _require_length('overlaps', values['overlaps'], 2)
    _require_length('phases', values['phases'], 2)


def _resolve_mixed(document, values):
    values['diag_overlaps'] = tuple(
        document.get('diag_overlaps', MIXED_OVERLAPS_DEFAULT))

    if len(values['diag_overlaps']) < 2:
        raise SpecError('MixedDeltaQ needs at least two diagonal overlaps')


def _resolve_example(target, document, values):
    binomial = target in (EXAMPLE1_BINOMIAL, EXAMPLE2_BINOMIAL)
    distribution = document.get(
        'distribution', 'binomial' if binomial else 'poisson')

    if binomial != (distribution == 'binomial'):
        raise SpecError(f"{target} cannot use the {distribution} family")

    values['distribution'] = distribution
    if binomial:
        values['n'] = document.get('n', BINOMIAL_N_DEFAULT)

    if target in (EXAMPLE1_BINOMIAL, EXAMPLE1_GAUSSIAN):
        values['t_index'] = document.get('t_index', 0)
        values['overlap'] = float(document.get('overlap', OVERLAP_DEFAULT))
    else:
        schedule = dict(SCHEDULE_DEFAULT)
        schedule.update(document.get('schedule', {}))
        values['schedule'] = schedule


def build_spec(document, settings=None):
    """
    Validate a spec dictionary and resolve every default.

    @param document Dictionary of spec fields; None values count as unset
    @param settings Dictionary overriding SETTINGS_DEFAULTS, usually taken
                    from the Config

    @return SweepSpec

    @raise SpecError when the document is not a valid spec
    """

    document = _validated_document(document)
    settings = dict(SETTINGS_DEFAULTS, **(settings or {}))
    target = document['target']

    values = {'target': target, 'p1': float(document.get('p1', P1_DEFAULT))}

    for key in ('count', 'seed', 'tail_bound', 'n_max_cap', 'workers'):
        values[key] = document.get(key, settings[key])

    values['out'] = document.get('out')
    values['grid'] = document.get('grid', GRID_DEFAULT)

    if target == REGION_MAP:
        _resolve_region_map(document, values)
    elif target == FILTERING_DELTA_Q:
        _resolve_filtering(document, values)
    elif target == MIXED_DELTA_Q:
        _resolve_mixed(document, values)
    elif target in EXAMPLE_TARGETS:
        _resolve_example(target, document, values)

    if target in SWEPT_PARAMETERS:
        values['sweep'] = _resolve_sweep(target, document, settings)

    return SweepSpec(**values)


def load_spec_document(spec_filepath):
    """
    Read a JSON or YAML spec file.

    @param spec_filepath    File holding one mapping

    @return the mapping read

    @raise SpecError when the file cannot be read or parsed
    """

    try:
        with open(spec_filepath) as spec_file:
            document = yaml.safe_load(spec_file.read())

    except OSError as os_error:
        raise SpecError(f"cannot open spec file: {os_error}") from os_error

    except YAMLError as yaml_error:
        raise SpecError(f"cannot parse spec file: {yaml_error}") from yaml_error

    if not isinstance(document, dict):
        raise SpecError(f"{spec_filepath} does not hold a mapping")

    return document
