"""
Entry point into usdcoherence, this module parses the command line, sets up
the Config and logging, resolves a SweepSpec and runs the requested sweep or
verification, writing its output through a Writer.

Functions
---------

main():
    Parses the command line, runs one subcommand and returns the exit code

build_parser():
    Create the argparse parser with the region-map, delta-q, gaussian and
    verify subcommands

create_spec():
    Merge command-line flags, an optional spec file and Config settings into
    a SweepSpec
"""

import argparse
import logging
import signal

from usdcoherence.config import Config
from usdcoherence.program import Program
from usdcoherence.sweep import spec as sweep_spec
from usdcoherence.sweep.delta_q import run_delta_q_curve
from usdcoherence.sweep.gaussian import run_gaussian_examples
from usdcoherence.sweep.region_map import run_region_map
from usdcoherence.sweep.verify import run_verify
from usdcoherence.model import UsdError
from usdcoherence.writer import Writer

# Subcommand -> function producing a SweepResult
SWEEP_RUNNERS = {
    'region-map': run_region_map,
    'delta-q': run_delta_q_curve,
    'gaussian': run_gaussian_examples
}


def build_parser():
    """
    @return argparse.ArgumentParser for every subcommand
    """

    # Flags accepted by every subcommand
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument('--config', metavar='config-path',
                        help='YAML settings file, defaults apply without one')
    common.add_argument('--spec', metavar='spec-path',
                        help='JSON or YAML spec file, overrides other flags')
    common.add_argument('--p1', type=float, help='prior of the first state')
    common.add_argument('--tail-bound', type=float,
                        help='tail mass allowed when truncating distributions')
    common.add_argument('--seed', type=int, help='seed of random instances')
    common.add_argument('--out', help='output file, standard output if absent')
    common.add_argument('--workers', type=int,
                        help='threads evaluating sweep points')

    # Flags of the swept parameter
    ranged = argparse.ArgumentParser(add_help=False)
    ranged.add_argument('--start', type=float, help='first swept value')
    ranged.add_argument('--stop', type=float, help='last swept value')
    ranged.add_argument('--step', type=float, help='swept increment')

    arg_parser = argparse.ArgumentParser(
        prog='usdcoherence',
        description='Unambiguous state discrimination and coherence sweeps')
    subparsers = arg_parser.add_subparsers(dest='command', required=True)

    region_map = subparsers.add_parser(
        'region-map', parents=[common],
        help='joint case labels over (s_11, s_12)')
    region_map.add_argument('--beta1', type=float, help='weight beta_1')
    region_map.add_argument('--phases', type=float, nargs=2,
                            metavar=('THETA1', 'THETA2'))
    region_map.add_argument('--grid', type=int, help='grid points per axis')

    delta_q = subparsers.add_parser(
        'delta-q', parents=[common, ranged],
        help='Delta Q against l1 coherence')
    delta_q.add_argument('--scheme', choices=['filtering', 'mixed'],
                         default='filtering')
    delta_q.add_argument('--overlaps', type=float, nargs=2,
                         metavar=('S11', 'S12'))
    delta_q.add_argument('--phases', type=float, nargs=2,
                         metavar=('THETA1', 'THETA2'))
    delta_q.add_argument('--diag-overlaps', type=float, nargs='+')

    gaussian = subparsers.add_parser(
        'gaussian', parents=[common, ranged],
        help='Delta Q against relative-entropy coherence for photon families')
    gaussian.add_argument('--example', type=int, choices=[1, 2], default=1)
    gaussian.add_argument('--distribution',
                          choices=['binomial', 'poisson', 'squeezed'])
    gaussian.add_argument('--n', type=int, help='trials of the binomial family')
    gaussian.add_argument('--t-index', type=int, help='overlapping index')
    gaussian.add_argument('--overlap', type=float, help='overlap s_1t')
    gaussian.add_argument('--split', type=int, help='last index of the head')
    gaussian.add_argument('--head', type=float, help='overlap up to split')
    gaussian.add_argument('--tail', type=float, help='overlap beyond split')
    gaussian.add_argument('--reversed', action='store_true', default=None,
                          help='swap head and tail overlaps')

    verify = subparsers.add_parser(
        'verify', parents=[common],
        help='randomized closed-form against oracle verification')
    verify.add_argument('--count', type=int, help='instances per kind')

    return arg_parser


def _target(args):
    if args.command == 'region-map':
        return sweep_spec.REGION_MAP

    if args.command == 'delta-q':
        if args.scheme == 'mixed':
            return sweep_spec.MIXED_DELTA_Q
        return sweep_spec.FILTERING_DELTA_Q

    if args.command == 'gaussian':
        family = 'Binomial' if args.distribution == 'binomial' else 'Gaussian'
        return f"Example{args.example}{family}"

    return sweep_spec.VERIFY


def _flags_document(args):
    """
    @return spec dictionary made of the flags that were given
    """

    flags = vars(args)
    document = {
        'target': _target(args),
        'p1': args.p1,
        'tail_bound': args.tail_bound,
        'seed': args.seed,
        'out': args.out,
        'workers': args.workers
    }

    if args.command == 'region-map':
        document['beta'] = [args.beta1] if args.beta1 is not None else None
        document['phases'] = args.phases
        document['grid'] = args.grid

    elif args.command == 'delta-q':
        document['overlaps'] = args.overlaps
        document['phases'] = args.phases
        document['diag_overlaps'] = args.diag_overlaps

    elif args.command == 'gaussian':
        document['distribution'] = args.distribution
        document['n'] = args.n
        document['t_index'] = args.t_index
        document['overlap'] = args.overlap

        schedule = {key: flags[key] for key in ('split', 'head', 'tail', 'reversed')
                    if flags[key] is not None}
        if schedule:
            document['schedule'] = dict(sweep_spec.SCHEDULE_DEFAULT, **schedule)

    else:
        document['count'] = args.count

    sweep = {key: flags.get(key) for key in ('start', 'stop', 'step')
             if flags.get(key) is not None}
    if sweep:
        document['sweep'] = sweep

    return document


def settings_from_config():
    """
    @return the Config values a SweepSpec falls back on
    """

    return {
        'tail_bound': Config.get_tail_bound(),
        'n_max_cap': Config.get_n_max_cap(),
        'alpha_stop': Config.get_alpha_stop(),
        'step': Config.get_sweep_step(),
        'count': Config.get_verification_count(),
        'seed': Config.get_verification_seed(),
        'workers': Config.get_workers()
    }


def create_spec(args):
    """
    Merge the flags in args with the spec file named by args.spec, whose
    values win, and resolve the result against the Config settings.

    @param args Namespace returned by the parser

    @return SweepSpec
    """

    document = _flags_document(args)

    if args.spec:
        document.update(sweep_spec.load_spec_document(args.spec))

    return sweep_spec.build_spec(document, settings_from_config())


def run(spec):
    """
    Run the sweep or verification described by spec and write its output.

    @param spec SweepSpec

    @return exit code
    """

    writer = Writer(spec.out)

    if spec.target == sweep_spec.VERIFY:
        outcome = run_verify(spec)
        records = outcome.records()
        if not spec.out:
            records = [record for record in records
                       if record['record'] == 'summary']

        if not writer.write_jsonl(records):
            return Program.get_exit_code()

        if not outcome.passed:
            Program.log(f"verify: failed, worst gap {outcome.worst_gap}",
                        logging.ERROR)
            return Program.EXIT_VERIFICATION_FAILURE

        Program.log(f"verify: passed, worst gap {outcome.worst_gap}",
                    logging.INFO)
        return Program.EXIT_SUCCESS

    command = {
        sweep_spec.REGION_MAP: 'region-map',
        sweep_spec.FILTERING_DELTA_Q: 'delta-q',
        sweep_spec.MIXED_DELTA_Q: 'delta-q'
    }.get(spec.target, 'gaussian')

    result = SWEEP_RUNNERS[command](spec)

    if not writer.write_result(result) or not result.completed:
        return Program.get_exit_code()

    return Program.EXIT_SUCCESS


def main(argv=None):
    """
    Kicks off usdcoherence by reading settings, setting up logging and running
    the subcommand given on the command line.

    @param argv Command-line arguments, sys.argv[1:] when None

    @return exit code: 0 on success, 1 on a failed verification or an
            interrupted run, 2 on an invalid spec or settings file
    """

    args = build_parser().parse_args(argv)

    # Handle shutting down the program via Ctrl-C
    signal.signal(signal.SIGINT, signal_handler)
    # Handle shutting down the program via SIGTERM
    signal.signal(signal.SIGTERM, signal_handler)

    # Create a config Dictionary from a YAML file, or use the defaults
    if args.config:
        config = Config.create_config(args.config)
        if config is None:
            return Program.get_exit_code()
    else:
        config = Config.default_config()

    Config.set_config(config)

    Program.setup_logging(Config.get_log_filepath())
    if not Program.is_running():
        return Program.get_exit_code()

    try:
        spec = create_spec(args)
        exit_code = run(spec)

    # Raised for malformed specs and for specs no sweep can run
    except UsdError as usd_error:
        Program.initiate_shutdown(f"{usd_error}", Program.EXIT_SPEC_ERROR)
        return Program.EXIT_SPEC_ERROR

    if Program.is_logging_set():
        Program.log(f"usdcoherence: finished with exit code {exit_code}. Check "
                    f"{Config.get_log_filepath()} for program logs", logging.INFO)

    return exit_code


def signal_handler(signal_number, stack_frame):
    """
    Handler for signals to gracefully shutdown usdcoherence
    """

    if signal_number == signal.SIGINT:
        shutdown_reason = f"received signal {signal_number} (Ctrl-C)"
    else:
        shutdown_reason = f"received signal {signal.strsignal(signal_number)}"

    Program.initiate_shutdown(shutdown_reason, Program.EXIT_INTERRUPTED)

    if stack_frame:
        Program.log(
            f"usdcoherence: stack frame from signal is {stack_frame}", logging.INFO
        )
