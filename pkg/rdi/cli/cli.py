"""
Command line front end

    rdi invert  --preset fig1 --out results
    rdi verify  [--config checks.yml] [--json]
    rdi catalog [--json]
"""

__author__ = "rdi developers"

import argparse
import json
import os
import sys

import numpy as np

from rdi.cli.config import load_config, load_verify_config, resolve_threads
from rdi.cli.presets import PRESETS, REQUIRED, SCENARIOS
from rdi.cli.sweep import FieldMapSweep
from rdi.util.util import (ConfigError, DSLSyntaxError, JetDomainError,
                           NonPhysicalDynamicsError, SingularStateError,
                           SuperluminalError, UnknownIdentifierError,
                           ZeroDensityError)
from rdi.verification import VerifyAll

__all__ = [
    'EXIT_OK', 'EXIT_CONFIG', 'EXIT_NON_PHYSICAL', 'EXIT_NUMERICAL',
    'build_parser', 'cmd_invert', 'cmd_verify', 'cmd_catalog', 'main'
]

EXIT_OK = 0
EXIT_CONFIG = 2
EXIT_NON_PHYSICAL = 3
EXIT_NUMERICAL = 4

CONFIG_ERRORS = (ConfigError, SuperluminalError, DSLSyntaxError,
                 UnknownIdentifierError)
NUMERICAL_ERRORS = (SingularStateError, ZeroDensityError, JetDomainError,
                    FloatingPointError, np.linalg.LinAlgError)


def cmd_invert(args):
    '''
    Sweep a scenario over its grid and write the field map and summary

    The field map is written even when the gate fails, for diagnosis.
    '''
    config = load_config(args.config, args.preset, args.out)
    threads = resolve_threads(args.threads)
    sweep = FieldMapSweep(config, threads=threads, progress=not args.quiet)
    csv_path, _ = sweep.write()
    summary = sweep.summary
    if args.json:
        print(json.dumps(summary, indent=2, sort_keys=True))
    else:
        print('{}: {} points, max {} {:.3e}, written to {}'.format(
            config.scenario, summary['points'], summary['gate'],
            summary['max_residual'], csv_path))
    if not sweep.physical:
        print('non-physical dynamics: max {} {:.3e} exceeds {:.3e}; residual map '
              'in {}'.format(summary['gate'], summary['max_residual'],
                             summary['tolerance'], csv_path),
              file=sys.stderr)
        return EXIT_NON_PHYSICAL
    return EXIT_OK


def cmd_verify(args):
    '''
    Run the verification checks and write the report

    Failed checks are entries of the report, not errors.
    '''
    config = load_verify_config(args.config, args.out)
    fit = VerifyAll(config.checks, config.tolerances, config.seed,
                    progress=not args.quiet)
    os.makedirs(config.output['directory'], exist_ok=True)
    report = config.path('report')
    fit.computed.to_csv(report, index=False, float_format='%.17g')
    if args.json:
        print(fit.computed.to_json(orient='records', indent=2))
    else:
        print('{} of {} checks passed, report written to {}'.format(
            int(fit.computed['Passed'].sum()), len(fit.computed), report))
        for check in fit.failures['Check']:
            print('failed: {}'.format(check))
    return EXIT_OK


def _listing():
    scenarios = []
    for scenario in SCENARIOS.values():
        parameters = {
            k: ('required' if v is REQUIRED else v)
            for k, v in scenario.parameters.items()
        }
        scenarios.append({
            'name': scenario.name,
            'description': scenario.description,
            'parameters': parameters
        })
    presets = [{
        'name': name,
        'scenario': preset['scenario']
    } for name, preset in PRESETS.items()]
    return {'scenarios': scenarios, 'presets': presets}


def cmd_catalog(args):
    """Print the scenarios and presets."""
    listing = _listing()
    if args.json:
        print(json.dumps(listing, indent=2))
        return EXIT_OK
    for scenario in listing['scenarios']:
        parameters = ', '.join('{}={}'.format(k, v)
                               for k, v in scenario['parameters'].items())
        print('{:<18} {}'.format(scenario['name'], scenario['description']))
        print('{:<18} parameters: {}'.format('', parameters or '-'))
    print()
    for preset in listing['presets']:
        print('preset {:<18} scenario {}'.format(preset['name'], preset['scenario']))
    return EXIT_OK


def build_parser():
    parser = argparse.ArgumentParser(
        prog='rdi',
        description='Invert spinor evolutions for the four-potential that '
        'drives them')
    commands = parser.add_subparsers(dest='command', metavar='command')
    commands.required = True

    invert = commands.add_parser('invert', help='sweep a scenario over a grid')
    invert.add_argument('--config', help='YAML scenario configuration')
    invert.add_argument('--preset',
                        choices=sorted(PRESETS),
                        help='built-in configuration; --config keys override it')
    invert.add_argument('--threads',
                        type=int,
                        help='worker threads (default: $RDI_THREADS or 1)')
    invert.set_defaults(handler=cmd_invert)

    verify = commands.add_parser('verify', help='run the verification checks')
    verify.add_argument('--config', help='YAML with checks, seed and tolerances')
    verify.set_defaults(handler=cmd_verify)

    catalog = commands.add_parser('catalog', help='list scenarios and presets')
    catalog.add_argument('--json', action='store_true', help='JSON listing')
    catalog.set_defaults(handler=cmd_catalog)

    for sub in (invert, verify):
        sub.add_argument('--out', help='output directory')
        sub.add_argument('--json', action='store_true',
                         help='print the summary as JSON')
        sub.add_argument('--quiet', action='store_true',
                         help='no progress bar')
    return parser


def main(argv=None):
    '''
    Entry point of the ``rdi`` command

    Returns
    -------

    int exit code: 0 success, 2 configuration error, 3 non-physical dynamics,
    4 numerical failure
    '''
    args = build_parser().parse_args(argv)
    try:
        return args.handler(args)
    except CONFIG_ERRORS as err:
        print('configuration error: {}'.format(err), file=sys.stderr)
        return EXIT_CONFIG
    except NonPhysicalDynamicsError as err:
        print('non-physical dynamics: {}'.format(err), file=sys.stderr)
        return EXIT_NON_PHYSICAL
    except NUMERICAL_ERRORS as err:
        print('numerical failure: {}'.format(err), file=sys.stderr)
        return EXIT_NUMERICAL


if __name__ == '__main__':
    sys.exit(main())
