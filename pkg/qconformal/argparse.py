import argparse

from qconformal.types import SUITES, SuiteConfig
from qconformal.printer import FORMATS

_HELP = {
    'dalembert': 'q-d\'Alembert equation on the plane-wave components',
    'maxwell': 'homogeneous and inhomogeneous q-Maxwell solutions',
    'current': 'current conservation and the splitting identities',
    'weyl': 'Weyl operators and the classical Weyl tensor dictionaries',
    'omega': 'omega image of the hat plane wave against the tilde one',
    'algebra': 'PBW basis, confluence, cone centrality and omega',
    'classical': 'q = 1 limits and the numeric plane-wave oracle',
    'mutation': 'single-scalar mutations of transcribed operators',
}


class UsageError(ValueError):
    pass


def add_common_parser_arguments(parser, main_fun):
    parser.add_argument(
        '-c',
        '--config',
        help='yaml config file; keys are the long option names')
    parser.add_argument(
        '--basis',
        default=None,
        choices=['hat', 'tilde', 'both'],
        help='conjugated basis to verify')
    parser.add_argument(
        '--s-max',
        default=None,
        type=int,
        help='largest plane-wave component index')
    parser.add_argument(
        '--m-max',
        default=None,
        type=int,
        help='largest solution-family index m')
    parser.add_argument(
        '--n',
        default=None,
        type=int,
        help='operator parameter n')
    parser.add_argument(
        '--p-poly',
        dest='poly_spec',
        default=None,
        help='exponent polynomial "c00,c10,c01,c20,c11,c02" (default: 0 and three random ones)')
    parser.add_argument(
        '--seed',
        default=None,
        type=int,
        help='root seed of every random choice')
    parser.add_argument(
        '--off-cone',
        dest='on_cone',
        action='store_const',
        const=False,
        default=None,
        help='do not reduce residuals modulo the momentum cone')
    parser.add_argument(
        '-f',
        '--format',
        default=None,
        choices=FORMATS,
        help='output format')
    parser.add_argument(
        '-o',
        '--out',
        default=None,
        help='write the report here instead of stdout')
    parser.add_argument(
        '-p',
        '--num-processes',
        default=None,
        type=int,
        help='number of worker processes')
    parser.add_argument(
        '--timing',
        action='store_const',
        const=True,
        default=None,
        help='record time_ms per case')
    parser.add_argument(
        '--silent',
        action='store_true')
    parser.set_defaults(func=main_fun)


def suite_config(args, file_config=None) -> SuiteConfig:
    """defaults, then the config file, then flags given on the command line."""
    values = SuiteConfig(suite=args.suite)._asdict()
    for key, value in (file_config or {}).items():
        if key not in values or key == 'suite':
            raise UsageError(f'unknown config key: {key}')
        values[key] = value
    for key in values:
        value = getattr(args, key, None)
        if value is not None and key != 'suite':
            values[key] = value
    cfg = SuiteConfig(**values)
    for key in ('s_max', 'm_max', 'n', 'seed'):
        if not isinstance(getattr(cfg, key), int) or getattr(cfg, key) < 0:
            raise UsageError(f'--{key.replace("_", "-")} must be a nonnegative integer')
    if cfg.num_processes < 1:
        raise UsageError(f'--num-processes must be positive, got {cfg.num_processes}')
    if cfg.basis not in ('hat', 'tilde', 'both'):
        raise UsageError(f'unknown basis: {cfg.basis}')
    if cfg.format not in FORMATS:
        raise UsageError(f'unknown format: {cfg.format}')
    return cfg


def parse_args(main_fun):
    parser = argparse.ArgumentParser('verify')
    parser.set_defaults(func=lambda _: parser.print_help())
    subparsers = parser.add_subparsers()

    for suite in SUITES:
        suite_parser = subparsers.add_parser(suite, help=_HELP[suite])
        suite_parser.set_defaults(suite=suite)
        add_common_parser_arguments(suite_parser, main_fun)

    args = parser.parse_args()
    return args.func(args)
