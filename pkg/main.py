#!/usr/bin/env python3
"""
ghcalc - gH-difference interval calculus from the command line.

Subcommands:
- ghdiff / hdiff: differences of two intervals given as lo hi lo hi
- ghproduct: gH-product of a real vector with a tuple of intervals
- partial / gradient: gH-partial derivatives of an interval-valued function
- quotient: one gH-difference quotient at a given step
- replay-paper: replay the worked-example corpus as a regression suite
"""

import argparse
import io
import os
import sys
from pathlib import Path
from typing import List, Optional

from calculus.derivative import GradientError
from cli.commands import cmd_ghdiff, cmd_ghproduct, cmd_gradient, cmd_hdiff, cmd_partial, cmd_quotient
from cli.rendering import EXIT_BAD_INPUT, EXIT_EVALUATION, render
from cli.replay import cmd_replay_paper
from config.logging_config import set_default_log_level, setup_logger
from config.run_config import OUTPUT_FORMATS, RunConfig
from functions.expression import EvaluationError
from functions.ivf import ModelError

# Ensure stdout/stderr use UTF-8 on Windows
os.environ.setdefault("PYTHONIOENCODING", "utf-8")
try:
    if hasattr(sys.stdout, "reconfigure"):
        sys.stdout.reconfigure(encoding="utf-8")
        sys.stderr.reconfigure(encoding="utf-8")
    else:
        sys.stdout = io.TextIOWrapper(sys.stdout.buffer, encoding="utf-8", errors="replace")
        sys.stderr = io.TextIOWrapper(sys.stderr.buffer, encoding="utf-8", errors="replace")
except Exception:
    pass

logger = setup_logger(__name__)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="ghcalc", description="gH-difference interval calculus")
    parser.add_argument('--format', dest='output_format', choices=OUTPUT_FORMATS, default='text',
                        help='Output format (default: text)')
    parser.add_argument('--t0', type=float, default=None, help='Largest sampling step')
    parser.add_argument('--ratio', type=float, default=None, help='Geometric step ratio in (0, 1)')
    parser.add_argument('--count', type=int, default=None, help='Number of sampling steps')
    parser.add_argument('--limit-tol', type=float, default=None, help='Spread below which a limit is declared')
    parser.add_argument('--cluster-tol', type=float, default=None, help='Distance below which limits merge')
    parser.add_argument('--log-level',
                        type=str,
                        default='WARNING',
                        choices=['DEBUG', 'INFO', 'WARNING', 'ERROR', 'CRITICAL'],
                        help='Set the default logging level (default: WARNING)')

    spec_source = argparse.ArgumentParser(add_help=False)
    group = spec_source.add_mutually_exclusive_group(required=True)
    group.add_argument('--spec', help='Inline function spec, e.g. "n=1; L: x1; U: x1 + 1"')
    group.add_argument('--spec-file', type=Path, help='Path to a function spec file')

    commands = parser.add_subparsers(dest='command', required=True)

    for name, summary in (('ghdiff', 'gH-difference of two intervals'), ('hdiff', 'Hukuhara difference of two intervals')):
        sub = commands.add_parser(name, help=summary)
        sub.add_argument('endpoints', nargs=4, type=float, metavar='X', help='a_lo a_hi b_lo b_hi')

    product = commands.add_parser('ghproduct', help='gH-product of a real vector with intervals')
    product.add_argument('-v', dest='vector', nargs='+', type=float, required=True, help='Real coefficients')
    product.add_argument('-K', dest='intervals', nargs='+', type=float, required=True, help='Intervals as lo hi lo hi ...')
    product.add_argument('--compare', action='store_true', help='Also print the Minkowski (Ghosh) product')

    partial = commands.add_parser('partial', parents=[spec_source], help='gH-partial derivative along one coordinate')
    partial.add_argument('--point', nargs='+', type=float, required=True, help='Point coordinates x1 .. xn')
    partial.add_argument('-i', dest='coordinate', type=int, required=True, help='1-based coordinate index')

    gradient = commands.add_parser('gradient', parents=[spec_source], help='gH-gradient at a point')
    gradient.add_argument('--point', nargs='+', type=float, required=True, help='Point coordinates x1 .. xn')

    quotient = commands.add_parser('quotient', parents=[spec_source], help='One gH-difference quotient')
    quotient.add_argument('--point', nargs='+', type=float, required=True, help='Point coordinates x1 .. xn')
    quotient.add_argument('-i', dest='coordinate', type=int, required=True, help='1-based coordinate index')
    quotient.add_argument('-t', dest='step', type=float, required=True, help='Signed step')
    quotient.add_argument('--lower-branch', default=None, help='Lower endpoint branch label')
    quotient.add_argument('--upper-branch', default=None, help='Upper endpoint branch label')

    replay = commands.add_parser('replay-paper', help='Replay the worked-example corpus')
    replay.add_argument('--corpus', type=Path, default=None, help='Alternative YAML corpus')
    replay.add_argument('--json', action='store_true', help='Machine-readable results (same as --format json)')

    return parser


def run_config_from(args: argparse.Namespace) -> RunConfig:
    output_format = 'json' if getattr(args, 'json', False) else args.output_format
    return RunConfig(
        output_format=output_format,
        t0=args.t0,
        ratio=args.ratio,
        count=args.count,
        limit_tol=args.limit_tol,
        cluster_tol=args.cluster_tol,
        spec=getattr(args, 'spec', None),
        spec_file=getattr(args, 'spec_file', None),
    )


def dispatch(args: argparse.Namespace, config: RunConfig):
    if args.command == 'ghdiff':
        return cmd_ghdiff(args.endpoints[:2], args.endpoints[2:])
    if args.command == 'hdiff':
        return cmd_hdiff(args.endpoints[:2], args.endpoints[2:])
    if args.command == 'ghproduct':
        return cmd_ghproduct(args.vector, args.intervals, args.compare)
    if args.command == 'partial':
        return cmd_partial(config, args.point, args.coordinate)
    if args.command == 'gradient':
        return cmd_gradient(config, args.point)
    if args.command == 'quotient':
        return cmd_quotient(config, args.point, args.coordinate, args.step, args.lower_branch, args.upper_branch)
    return cmd_replay_paper(args.corpus, config.plan())


def main(argv: Optional[List[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        # argparse exits 2 on usage errors and 0 on --help
        return e.code if isinstance(e.code, int) else EXIT_BAD_INPUT

    set_default_log_level(args.log_level)
    logger.info(f"Running {args.command}")

    try:
        config = run_config_from(args)
        result = dispatch(args, config)
    except (GradientError, ModelError, EvaluationError, ArithmeticError) as e:
        logger.error(str(e))
        print(f"Error: {e}", file=sys.stderr)
        return EXIT_EVALUATION
    except (ValueError, KeyError, OSError) as e:
        logger.error(str(e))
        print(f"Error: {e}", file=sys.stderr)
        return EXIT_BAD_INPUT

    print(render(result, config.output_format))
    return result.exit_code


if __name__ == "__main__":
    sys.exit(main())
