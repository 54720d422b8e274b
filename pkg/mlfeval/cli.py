#!/usr/bin/env python
# -*- coding: utf-8 -*-

'''
Command line interface

    mlfeval eval --rho 1 --mu-re 0 --t 2 --theta 3.14159265358979
    mlfeval grid --rho 1 --mu-re 0 --t-min 1 --t-max 2 --theta-min 3 --theta-max 3.2 --n-t 2 --n-theta 2
    mlfeval verify --suite all --jobs 4

Exit codes: 0 success, 1 usage, 2 invalid or inadmissible input,
3 numerical failure.
'''

import argparse
import logging
import sys
from dataclasses import replace
from multiprocessing import Pool

import numpy as np

from mlfeval.domain import (MLParameters, PolarComplex, ContourConfig, Param1,
                            Param2, Param3, Rep, delta_upper, default_config,
                            validate_config)
from mlfeval.grid import GridSpec, GridSetup, sweep, write_csv
from mlfeval.quadrature import Tolerances
from mlfeval.representations import EvalOptions, evaluate, evaluate_explicit
from mlfeval.tmpfiles import TmpManager
from mlfeval.verify import SUITES, VerifySettings, run_suites, print_summary

logger = logging.getLogger(__name__)

PROG = 'mlfeval'
EXIT_OK = 0
EXIT_USAGE = 1
EXIT_INVALID = 2
EXIT_NUMERICAL = 3

REPS = ('a1', 'a2', 'a3', 'b', 'auto')


class ArgumentParser(argparse.ArgumentParser):
    '''
    Exits with EXIT_USAGE on malformed flags
    '''
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f'{self.prog}: error: {message}\n')


def add_evaluation_arguments(parser):
    parser.add_argument('--rho', type=float, required=True)
    parser.add_argument('--mu-re', type=float, default=1.)
    parser.add_argument('--mu-im', type=float, default=0.)
    parser.add_argument('--rep', choices=REPS, default='auto',
                        help='a1/a2/a3: representation A under parameterization 1/2/3, '
                             'b: representation B, auto: choose (default)')
    parser.add_argument('--delta1', type=float, default=None)
    parser.add_argument('--delta2', type=float, default=None)
    parser.add_argument('--delta', type=float, default=None)
    parser.add_argument('--eps', type=float, default=0.5,
                        help='ray offset of representation A (default: 0.5)')
    parser.add_argument('--eps1', type=float, default=0.5,
                        help='detour radius of representation B (default: 0.5)')
    parser.add_argument('--theta-pi', action='store_true',
                        help='angles are given in units of pi')

    tol = Tolerances()
    parser.add_argument('--rtol', type=float, default=tol.rtol)
    parser.add_argument('--atol', type=float, default=tol.atol)
    parser.add_argument('--tail-atol', type=float, default=tol.tail_atol)
    parser.add_argument('--max-subdivisions', type=int, default=tol.max_subdivisions)
    parser.add_argument('--t-max-integral', type=float,
                        default=EvalOptions().t_max_integral,
                        help='beyond this modulus the series is used (rep auto)')


def get_parser():
    parser = ArgumentParser(prog=PROG, description='Mittag-Leffler function E_{rho,mu}(z)')
    parser.add_argument('-v', '--verbose', action='count', default=0,
                        help='-v for info, -vv for debug messages (stderr)')
    sub = parser.add_subparsers(dest='command', required=True)

    p = sub.add_parser('eval', help='evaluate at a single point')
    add_evaluation_arguments(p)
    p.add_argument('--t', type=float, required=True, help='modulus of z')
    p.add_argument('--theta', type=float, default=0., help='argument of z (radians)')

    p = sub.add_parser('grid', help='evaluate over a polar grid, CSV output')
    add_evaluation_arguments(p)
    p.add_argument('--t-min', type=float, required=True)
    p.add_argument('--t-max', type=float, required=True)
    p.add_argument('--theta-min', type=float, required=True)
    p.add_argument('--theta-max', type=float, required=True)
    p.add_argument('--n-t', type=int, default=25)
    p.add_argument('--n-theta', type=int, default=25)
    p.add_argument('--jobs', type=int, default=1, help='number of worker processes')
    p.add_argument('--progress', action='store_true', help='progress bar on stderr')
    p.add_argument('--with-reference', action='store_true',
                   help='append the oracle value and the deviation from it')
    p.add_argument('--out', default=None, help='output file (default: stdout)')

    p = sub.add_parser('verify', help='run the acceptance suites')
    p.add_argument('--suite', choices=list(SUITES) + ['all'], default='all')
    p.add_argument('--n', type=int, default=None, help='number of random points')
    p.add_argument('--points', type=int, default=None, help='grid size per axis')
    p.add_argument('--seed', type=int, default=0)
    p.add_argument('--jobs', type=int, default=1, help='number of worker processes')

    return parser


def setup_logging(verbosity):
    if verbosity >= 2:
        level = logging.DEBUG
    elif verbosity == 1:
        level = logging.INFO
    else:
        level = logging.WARNING
    logging.basicConfig(level=level, stream=sys.stderr,
                        format=f'{PROG}: %(levelname)s %(name)s: %(message)s')


def angle(args, value):
    return value*np.pi if args.theta_pi else value


def get_params(args) -> MLParameters:
    return MLParameters(args.rho, args.mu_re, args.mu_im)


def get_options(args) -> EvalOptions:
    tol = Tolerances(rtol=args.rtol, atol=args.atol, tail_atol=args.tail_atol,
                     max_subdivisions=args.max_subdivisions)
    return EvalOptions(tol=tol, t_max_integral=args.t_max_integral)


def get_config(args, params):
    '''
    Returns (rep, config) from the flags; rep None means automatic choice

    Missing angles default to min(π, π/ρ). Representation B without angles
    uses parameterization 3 when ρ > 1, otherwise δ₁ρ = δ₂ρ = π (case 4).
    '''
    upper = delta_upper(params)
    d1 = args.delta1 if args.delta1 is not None else upper
    d2 = args.delta2 if args.delta2 is not None else upper
    has_pair = args.delta1 is not None or args.delta2 is not None

    def contour(mode):
        return ContourConfig(mode, eps=args.eps, eps1=args.eps1)

    if args.rep == 'a1':
        return Rep.A, contour(Param1(d1, d2))
    elif args.rep == 'a2':
        return Rep.A, contour(Param2(args.delta if args.delta is not None else upper))
    elif args.rep == 'a3':
        return Rep.A, contour(Param3())
    elif args.rep == 'b':
        if args.delta is not None:
            return Rep.B, contour(Param2(args.delta))
        elif has_pair:
            return Rep.B, contour(Param1(d1, d2))
        elif params.rho > 1:
            return Rep.B, contour(Param3())
        else:
            return Rep.B, contour(Param1(np.pi, np.pi))
    else:
        if args.delta is not None:
            return None, contour(Param2(args.delta))
        elif has_pair:
            return None, contour(Param1(d1, d2))
        elif (args.eps, args.eps1) != (0.5, 0.5):
            return None, replace(default_config(params), eps=args.eps, eps1=args.eps1)
        return None, None


def format_result(report) -> str:
    value = complex(report.value)
    return '%.17g %.17g %.17g %s' % (value.real, value.imag, report.abs_err, report.method)


def cmd_eval(args) -> int:
    params = get_params(args)
    options = get_options(args)
    rep, config = get_config(args, params)
    z = PolarComplex(args.t, angle(args, args.theta))

    if rep is None:
        report = evaluate(params, z, replace(options, config=config))
    else:
        report = evaluate_explicit(params, config, z, rep, options)

    print(format_result(report))
    if not report.converged:
        print(f'{PROG}: {report.method} did not converge '
              f'(error estimate {report.abs_err:.3e})', file=sys.stderr)
        return EXIT_NUMERICAL
    return EXIT_OK


def cmd_grid(args) -> int:
    params = get_params(args)
    rep, config = get_config(args, params)
    if config is not None:
        validate_config(params, config, Rep.A if rep is None else rep)

    spec = GridSpec(args.t_min, args.t_max,
                    angle(args, args.theta_min), angle(args, args.theta_max),
                    args.n_t, args.n_theta)
    setup = GridSetup(params, rep, config, get_options(args), args.with_reference)

    if args.jobs > 1:
        with Pool(args.jobs) as pool:
            rows = sweep(setup, spec, map_function=pool.imap, progress=args.progress)
    else:
        rows = sweep(setup, spec, progress=args.progress)

    if args.out is None:
        write_csv(rows, sys.stdout, args.with_reference)
    else:
        with TmpManager(overwrite=True) as tm:
            tmpfile = tm.output(args.out)
            with open(tmpfile, 'w', encoding='utf-8', newline='\n') as fd:
                write_csv(rows, fd, args.with_reference)
            tm.commit()
        print(f'Wrote {len(rows)} rows to {args.out}')

    nfailed = sum(row.failed for row in rows)
    if nfailed:
        logger.warning('%d of %d grid points failed', nfailed, len(rows))
    return EXIT_OK


def cmd_verify(args) -> int:
    settings = VerifySettings(points=args.points, n=args.n, seed=args.seed)
    if args.jobs > 1:
        with Pool(args.jobs) as pool:
            results = run_suites([args.suite], settings, map_function=pool.imap)
    else:
        results = run_suites([args.suite], settings)
    print_summary(results)
    return EXIT_OK if all(r.passed for r in results) else EXIT_NUMERICAL


COMMANDS = {
    'eval': cmd_eval,
    'grid': cmd_grid,
    'verify': cmd_verify,
}


def main(argv=None) -> int:
    args = get_parser().parse_args(argv)
    setup_logging(args.verbose)
    try:
        return COMMANDS[args.command](args)
    except ValueError as e:
        # validation errors, inadmissible θ and absence of decay
        print(f'{PROG}: {e}', file=sys.stderr)
        return EXIT_INVALID
    except ArithmeticError as e:
        print(f'{PROG}: numerical failure: {e}', file=sys.stderr)
        return EXIT_NUMERICAL


if __name__ == '__main__':
    sys.exit(main())
