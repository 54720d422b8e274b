#!/usr/bin/env python
# -*- coding: utf-8 -*-

'''
Polar grid sweeps of E_{ρ,μ}(z)

A sweep maps one evaluation per grid point, with an injectable
`map_function`:
    - `map` for local evaluation
    - `multiprocessing.Pool().imap` for parallel evaluation
The map function must preserve the input order; rows are emitted in
row-major order (t outer, θ inner) whatever the map function.

Example:
    spec = GridSpec(1, 2, 3.0, 3.2, 2, 2)
    setup = GridSetup(MLParameters(1, 0))
    rows = sweep(setup, spec)
    write_csv(rows, sys.stdout)
'''

import logging
import math
import typing
from dataclasses import dataclass, replace

import numpy as np

from mlfeval.domain import MLParameters, PolarComplex, ContourConfig, Rep
from mlfeval.errors import InvalidParameters, MLFError
from mlfeval.progress import Progress
from mlfeval.reference import series_eval, closed_form_rho1
from mlfeval.representations import (EvalOptions, EvalReport, evaluate,
                                     evaluate_explicit)

logger = logging.getLogger(__name__)

HEADER = ('t', 'theta', 're', 'im', 'abs_err', 'method')
REFERENCE_HEADER = ('ref_re', 'ref_im', 'abs_diff')
FAILED = 'Failed'


def fmt(x: float) -> str:
    '''
    17 significant digits: re-parses to the same binary value
    '''
    return '%.17g' % x


@dataclass(frozen=True)
class GridSpec:
    t_min: float
    t_max: float
    theta_min: float
    theta_max: float
    n_t: int
    n_theta: int

    def __post_init__(self):
        for name in ('t_min', 't_max', 'theta_min', 'theta_max'):
            if not math.isfinite(getattr(self, name)):
                raise InvalidParameters(f'{name} must be finite, got {getattr(self, name)!r}')
        if not 0 < self.t_min <= self.t_max:
            raise InvalidParameters(
                f'grid needs 0 < t_min <= t_max, got [{self.t_min!r}, {self.t_max!r}]')
        if not self.theta_min < self.theta_max:
            raise InvalidParameters(
                f'grid needs theta_min < theta_max, got [{self.theta_min!r}, {self.theta_max!r}]')
        if self.n_t < 1 or self.n_theta < 1:
            raise InvalidParameters(
                f'grid counts must be >= 1, got n_t={self.n_t!r}, n_theta={self.n_theta!r}')

    def t_values(self) -> np.ndarray:
        return np.linspace(self.t_min, self.t_max, self.n_t)

    def theta_values(self) -> np.ndarray:
        return np.linspace(self.theta_min, self.theta_max, self.n_theta)

    def points(self) -> typing.List[typing.Tuple[float, float]]:
        '''
        Grid points in row-major order (t outer, θ inner)
        '''
        return [(float(t), float(theta))
                for t in self.t_values()
                for theta in self.theta_values()]

    def __len__(self):
        return self.n_t*self.n_theta


@dataclass(frozen=True)
class GridSetup:
    '''
    Everything a worker needs to evaluate one grid point

    `rep` None lets evaluate() choose the path (config then optional);
    otherwise points inside the admissible interval of `rep` use it and the
    others the series.
    '''
    params: MLParameters
    rep: typing.Optional[Rep] = None
    config: typing.Optional[ContourConfig] = None
    options: EvalOptions = EvalOptions()
    with_reference: bool = False


@dataclass
class GridRow:
    t: float
    theta: float
    value: typing.Optional[complex] = None
    abs_err: typing.Optional[float] = None
    method: str = FAILED
    reference: typing.Optional[complex] = None

    @property
    def failed(self) -> bool:
        return self.method == FAILED

    def fields(self, with_reference=False) -> typing.List[str]:
        out = [fmt(self.t), fmt(self.theta)]
        if self.failed:
            out += ['', '', '', FAILED]
        else:
            out += [fmt(self.value.real), fmt(self.value.imag), fmt(self.abs_err),
                    self.method]
        if with_reference:
            if self.reference is None:
                out += ['', '', '']
            else:
                diff = '' if self.failed else fmt(abs(self.value - self.reference))
                out += [fmt(self.reference.real), fmt(self.reference.imag), diff]
        return out


def reference_value(params: MLParameters, z: PolarComplex,
                    options: EvalOptions = EvalOptions()) -> complex:
    '''
    Oracle value: closed form at ρ = 1 with integer real μ, series otherwise
    '''
    if params.rho == 1 and params.mu_im == 0 and params.mu_re == int(params.mu_re):
        return closed_form_rho1(int(params.mu_re), z.to_complex())
    return series_eval(params, z.to_complex(), options.series).value


def evaluate_point(setup: GridSetup, z: PolarComplex) -> EvalReport:
    if setup.rep is None:
        return evaluate(setup.params, z, replace(setup.options, config=setup.config))
    return evaluate_explicit(setup.params, setup.config, z, setup.rep,
                             setup.options, fallback=True)


def _grid_point(task) -> GridRow:
    '''
    Evaluate one grid point; module level so that it can be pickled
    '''
    setup, t, theta = task
    z = PolarComplex(t, theta)
    row = GridRow(t, theta)
    try:
        report = evaluate_point(setup, z)
    except (ArithmeticError, MLFError) as e:
        if isinstance(e, ValueError):
            raise
        logger.warning('grid point t=%g theta=%g failed: %s', t, theta, e)
    else:
        if report.converged:
            row.value = complex(report.value)
            row.abs_err = float(report.abs_err)
            row.method = str(report.method)
        else:
            logger.warning('grid point t=%g theta=%g not converged (%s)',
                           t, theta, report.method)

    if setup.with_reference:
        try:
            row.reference = complex(reference_value(setup.params, z, setup.options))
        except ArithmeticError as e:
            logger.warning('no reference at t=%g theta=%g: %s', t, theta, e)
    return row


def sweep(setup: GridSetup, spec: GridSpec, map_function=map,
          progress=False) -> typing.List[GridRow]:
    '''
    Evaluate `setup` over all points of `spec`

    Arguments:
        * `map_function`: an order-preserving mapping function, such as `map`
          or `multiprocessing.Pool().imap`
        * `progress`: show a progress bar on stderr
    '''
    tasks = [(setup, t, theta) for t, theta in spec.points()]
    logger.info('sweeping %d points (%d x %d)', len(tasks), spec.n_t, spec.n_theta)

    pbar = Progress(len(tasks), activate=progress)
    rows = []
    for i, row in enumerate(map_function(_grid_point, tasks)):
        rows.append(row)
        pbar.update(i + 1, f'[{i+1}/{len(tasks)}]')
    nfailed = sum(row.failed for row in rows)
    pbar.finish(f'{len(rows)} points, {nfailed} failed')
    return rows


def write_csv(rows: typing.Iterable[GridRow], fd, with_reference=False):
    '''
    Write `rows` as CSV with a header line and '\\n' line endings
    '''
    header = HEADER + (REFERENCE_HEADER if with_reference else ())
    fd.write(','.join(header) + '\n')
    for row in rows:
        fd.write(','.join(row.fields(with_reference)) + '\n')
