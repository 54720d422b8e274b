#!/usr/bin/env python
# -*- coding: utf-8 -*-

'''
Acceptance suites of the evaluators

Each suite compares the integral representations against an oracle (closed
forms at ρ = 1, the defining series) or against each other, and returns
SuiteResult rows. Evaluations are mapped with an injectable, order-preserving
`map_function` (`map`, or `multiprocessing.Pool().imap`).

Example:
    results = run_suites(['kernels', 'closed-form'], VerifySettings(points=5))
    print_summary(results)
'''

import itertools
import logging
import typing
from dataclasses import dataclass
from datetime import datetime

import numpy as np

from mlfeval import kernels
from mlfeval.domain import (MLParameters, PolarComplex, ContourConfig, Param1,
                            Param2, Param3, Rep, classify_case, admissible_theta,
                            delta_upper)
from mlfeval.errors import (MLFError, MuConstraintViolated, Param3NotAvailable,
                            InadmissibleTheta)
from mlfeval.reference import closed_form_rho1
from mlfeval.representations import (EvalOptions, EvalReport, Method, evaluate,
                                     evaluate_explicit, eval_repA_p3, eval_repB,
                                     series_report)

logger = logging.getLogger(__name__)

PI = np.pi

# relative to max(1, |reference|)
CLOSED_FORM_TOL = 1e-8
NON_INTEGER_TOL = 1e-8
INDEPENDENCE_TOL = 1e-9
KERNEL_TOL = 1e-12
SYMMETRY_TOL = 1e-10
SYMMETRY_ARC_EXPONENT = 8.

@dataclass(frozen=True)
class VerifySettings:
    '''
    Scale of the suites; None keeps each suite's own default
    '''
    points: typing.Optional[int] = None   # grid size per axis
    n: typing.Optional[int] = None        # number of random points
    seed: int = 0

    def grid(self, default):
        return default if self.points is None else self.points

    def count(self, default):
        return default if self.n is None else self.n

    def rng(self, offset=0):
        return np.random.default_rng(self.seed + offset)


@dataclass
class SuiteResult:
    name: str
    max_error: float
    threshold: float
    n_points: int

    @property
    def passed(self) -> bool:
        return bool(self.max_error <= self.threshold)


@dataclass(frozen=True)
class Task:
    '''
    One evaluation: explicit `rep` under `config`, evaluate() if `rep` is
    None, or the series if `series`
    '''
    params: MLParameters
    t: float
    theta: float
    rep: typing.Optional[Rep] = None
    config: typing.Optional[ContourConfig] = None
    series: bool = False

    @property
    def z(self) -> PolarComplex:
        return PolarComplex(self.t, self.theta)


def run_task(task: Task) -> typing.Optional[EvalReport]:
    '''
    Evaluate `task`; None on a numerical failure
    '''
    try:
        if task.series:
            return series_report(task.params, task.z)
        if task.rep is None:
            return evaluate(task.params, task.z, EvalOptions(config=task.config))
        return evaluate_explicit(task.params, task.config, task.z, task.rep)
    except (ArithmeticError, MLFError) as e:
        if isinstance(e, ValueError):
            raise
        logger.warning('evaluation failed for %r: %s', task, e)
        return None


def _value(report):
    if report is None or not report.converged:
        return None
    return report.value


def _rel(value, reference):
    if value is None:
        return np.inf
    return abs(value - reference)/max(1., abs(reference))


def _polar_grid(interval, n, t_min=0.01, t_max=7.):
    inner = interval.shrink(0.05)
    return [(float(t), float(theta))
            for t in np.linspace(t_min, t_max, n)
            for theta in np.linspace(inner.lo, inner.hi, n)]


# (label, mu, representation, contour) at rho = 1
CLOSED_FORM_CASES = [
    ('RepA_P1 mu=0', 0, Rep.A, Param1(PI, PI)),
    ('RepA_P1 mu=3', 3, Rep.A, Param1(PI, PI)),
    ('RepA_P2 mu=2', 2, Rep.A, Param2(PI)),
    ('RepA_P3 mu=4', 4, Rep.A, Param3()),
    ('RepB_Case1 mu=1', 1, Rep.B, Param1(35*PI/36, 35*PI/36)),
    ('RepB_Case2 mu=-1', -1, Rep.B, Param1(PI, 5*PI/6)),
    ('RepB_Case3 mu=1', 1, Rep.B, Param1(5*PI/6, PI)),
    ('RepB_Case4 mu=-2', -2, Rep.B, Param1(PI, PI)),
    ('RepB_Case5 mu=0', 0, Rep.B, Param2(11*PI/12)),
]


def suite_closed_form(settings=VerifySettings(), map_function=map):
    '''
    Representations A and B at ρ = 1 against E_{1,n}(z) in closed form,
    over grids t ∈ [0.01, 7] by the admissible θ interval shrunk by 0.05
    '''
    n = settings.grid(25)
    tasks = []
    exact = []
    for label, mu, rep, mode in CLOSED_FORM_CASES:
        params = MLParameters(1., mu)
        config = ContourConfig(mode)
        case = classify_case(params, config) if rep is Rep.B else Rep.A
        for t, theta in _polar_grid(admissible_theta(params, config, case), n):
            tasks.append(Task(params, t, theta, rep, config))
            exact.append(closed_form_rho1(mu, PolarComplex(t, theta).to_complex()))

    errors = [_rel(_value(r), e) for r, e in zip(map_function(run_task, tasks), exact)]
    return [SuiteResult('closed-form', max(errors), CLOSED_FORM_TOL, len(tasks))]


def _random_point(rng, rho_range, t_range=(0.1, 5.), mu_im_range=(-1., 1.)):
    '''
    Random (params, Param2 contour, θ) with θ well inside the admissible
    interval and μ_R < 1 + 1/ρ
    '''
    rho = rng.uniform(*rho_range)
    params = MLParameters(rho, rng.uniform(-1., 1 + 1/rho - 0.1), rng.uniform(*mu_im_range))
    delta = 0.5*(PI/(2*rho) + delta_upper(params))
    config = ContourConfig(Param2(delta))
    interval = admissible_theta(params, config, Rep.A)
    interval = interval.shrink(0.1*interval.width)
    theta = rng.uniform(interval.lo, interval.hi)
    return params, config, rng.uniform(*t_range), theta


def suite_cross_rep(settings=VerifySettings(), map_function=map):
    '''
    * representation A (P2, δ_ρ = π/ρ) at ρ = 1.3, μ = 2.7 against the series
    * representation A against representation B against the series at random
      complex μ: pairwise within 10× the summed error estimates
    '''
    n = settings.grid(15)
    params = MLParameters(1.3, 2.7)
    config = ContourConfig(Param2(PI/1.3))
    grid = _polar_grid(admissible_theta(params, config, Rep.A), n)
    tasks = []
    for t, theta in grid:
        tasks.append(Task(params, t, theta, Rep.A, config))
        tasks.append(Task(params, t, theta, series=True))
    reports = list(map_function(run_task, tasks))
    errors = [_rel(_value(a), s.value) if s is not None else np.inf
              for a, s in zip(reports[::2], reports[1::2])]
    out = [SuiteResult('cross-rep non-integer', max(errors), NON_INTEGER_TOL, len(grid))]

    rng = settings.rng(1)
    npts = settings.count(20)
    tasks = []
    for _ in range(npts):
        p, c, t, theta = _random_point(rng, (0.6, 2.))
        tasks += [Task(p, t, theta, Rep.A, c), Task(p, t, theta, Rep.B, c),
                  Task(p, t, theta, series=True)]
    reports = list(map_function(run_task, tasks))
    ratios = []
    for i in range(npts):
        for a, b in itertools.combinations(reports[3*i:3*i + 3], 2):
            if _value(a) is None or _value(b) is None:
                ratios.append(np.inf)
                continue
            tol = max(10*(a.abs_err + b.abs_err), 1e-10*max(1., abs(a.value)))
            ratios.append(abs(a.value - b.value)/tol)
    out.append(SuiteResult('cross-rep complex-mu (error/tolerance)',
                           max(ratios, default=0.), 1., npts))
    return out


def suite_independence(settings=VerifySettings(), map_function=map):
    '''
    The value does not depend on ε (representation A), ε₁ (representation B,
    cases 2-4) nor on the contour angles (δ₁ρ, δ₂ρ)
    '''
    rng = settings.rng(2)
    npts = settings.count(20)
    groups = []
    for _ in range(npts):
        rho = rng.uniform(0.6, 1.)
        params = MLParameters(rho, rng.uniform(-1., 1 + 1/rho - 0.2),
                              rng.uniform(-0.5, 0.5))
        half = PI/(2*rho)
        d75 = half + 0.75*(PI - half)
        d50 = half + 0.5*(PI - half)
        # common admissible sector of all contours below
        lo, hi = half - d50 + PI, -half + d50 + PI
        margin = 0.1*(hi - lo)
        t = rng.uniform(0.1, 5.)
        theta = rng.uniform(lo + margin, hi - margin)

        tasks = [Task(params, t, theta, Rep.A, ContourConfig(Param1(PI, PI), eps=eps))
                 for eps in (0.1, 0.5, 1.0)]
        tasks += [Task(params, t, theta, Rep.A, ContourConfig(Param1(d1, d2)))
                  for d1, d2 in ((d75, d50), (d50, d75), (d50, d50))]
        tasks += [Task(params, t, theta, Rep.B, ContourConfig(mode, eps1=eps1))
                  for mode in (Param1(PI, d50), Param1(d50, PI), Param1(PI, PI))
                  for eps1 in (0.3, 0.5, 0.7)]
        groups.append(tasks)

    sizes = [len(g) for g in groups]
    reports = iter(map_function(run_task, [task for g in groups for task in g]))
    errors = []
    for size in sizes:
        values = [_value(next(reports)) for _ in range(size)]
        if any(v is None for v in values):
            errors.append(np.inf)
            continue
        scale = max(1., abs(values[0]))
        errors.append(max(abs(a - b) for a, b in itertools.combinations(values, 2))/scale)
    return [SuiteResult('independence', max(errors, default=0.), INDEPENDENCE_TOL, npts)]


def _sym_and_scale(r, delta, t, theta, params):
    kp = kernels.kernel_K_prime(r, delta, t, theta, params)
    km = kernels.kernel_K_prime(r, -delta, t, theta, params)
    scale = max(abs(kp) + abs(km), np.finfo(float).tiny)
    return kernels.kernel_K_sym(r, delta, t, theta, params), scale


def suite_kernels(settings=VerifySettings(), map_function=map):
    '''
    Pointwise identities between the ray kernels, relative to the magnitude
    |K′(r,δ)| + |K′(r,-δ)| of the two half contributions

    * kernel_K_sym(r, δ) = kernel_K(r, -δ, δ)
    * kernel_K_sym(r, δ) = K′(r, δ) - K′(r, -δ)
    * kernel_K_pirho(r) = kernel_K_sym(r, π/ρ) for ρ ⩾ 1
    '''
    rng = settings.rng(3)
    n = settings.count(10000)
    worst = 0.
    for _ in range(n):
        rho = rng.uniform(0.6, 2.5)
        params = MLParameters(rho, rng.uniform(-2., 3.), rng.uniform(-1., 1.))
        r = rng.uniform(0.05, 4.)
        t = rng.uniform(0.1, 2.)
        theta = rng.uniform(0., 2*PI)
        delta = rng.uniform(PI/(2*rho), delta_upper(params))

        ks, scale = _sym_and_scale(r, delta, t, theta, params)
        worst = max(worst,
                    abs(ks - kernels.kernel_K(r, -delta, delta, t, theta, params))/scale,
                    abs(ks - (kernels.kernel_K_prime(r, delta, t, theta, params)
                              - kernels.kernel_K_prime(r, -delta, t, theta, params)))/scale)
        if rho >= 1:
            ks, scale = _sym_and_scale(r, PI/rho, t, theta, params)
            worst = max(worst,
                        abs(ks - kernels.kernel_K_pirho(r, t, theta, params))/scale)
    return [SuiteResult('kernels', worst, KERNEL_TOL, n)]


def symmetry_t_max(rho, eps=0.5, t_max=7.):
    '''
    Largest modulus sampled by the symmetry suite: the arc kernel at radius
    1+ε grows like exp{((1+ε)t)^ρ}, kept below e^SYMMETRY_ARC_EXPONENT
    '''
    return min(t_max, SYMMETRY_ARC_EXPONENT**(1/rho)/(1 + eps))


def suite_symmetry(settings=VerifySettings(), map_function=map):
    '''
    For real μ: E(π+a) and E(π-a) are conjugate, E at θ = π is real

    Reported as deviation over max(SYMMETRY_TOL·max(1, |E|), summed error
    estimates), threshold 1.
    '''
    rng = settings.rng(4)
    npts = settings.count(100)
    tasks = []
    for _ in range(npts):
        params = MLParameters(rng.uniform(0.6, 2.), rng.uniform(-2., 3.))
        t = rng.uniform(0.01, symmetry_t_max(params.rho))
        a = rng.uniform(0., PI)
        tasks += [Task(params, t, PI + a), Task(params, t, PI - a), Task(params, t, PI)]
    reports = list(map_function(run_task, tasks))
    ratios = []
    for i in range(npts):
        plus, minus, axis = reports[3*i:3*i + 3]
        if _value(plus) is None or _value(minus) is None or _value(axis) is None:
            ratios.append(np.inf)
            continue
        tol = max(SYMMETRY_TOL*max(1., abs(plus.value)), plus.abs_err + minus.abs_err)
        ratios.append(abs(plus.value - np.conj(minus.value))/tol)
        tol = max(SYMMETRY_TOL*max(1., abs(axis.value)), axis.abs_err)
        ratios.append(abs(axis.value.imag)/tol)
    return [SuiteResult('symmetry (error/tolerance)', max(ratios, default=0.), 1., npts)]


def _raises(exc, func, *args, **kwargs):
    try:
        func(*args, **kwargs)
    except exc:
        return True
    except Exception as e:
        logger.warning('expected %s, got %r', exc.__name__, e)
        return False
    logger.warning('expected %s, nothing raised', exc.__name__)
    return False


def guard_checks() -> typing.Dict[str, bool]:
    '''
    Named guard checks, True when the guard holds
    '''
    checks = {}
    p = MLParameters(1., 2.)
    z = PolarComplex(1., PI)
    checks['rep B rejects mu_re = 1 + 1/rho'] = _raises(
        MuConstraintViolated, eval_repB, p, ContourConfig(Param1(PI, PI)), z)
    checks['rep B rejects mu_re > 1 + 1/rho'] = _raises(
        MuConstraintViolated, eval_repB, MLParameters(1.5, 3.), ContourConfig(), z)
    checks['rep A P3 rejects rho < 1'] = _raises(
        Param3NotAvailable, eval_repA_p3, MLParameters(0.8, 1.), z)
    checks['endpoint theta rejected'] = _raises(
        InadmissibleTheta, eval_repA_p3, MLParameters(1., 1.), PolarComplex(1., PI/2))

    # large t: either an accurate integral or a flagged series value
    params = MLParameters(1., 1.)
    for t_max in (50., np.inf):
        z = PolarComplex(200., PI - 0.3)
        report = evaluate(params, z, EvalOptions(t_max_integral=t_max))
        exact = closed_form_rho1(1, z.to_complex())
        flagged = report.method is Method.SERIES and len(report.warnings) > 0
        checks[f't=200 (t_max_integral={t_max:g}) flagged or accurate'] = (
            flagged or _rel(report.value, exact) <= CLOSED_FORM_TOL)
    return checks


def suite_guards(settings=VerifySettings(), map_function=map):
    '''
    max_error is the number of failed guard checks
    '''
    checks = guard_checks()
    for name, ok in checks.items():
        logger.info('guard %s: %s', name, 'ok' if ok else 'FAILED')
    nfailed = sum(not ok for ok in checks.values())
    return [SuiteResult('guards', float(nfailed), 0., len(checks))]


SUITES = {
    'closed-form': suite_closed_form,
    'cross-rep': suite_cross_rep,
    'independence': suite_independence,
    'kernels': suite_kernels,
    'symmetry': suite_symmetry,
    'guards': suite_guards,
}


def run_suites(names: typing.Iterable[str], settings=VerifySettings(),
               map_function=map) -> typing.List[SuiteResult]:
    '''
    Run the named suites ('all' runs every suite) and return their results
    '''
    names = list(names)
    if 'all' in names:
        names = list(SUITES)
    results = []
    for name in names:
        if name not in SUITES:
            raise ValueError(f'Invalid suite {name}')
        start = datetime.now()
        results += SUITES[name](settings, map_function)
        logger.info('suite %s done in %s', name, datetime.now() - start)
    return results


def print_summary(results: typing.Sequence[SuiteResult]):
    for res in results:
        status = 'PASS' if res.passed else 'FAIL'
        print(f'{res.name:40s} max_error={res.max_error:.3e} '
              f'threshold={res.threshold:.1e} points={res.n_points} {status}')
    npassed = sum(r.passed for r in results)
    print(f'{npassed}/{len(results)} passed')
