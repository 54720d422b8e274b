#!/usr/bin/env python
# -*- coding: utf-8 -*-

'''
Evaluation of E_{ρ,μ}(z) from its real-variable integral representations

* representation A: ray integral over [1+ε, ∞) plus an arc integral at
  radius 1+ε, under parameterizations 1, 2 and 3 (eval_repA_p1/p2/p3)
* representation B: improper integrals from 0, valid for μ_R < 1 + 1/ρ,
  assembled per case (eval_repB)
* evaluate: dispatcher with series fallback

Example:
    params = MLParameters(rho=1, mu_re=0)
    report = evaluate(params, PolarComplex(2, np.pi))
    report.value    # ≈ -2e^{-2}
    report.method   # Method.REPA_P3
'''

import enum
import logging
import typing
from dataclasses import dataclass, field

import numpy as np

from mlfeval import kernels
from mlfeval.domain import (MLParameters, PolarComplex, ContourConfig, Param1,
                            Param2, Param3, Rep, RepBCase, validate_config,
                            classify_case, admissible_theta, check_theta,
                            default_config)
from mlfeval.errors import InvalidParameters, InadmissibleTheta, NoDecay, MLFError
from mlfeval.quadrature import (Tolerances, QuadratureResult, DecaySpec,
                                integrate_finite, integrate_semi_infinite,
                                integrate_endpoint_singular)
from mlfeval.reference import SeriesSettings, series_eval, recip_gamma

logger = logging.getLogger(__name__)


class Method(enum.Enum):
    REPA_P1 = 'RepA_P1'
    REPA_P2 = 'RepA_P2'
    REPA_P3 = 'RepA_P3'
    REPB_CASE1 = 'RepB_Case1'
    REPB_CASE2 = 'RepB_Case2'
    REPB_CASE3 = 'RepB_Case3'
    REPB_CASE4 = 'RepB_Case4'
    REPB_CASE5 = 'RepB_Case5'
    REPB_CASE6 = 'RepB_Case6'
    SERIES = 'Series'
    CLOSED_FORM = 'ClosedForm'

    def __str__(self):
        return self.value

    @classmethod
    def for_case(cls, case: RepBCase) -> 'Method':
        return cls(f'RepB_{case}')


@dataclass
class EvalReport:
    '''
    Value of E_{ρ,μ}(z) with its error estimate and the path taken

    `parts` maps a label of each integral of the assembly to its complex
    contribution; it is empty for Series and ClosedForm.
    '''
    value: complex
    abs_err: float
    method: Method
    warnings: typing.List[str] = field(default_factory=list)
    converged: bool = True
    parts: typing.Dict[str, complex] = field(default_factory=dict)


@dataclass(frozen=True)
class EvalOptions:
    tol: Tolerances = Tolerances()
    series: SeriesSettings = SeriesSettings()
    t_max_integral: float = 50.
    accept_tol: float = 1e-8
    config: typing.Optional[ContourConfig] = None


class _Assembly:
    '''
    Accumulates the signed integrals of one representation
    '''
    def __init__(self):
        self.total = QuadratureResult.zero()
        self.parts = {}

    def add(self, label, result, sign=1):
        result = result.scaled(sign)
        self.total = self.total + result
        self.parts[label] = complex(result.value)
        logger.debug('%s: %r (error %.3e, %d subdivisions)', label,
                     result.value, result.abs_err, result.subdivisions)

    def report(self, method):
        total = self.total
        warnings = []
        if not total.converged:
            warnings.append(f'{method}: quadrature not converged '
                            f'(error estimate {total.abs_err:.3e})')
        elif total.roundoff_limited:
            warnings.append(f'{method}: accuracy limited by rounding '
                            f'(error estimate {total.abs_err:.3e})')
        for w in warnings:
            logger.warning(w)
        return EvalReport(complex(total.value), float(total.abs_err), method,
                          warnings, total.converged, dict(self.parts))


def _require_positive_t(z):
    if not z.t > 0:
        raise InvalidParameters(f'integral representations need t > 0, got {z.t!r}')


def _peaks(*deltas):
    '''
    Radii r = -cos δ where r^2 + 2r cos δ + 1 is smallest
    '''
    return tuple(-np.cos(d) for d in deltas if -np.cos(d) > 0)


def _repA(params, config, z, tol, method, ray, phis, arc_bounds):
    r0 = 1 + config.eps
    t, theta = z.t, z.theta
    out = _Assembly()
    out.add('ray', integrate_semi_infinite(
        lambda r: ray(r, t, theta), r0, DecaySpec(params, t, theta, phis), tol))
    out.add('arc', integrate_finite(
        lambda phi: kernels.kernel_P(r0, phi, t, theta, params), *arc_bounds, tol))
    return out.report(method)


def _prepare(params, config, z, rep, case, mode_type, where):
    if not isinstance(config.mode, mode_type):
        raise InvalidParameters(f'{where} needs a {mode_type.__name__} contour, '
                                f'got {config.mode!r}')
    validate_config(params, config, rep)
    _require_positive_t(z)
    theta = check_theta(z.theta, admissible_theta(params, config, case), where)
    return PolarComplex(z.t, theta)


def eval_repA_p1(params: MLParameters, config: ContourConfig, z: PolarComplex,
                 tol: Tolerances = Tolerances()) -> EvalReport:
    z = _prepare(params, config, z, Rep.A, Rep.A, Param1, 'representation A (P1)')
    d1, d2 = config.mode.delta1, config.mode.delta2
    return _repA(params, config, z, tol, Method.REPA_P1,
                 lambda r, t, theta: kernels.kernel_K(r, -d1, d2, t, theta, params),
                 (-d1, d2), (-d1 - np.pi, d2 - np.pi))


def eval_repA_p2(params: MLParameters, config: ContourConfig, z: PolarComplex,
                 tol: Tolerances = Tolerances()) -> EvalReport:
    z = _prepare(params, config, z, Rep.A, Rep.A, Param2, 'representation A (P2)')
    d = config.mode.delta
    return _repA(params, config, z, tol, Method.REPA_P2,
                 lambda r, t, theta: kernels.kernel_K_sym(r, d, t, theta, params),
                 (-d, d), (-d - np.pi, d - np.pi))


def eval_repA_p3(params: MLParameters, z: PolarComplex,
                 tol: Tolerances = Tolerances(), eps: float = 0.5) -> EvalReport:
    config = ContourConfig(Param3(), eps=eps)
    z = _prepare(params, config, z, Rep.A, Rep.A, Param3, 'representation A (P3)')
    d = np.pi/params.rho
    return _repA(params, config, z, tol, Method.REPA_P3,
                 lambda r, t, theta: kernels.kernel_K_pirho(r, t, theta, params),
                 (-d, d), (-d - np.pi, d - np.pi))


def _from_zero(params, t, theta, kernel, phis, tol, breakpoints=()):
    '''
    ∫_0^∞ kernel(r) dr: endpoint-singular part on [0, 1] and ray from 1
    '''
    head = integrate_endpoint_singular(kernel, params.exponent_at_zero, 1., tol)
    tail = integrate_semi_infinite(kernel, 1., DecaySpec(params, t, theta, phis),
                                   tol, breakpoints=breakpoints)
    return head + tail


def _detour_inner(params, kernel, eps1, tol):
    return integrate_endpoint_singular(kernel, params.exponent_at_zero, 1 - eps1, tol)


def _detour_outer(params, t, theta, kernel, phis, eps1, tol):
    return integrate_semi_infinite(kernel, 1 + eps1, DecaySpec(params, t, theta, phis), tol)


def _detour_arc(params, t, theta, eps1, k, bounds, tol):
    return integrate_finite(
        lambda psi: kernels.kernel_P_prime(eps1, psi, k, t, theta, params), *bounds, tol)


def eval_repB(params: MLParameters, config: ContourConfig, z: PolarComplex,
              tol: Tolerances = Tolerances(), outer_sign: int = 1) -> EvalReport:
    '''
    Representation B, assembled per case (see classify_case)

    `outer_sign` multiplies the ray integral beyond the detour, ∫_{1+ε₁}^∞,
    in cases 3 and 4; +1 reproduces the closed forms.
    '''
    validate_config(params, config, Rep.B)
    case = classify_case(params, config)
    _require_positive_t(z)
    theta = check_theta(z.theta, admissible_theta(params, config, case),
                        f'representation B ({case})')
    t = z.t
    eps1 = config.eps1
    d1, d2 = config.deltas(params)
    logger.debug('representation B %s at t=%g theta=%g', case, t, theta)

    def kprime(delta):
        return lambda r: kernels.kernel_K_prime(r, delta, t, theta, params)

    def ksym(delta):
        return lambda r: kernels.kernel_K_sym(r, delta, t, theta, params)

    out = _Assembly()
    if case is RepBCase.CASE1:
        out.add('ray', _from_zero(
            params, t, theta,
            lambda r: kernels.kernel_K(r, -d1, d2, t, theta, params),
            (-d1, d2), tol, _peaks(d1, d2)))

    elif case is RepBCase.CASE5:
        out.add('ray', _from_zero(params, t, theta, ksym(d1), (-d1, d1), tol, _peaks(d1)))

    elif case is RepBCase.CASE6:
        out.add('ray', _from_zero(
            params, t, theta,
            lambda r: kernels.kernel_K_pirho(r, t, theta, params),
            (-np.pi/params.rho, np.pi/params.rho), tol, _peaks(np.pi/params.rho)))

    elif case is RepBCase.CASE2:
        out.add('ray(delta2)', _from_zero(params, t, theta, kprime(d2), (d2,), tol,
                                          _peaks(d2)))
        out.add('inner(-pi)', _detour_inner(params, kprime(-np.pi), eps1, tol), -1)
        out.add('outer(-pi)', _detour_outer(params, t, theta, kprime(-np.pi), (-np.pi,),
                                            eps1, tol), -1)
        out.add('arc(k=-2)', _detour_arc(params, t, theta, eps1, -2,
                                         (-2*np.pi, -np.pi), tol))

    elif case is RepBCase.CASE3:
        out.add('inner(pi)', _detour_inner(params, kprime(np.pi), eps1, tol))
        out.add('arc(k=0)', _detour_arc(params, t, theta, eps1, 0, (-np.pi, 0.), tol))
        out.add('outer(pi)', _detour_outer(params, t, theta, kprime(np.pi), (np.pi,),
                                           eps1, tol), outer_sign)
        out.add('ray(-delta1)', _from_zero(params, t, theta, kprime(-d1), (-d1,), tol,
                                           _peaks(d1)), -1)

    else:
        out.add('inner(pi)', _detour_inner(params, ksym(np.pi), eps1, tol))
        out.add('arc(k=0)', _detour_arc(params, t, theta, eps1, 0, (-np.pi, 0.), tol))
        out.add('arc(k=-2)', _detour_arc(params, t, theta, eps1, -2,
                                         (-2*np.pi, -np.pi), tol))
        out.add('outer(pi)', _detour_outer(params, t, theta, ksym(np.pi),
                                           (-np.pi, np.pi), eps1, tol), outer_sign)

    return out.report(Method.for_case(case))


def eval_repA(params: MLParameters, config: ContourConfig, z: PolarComplex,
              tol: Tolerances = Tolerances()) -> EvalReport:
    '''
    Representation A under the parameterization of `config`
    '''
    if isinstance(config.mode, Param1):
        return eval_repA_p1(params, config, z, tol)
    elif isinstance(config.mode, Param2):
        return eval_repA_p2(params, config, z, tol)
    else:
        return eval_repA_p3(params, z, tol, eps=config.eps)


def series_report(params: MLParameters, z: PolarComplex,
                  options: EvalOptions = EvalOptions(),
                  warnings: typing.Sequence[str] = ()) -> EvalReport:
    res = series_eval(params, z.to_complex(), options.series)
    return EvalReport(res.value, res.abs_err, Method.SERIES,
                      list(warnings) + res.warnings)


def _series_fallback(params, z, options, warnings=()):
    '''
    Series value for evaluate(); not converged when its error estimate
    exceeds accept_tol·max(1, |value|)
    '''
    report = series_report(params, z, options, warnings)
    if report.abs_err > options.accept_tol*max(1., abs(report.value)):
        msg = (f'series error estimate {report.abs_err:.3e} above the acceptance '
               f'bound at t={z.t:g}, no reliable value')
        logger.warning(msg)
        report.warnings.append(msg)
        report.converged = False
    return report


def evaluate(params: MLParameters, z: PolarComplex,
             options: EvalOptions = EvalOptions()) -> EvalReport:
    '''
    Evaluate E_{ρ,μ}(z), choosing the path

    * t = 0: 1/Γ(μ), method ClosedForm
    * θ strictly inside the admissible interval of representation A (for
      options.config, or default_config) and t <= t_max_integral:
      representation A
    * otherwise, or when the integral result is not converged or its error
      exceeds accept_tol·max(1, |value|): the series

    A series value whose own error estimate exceeds that bound is returned
    with converged=False. Raises SeriesDivergence only if the series fails
    to terminate.
    '''
    if z.t == 0:
        return EvalReport(recip_gamma(params.mu), 0., Method.CLOSED_FORM)

    z = z.canonical()
    warnings = []
    config = options.config if options.config is not None else default_config(params)

    if z.t > options.t_max_integral:
        msg = (f't={z.t:g} beyond t_max_integral={options.t_max_integral:g}, '
               f'using the series')
        logger.warning(msg)
        return _series_fallback(params, z, options, [msg])

    try:
        validate_config(params, config, Rep.A)
        interval = admissible_theta(params, config, Rep.A)
        if not interval.contains(z.theta):
            logger.debug('theta=%g outside (%g, %g), using the series',
                         z.theta, interval.lo, interval.hi)
            return _series_fallback(params, z, options, warnings)
        report = eval_repA(params, config, z, options.tol)
    except (InadmissibleTheta, NoDecay):
        return _series_fallback(params, z, options, warnings)
    except (ArithmeticError, MLFError) as e:
        if isinstance(e, ValueError):
            raise
        msg = f'integral evaluation failed ({e}), using the series'
        logger.warning(msg)
        return _series_fallback(params, z, options, [msg])

    accept = options.accept_tol*max(1., abs(report.value))
    if not report.converged or report.abs_err > accept:
        msg = (f'{report.method} rejected (error estimate {report.abs_err:.3e}, '
               f'converged={report.converged}), using the series')
        logger.warning(msg)
        return _series_fallback(params, z, options, report.warnings + [msg])

    return report


def evaluate_explicit(params: MLParameters, config: ContourConfig, z: PolarComplex,
                      rep: Rep, options: EvalOptions = EvalOptions(),
                      fallback: bool = False) -> EvalReport:
    '''
    Evaluate with the representation `rep` under `config`, no dispatch

    t = 0 gives the exact value 1/Γ(μ) (ClosedForm) whatever the
    representation. With `fallback`, a θ outside the admissible interval is
    handed to the series instead of raising InadmissibleTheta; numerical
    failures are raised in both modes.
    '''
    rep = Rep(rep)
    if z.t == 0:
        return EvalReport(recip_gamma(params.mu), 0., Method.CLOSED_FORM)

    if fallback:
        validate_config(params, config, rep)
        case = classify_case(params, config) if rep is Rep.B else Rep.A
        if not admissible_theta(params, config, case).contains(z.canonical().theta):
            return series_report(params, z, options)

    if rep is Rep.B:
        return eval_repB(params, config, z, options.tol)
    return eval_repA(params, config, z, options.tol)
