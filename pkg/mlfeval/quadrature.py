'''
Adaptive Gauss-Kronrod quadrature (7-point Gauss / 15-point Kronrod) and
the improper-integral helpers built on it.

Integrands are vectorized: they receive a numpy array of abscissas and
return an array of real or complex values of the same shape.

Example:
    res = integrate_finite(np.sin, 0, np.pi)
    res.value, res.abs_err, res.converged
'''

import heapq
import logging
import math
import typing
from dataclasses import dataclass

import numpy as np

from mlfeval.domain import MLParameters
from mlfeval.errors import (InvalidParameters, NoDecay, NonIntegrable,
                            NonFiniteEvaluation, MaxSubdivisionsExceeded)

logger = logging.getLogger(__name__)

EPS = np.finfo(float).eps

# Kronrod abscissas (positive half, decreasing) and weights
_XGK = np.array([
    0.991455371120812639206854697526329,
    0.949107912342758524526189684047851,
    0.864864423359769072789712788640926,
    0.741531185599394439863864773280788,
    0.586087235467691130294144845693013,
    0.405845151377397166906606412076961,
    0.207784955007898467600689403773245,
    0.000000000000000000000000000000000,
])
_WGK = np.array([
    0.022935322010529224963732008058970,
    0.063092092629978553290700663189204,
    0.104790010322250183839876322541518,
    0.140653259715525918745189590510238,
    0.169004726639267902826583426598550,
    0.190350578064785409913256402421014,
    0.204432940075298892414161999234649,
    0.209482141084727828012999174891714,
])
# Gauss weights of the nodes _XGK[1], _XGK[3], _XGK[5], _XGK[7]
_WG = np.array([
    0.129484966168869693270611432679082,
    0.279705391489276667901467771423780,
    0.381830050505118944950369775488975,
    0.417959183673469387755102040816327,
])

# full 15-point rule on [-1, 1]
NODES = np.concatenate([-_XGK[:-1], _XGK[::-1]])
WEIGHTS_K = np.concatenate([_WGK[:-1], _WGK[::-1]])
_wg_half = np.zeros(8)
_wg_half[1::2] = _WG
WEIGHTS_G = np.concatenate([_wg_half[:-1], _wg_half[::-1]])


@dataclass(frozen=True)
class Tolerances:
    rtol: float = 1e-10
    atol: float = 1e-12
    max_subdivisions: int = 2000
    tail_atol: float = 1e-14

    def __post_init__(self):
        if not self.rtol >= 1e-14:
            raise InvalidParameters(f'rtol must be >= 1e-14, got {self.rtol!r}')
        if not self.atol > 0:
            raise InvalidParameters(f'atol must be > 0, got {self.atol!r}')
        if not self.tail_atol > 0:
            raise InvalidParameters(f'tail_atol must be > 0, got {self.tail_atol!r}')
        if self.max_subdivisions < 1:
            raise InvalidParameters(
                f'max_subdivisions must be >= 1, got {self.max_subdivisions!r}')


@dataclass(frozen=True)
class QuadratureResult:
    '''
    converged implies abs_err <= max(atol, rtol*|value|), unless
    roundoff_limited: then abs_err is dominated by the rounding floor of the
    integrand magnitude and cannot be reduced by further bisection.
    '''
    value: typing.Union[float, complex]
    abs_err: float
    subdivisions: int
    converged: bool
    roundoff_limited: bool = False

    def __add__(self, other):
        if not isinstance(other, QuadratureResult):
            return NotImplemented
        return QuadratureResult(
            self.value + other.value,
            self.abs_err + other.abs_err,
            self.subdivisions + other.subdivisions,
            self.converged and other.converged,
            self.roundoff_limited or other.roundoff_limited)

    def __neg__(self):
        return self.scaled(-1)

    def __sub__(self, other):
        return self + (-other)

    def scaled(self, factor):
        return QuadratureResult(factor*self.value, abs(factor)*self.abs_err,
                                self.subdivisions, self.converged,
                                self.roundoff_limited)

    @classmethod
    def zero(cls, abs_err=0.):
        return cls(0., abs_err, 0, True)


def _gk15(f, a, b):
    '''
    One Gauss-Kronrod panel: (value, error, rounding floor)
    '''
    center = 0.5*(a + b)
    half = 0.5*(b - a)
    fv = np.asarray(f(center + half*NODES))
    if not np.all(np.isfinite(fv)):
        raise NonFiniteEvaluation(f'integrand is not finite on [{a!r}, {b!r}]')

    resk = np.sum(WEIGHTS_K*fv)
    resg = np.sum(WEIGHTS_G*fv)
    mean = 0.5*resk
    resabs = abs(half)*np.sum(WEIGHTS_K*np.abs(fv))
    resasc = abs(half)*np.sum(WEIGHTS_K*np.abs(fv - mean))

    err = abs((resk - resg)*half)
    if resasc != 0 and err != 0:
        err = resasc*min(1., (200*err/resasc)**1.5)
    floor = 50*EPS*resabs
    err = max(err, floor)
    return resk*half, err, floor


def _adaptive(f, edges, tol):
    '''
    Global adaptive bisection over the panels between consecutive `edges`

    Returns (value, error, floor, panels, done). All panels share one error
    budget max(atol, rtol·|value|); the totals are summed from the panel
    list at every step.
    '''
    heap = []
    for lo, hi in zip(edges[:-1], edges[1:]):
        value, err, floor = _gk15(f, lo, hi)
        heap.append((floor - err, lo, hi, value, err, floor))
    heapq.heapify(heap)

    def totals():
        value = sum(p[3] for p in heap)
        return value, math.fsum(p[4] for p in heap), math.fsum(p[5] for p in heap)

    def done(value, err, floor):
        target = max(tol.atol, tol.rtol*abs(value))
        return err <= target or err - floor <= target

    value, err, floor = totals()
    while not done(value, err, floor) and len(heap) < tol.max_subdivisions:
        panel = heapq.heappop(heap)
        _, a1, b1, _, _, _ = panel
        m = 0.5*(a1 + b1)
        if not a1 < m < b1:
            # no representable midpoint
            heapq.heappush(heap, panel)
            break
        for lo, hi in ((a1, m), (m, b1)):
            v, e, fl = _gk15(f, lo, hi)
            heapq.heappush(heap, (fl - e, lo, hi, v, e, fl))
        value, err, floor = totals()

    return value, err, floor, len(heap), done(value, err, floor)


def _finish(a, b, tol, value, err, floor, nsub, converged, strict):
    target = max(tol.atol, tol.rtol*abs(value))
    roundoff = converged and err > target
    res = QuadratureResult(complex(value) if np.iscomplexobj(value) else float(value),
                           float(err), nsub, bool(converged), bool(roundoff))

    if not converged:
        logger.warning('quadrature on [%g, %g] not converged after %d subdivisions '
                       '(error %.3e)', a, b, nsub, err)
        if strict:
            raise MaxSubdivisionsExceeded(
                f'no convergence on [{a!r}, {b!r}] after {nsub} subdivisions', res)
    elif roundoff:
        logger.debug('quadrature on [%g, %g] limited by rounding (error %.3e)',
                     a, b, err)
    return res


def integrate_finite(f: typing.Callable, a: float, b: float,
                     tol: Tolerances = Tolerances(),
                     strict: bool = False) -> QuadratureResult:
    '''
    Adaptive bisection with a 7/15-point Gauss-Kronrod pair

    The panel with the largest reducible error (estimate minus its rounding
    floor) is bisected until the summed estimate meets
    max(atol, rtol·|value|), or until the reducible part does and the rest is
    rounding (then roundoff_limited is set). With `strict`, a non-converged
    result raises MaxSubdivisionsExceeded instead of being returned with
    converged=False.
    '''
    if not a < b:
        raise InvalidParameters(f'integration bounds must satisfy a < b, got [{a!r}, {b!r}]')
    return _finish(a, b, tol, *_adaptive(f, [a, b], tol), strict)


def _decay_coefficient(params, theta, phi):
    return math.cos(params.rho*(theta + phi - np.pi))


def truncation_radius(params: MLParameters, t: float, theta: float,
                      phis: typing.Sequence[float], tail_atol: float) -> float:
    '''
    Radius R beyond which the ray integrands are below `tail_atol`

    The integrands behave like exp{(tr)^ρ c(φ)} times a power of tr, with
    c(φ) = cos(ρ(θ+φ-π)) for each kernel angle φ. With c_max the largest
    coefficient, R = (1/t)·(L/|c_max|)^{1/ρ}.
    '''
    if not t > 0:
        raise InvalidParameters(f'truncation radius needs t > 0, got {t!r}')
    c_max = max(_decay_coefficient(params, theta, phi) for phi in phis)
    if c_max >= 0:
        raise NoDecay(f'integrand does not decay at infinity (theta={theta!r}, '
                      f'c_max={c_max!r})')

    rho = params.rho
    growth = max(0., params.exponent_at_zero)
    twist = rho*abs(params.mu_im)*max(abs(theta + phi - np.pi) for phi in phis)
    base = -math.log(tail_atol) + twist + 10 + max(0., -math.log(t))

    level = base
    for _ in range(3):
        radius = (level/abs(c_max))**(1/rho)/t
        level = base + growth*max(0., math.log(t*radius))
    return (level/abs(c_max))**(1/rho)/t


@dataclass(frozen=True)
class DecaySpec:
    '''
    Inputs of truncation_radius for one ray integral
    '''
    params: MLParameters
    t: float
    theta: float
    phis: typing.Tuple[float, ...]

    def radius(self, tail_atol):
        return truncation_radius(self.params, self.t, self.theta, self.phis, tail_atol)


def _panel_edges(a, upper, breakpoints):
    edges = [a]
    width = 1.
    x = a + width
    while x < upper:
        edges.append(x)
        x += width
        width *= 2
    edges.append(upper)
    extra = [p for p in breakpoints if a < p < upper]
    return sorted(set(edges) | set(extra))


def integrate_semi_infinite(f: typing.Callable, a: float,
                            decay: typing.Union[DecaySpec, float],
                            tol: Tolerances = Tolerances(),
                            breakpoints: typing.Sequence[float] = ()) -> QuadratureResult:
    '''
    Integral over [a, ∞), truncated at a radius where the integrand is
    negligible

    `decay` is either a DecaySpec or an explicit truncation radius. The
    interval is split into panels [a, a+1], [a+1, a+2], [a+2, a+4], ...
    (plus the optional `breakpoints`), refined together under one error
    budget; convergence is decided on the sum. The reported error includes
    tail_atol.
    '''
    if isinstance(decay, DecaySpec):
        upper = decay.radius(tol.tail_atol)
    else:
        upper = float(decay)

    if upper <= a:
        logger.debug('truncation radius %g below lower bound %g', upper, a)
        return QuadratureResult.zero(tol.tail_atol)

    edges = _panel_edges(a, upper, breakpoints)
    logger.debug('semi-infinite integral from %g truncated at %g (%d panels)',
                 a, upper, len(edges) - 1)
    res = _finish(a, upper, tol, *_adaptive(f, edges, tol), False)
    return QuadratureResult.zero(tol.tail_atol) + res


def integrate_endpoint_singular(f: typing.Callable, exponent_at_zero: float,
                                b: float,
                                tol: Tolerances = Tolerances()) -> QuadratureResult:
    '''
    Integral over [0, b] of f behaving like r^e₀ at r = 0

    For e₀ < 0 the substitution r = u^p with p = ⌈2/(1+e₀)⌉ makes the
    integrand bounded at 0.
    '''
    e0 = exponent_at_zero
    if e0 <= -1:
        raise NonIntegrable(f'r^{e0!r} is not integrable at 0')
    if e0 >= 0:
        return integrate_finite(f, 0., b, tol)

    p = math.ceil(2/(1 + e0))

    def transformed(u):
        return p*u**(p - 1)*f(u**p)

    return integrate_finite(transformed, 0., b**(1/p), tol)
