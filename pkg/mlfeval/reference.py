'''
Independent oracles: complex reciprocal gamma, the defining power series
E_{ρ,μ}(z) = Σ z^k/Γ(μ+k/ρ) and the elementary closed forms at ρ = 1.
'''

import logging
import math
import typing
from dataclasses import dataclass

import numpy as np

from mlfeval.domain import MLParameters
from mlfeval.errors import InvalidParameters, SeriesDivergence

logger = logging.getLogger(__name__)

EPS = np.finfo(float).eps

# Lanczos approximation, g=7, 9 coefficients
LANCZOS_G = 7
LANCZOS_COEFS = (
    0.99999999999980993,
    676.5203681218851,
    -1259.1392167224028,
    771.32342877765313,
    -176.61502916214059,
    12.507343278686905,
    -0.13857109526572012,
    9.9843695780195716e-6,
    1.5056327351493116e-7,
)
_HALF_LOG_2PI = 0.5*np.log(2*np.pi)


def _is_pole(w: complex) -> bool:
    return w.imag == 0 and w.real <= 0 and w.real == math.floor(w.real)


def _lanczos_log_gamma(w: complex) -> complex:
    # valid for Re w >= 0.5
    w = w - 1
    x = LANCZOS_COEFS[0]
    for i, c in enumerate(LANCZOS_COEFS[1:], start=1):
        x += c/(w + i)
    t = w + LANCZOS_G + 0.5
    return _HALF_LOG_2PI + (w + 0.5)*np.log(t) - t + np.log(x)


def log_recip_gamma(w: complex) -> complex:
    '''
    Logarithm of 1/Γ(w), any branch (only exp of it is meaningful)

    Returns -inf at the poles of Γ.
    '''
    w = complex(w)
    if _is_pole(w):
        return complex(-np.inf, 0.)
    if w.real < 0.5:
        # 1/Γ(w) = Γ(1-w)·sin(πw)/π
        return _lanczos_log_gamma(1 - w) + np.log(np.sin(np.pi*w)/np.pi)
    return -_lanczos_log_gamma(w)


def recip_gamma(w: complex) -> complex:
    '''
    Reciprocal gamma function 1/Γ(w), entire, exactly 0 at w = 0, -1, -2, ...
    '''
    w = complex(w)
    if _is_pole(w):
        return 0j
    if w.imag == 0 and w.real == math.floor(w.real) and w.real <= 171:
        # positive integers: exact
        return complex(1/math.factorial(int(w.real) - 1), 0.)
    value = complex(np.exp(log_recip_gamma(w)))
    if w.imag == 0:
        value = complex(value.real, 0.)
    return value


@dataclass(frozen=True)
class SeriesSettings:
    rel_term_tol: float = 1e-16
    consecutive_small: int = 2
    max_terms: int = 10000
    warn_modulus: float = 20.

    def __post_init__(self):
        if self.max_terms < 1:
            raise InvalidParameters(f'max_terms must be >= 1, got {self.max_terms!r}')
        if self.consecutive_small < 1:
            raise InvalidParameters(
                f'consecutive_small must be >= 1, got {self.consecutive_small!r}')
        if not self.rel_term_tol > 0:
            raise InvalidParameters(
                f'rel_term_tol must be > 0, got {self.rel_term_tol!r}')


@dataclass
class SeriesResult:
    value: complex
    abs_err: float
    terms: int
    warnings: typing.List[str]


def _term(log_z, k, params):
    '''
    k-th term of the series, None at a pole of Γ(μ+k/ρ)
    '''
    w = params.mu + k/params.rho
    if _is_pole(w):
        return None
    return complex(np.exp(k*log_z + log_recip_gamma(w)))


def series_eval(params: MLParameters, z: complex,
                settings: SeriesSettings = SeriesSettings()) -> SeriesResult:
    '''
    Sum the defining series of E_{ρ,μ}(z)

    Stops after `consecutive_small` successive terms below
    rel_term_tol·|partial sum|; terms at poles of Γ are skipped. Terms are formed in log space so that z^k
    and Γ(μ+k/ρ) never overflow on their own. The error estimate is the first
    omitted term plus the rounding bound eps·Σ|terms|.
    '''
    z = complex(z)
    if z == 0:
        return SeriesResult(recip_gamma(params.mu), 0., 1, [])

    log_z = np.log(z)
    total = 0j
    total_abs = 0.
    nsmall = 0
    k = 0
    while True:
        if k >= settings.max_terms:
            raise SeriesDivergence(
                f'series for z={z!r} not converged after {settings.max_terms} terms '
                f'(partial sum {total!r})')
        term = _term(log_z, k, params)
        k += 1
        if term is None:
            continue
        if not np.isfinite(term):
            raise SeriesDivergence(f'non-finite term {k} for z={z!r}')
        total += term
        total_abs += abs(term)
        if abs(term) <= settings.rel_term_tol*abs(total):
            nsmall += 1
            if nsmall >= settings.consecutive_small:
                break
        else:
            nsmall = 0

    omitted = _term(log_z, k, params)
    omitted = 0. if omitted is None else abs(omitted)
    abs_err = omitted + EPS*total_abs

    warnings = []
    if abs(z) > settings.warn_modulus:
        warnings.append(
            f'series at |z|={abs(z):.6g} > {settings.warn_modulus:g}: '
            f'cancellation bound {abs_err:.3e}')
    elif abs_err > 1e-8*max(1., abs(total)):
        warnings.append(f'series error estimate {abs_err:.3e} is large')
    for w in warnings:
        logger.warning(w)
    logger.debug('series at z=%r: %d terms, error %.3e', z, k, abs_err)

    if params.mu_im == 0 and z.imag == 0:
        total = complex(total.real, 0.)

    return SeriesResult(total, abs_err, k, warnings)


def closed_form_rho1(n: int, z: complex) -> complex:
    '''
    Elementary value of E_{1,n}(z) for integer n

        n <= 1: e^z·z^(1-n)
        n >= 2: z^(1-n)·(e^z - Σ_{k=0}^{n-2} z^k/k!)

    At z = 0 the value 1/Γ(n) is returned.
    '''
    if int(n) != n:
        raise InvalidParameters(f'closed form needs an integer n, got {n!r}')
    n = int(n)
    z = complex(z)
    if z == 0:
        return recip_gamma(n)
    if n <= 1:
        return complex(np.exp(z)*z**(1 - n))
    partial = sum(z**k/math.factorial(k) for k in range(n - 1))
    return complex(z**(1 - n)*(np.exp(z) - partial))
