#!/usr/bin/env python
# -*- coding: utf-8 -*-

'''
Value types of the Mittag-Leffler evaluators, parameter validation and
selection of the admissible argument sector.

Example:
    params = MLParameters(rho=1.3, mu_re=2.7)
    config = ContourConfig(Param2(np.pi/1.3))
    validate_config(params, config, Rep.A)
    interval = admissible_theta(params, config, Rep.A)
    interval.contains(np.pi)   # True
'''

import enum
import math
import typing
from dataclasses import dataclass, field

import numpy as np

from mlfeval.errors import (InvalidParameters, DeltaOutOfRange,
                            MuConstraintViolated, Param3NotAvailable,
                            InadmissibleTheta)

TWO_PI = 2*np.pi


def _finite(name, value):
    if not math.isfinite(value):
        raise InvalidParameters(f'{name} must be finite, got {value!r}')


@dataclass(frozen=True)
class PolarComplex:
    '''
    Argument z = t·exp(iθ); θ is stored as given
    '''
    t: float
    theta: float = 0.

    def __post_init__(self):
        _finite('t', self.t)
        _finite('theta', self.theta)
        if self.t < 0:
            raise InvalidParameters(f'modulus t must be nonnegative, got {self.t!r}')

    def canonical(self) -> 'PolarComplex':
        '''
        Same point with θ brought into [0, 2π)
        '''
        return PolarComplex(self.t, canonical_theta(self.theta))

    def to_complex(self) -> complex:
        return complex(self.t*np.cos(self.theta), self.t*np.sin(self.theta))

    @classmethod
    def from_complex(cls, z: complex) -> 'PolarComplex':
        z = complex(z)
        return cls(abs(z), canonical_theta(np.angle(z)))


def canonical_theta(theta: float) -> float:
    theta = float(np.mod(theta, TWO_PI))
    if theta >= TWO_PI:   # np.mod can round up to 2π for tiny negative inputs
        theta = 0.
    return theta


@dataclass(frozen=True)
class MLParameters:
    '''
    ρ > 1/2 and μ = mu_re + i·mu_im
    '''
    rho: float
    mu_re: float = 1.
    mu_im: float = 0.

    def __post_init__(self):
        for name in ('rho', 'mu_re', 'mu_im'):
            _finite(name, getattr(self, name))
        if not self.rho > 0.5:
            raise InvalidParameters(f'rho must be > 1/2, got {self.rho!r}')

    @property
    def mu(self) -> complex:
        return complex(self.mu_re, self.mu_im)

    @property
    def exponent_at_zero(self) -> float:
        '''
        Power ρ(1-μ_R) of r in the integrands near r = 0
        '''
        return self.rho*(1 - self.mu_re)


@dataclass(frozen=True)
class Param1:
    delta1: float
    delta2: float


@dataclass(frozen=True)
class Param2:
    delta: float


@dataclass(frozen=True)
class Param3:
    pass


Mode = typing.Union[Param1, Param2, Param3]


@dataclass(frozen=True)
class ContourConfig:
    '''
    Integration contour: parameterization `mode`, ray offset `eps` (rep A)
    and detour radius `eps1` around ζ=1 (rep B cases 2-4)
    '''
    mode: Mode = field(default_factory=Param3)
    eps: float = 0.5
    eps1: float = 0.5

    def __post_init__(self):
        if not isinstance(self.mode, (Param1, Param2, Param3)):
            raise InvalidParameters(f'Invalid contour mode {self.mode!r}')
        _finite('eps', self.eps)
        _finite('eps1', self.eps1)
        if not self.eps > 0:
            raise InvalidParameters(f'eps must be > 0, got {self.eps!r}')
        if not 0 < self.eps1 < 1:
            raise InvalidParameters(f'eps1 must be in (0, 1), got {self.eps1!r}')

    def deltas(self, params: MLParameters) -> typing.Tuple[float, float]:
        '''
        Effective (δ₁ρ, δ₂ρ) of the contour
        '''
        if isinstance(self.mode, Param1):
            return self.mode.delta1, self.mode.delta2
        elif isinstance(self.mode, Param2):
            return self.mode.delta, self.mode.delta
        else:
            return np.pi/params.rho, np.pi/params.rho


class Rep(enum.Enum):
    A = 'A'
    B = 'B'


class RepBCase(enum.Enum):
    CASE1 = 1
    CASE2 = 2
    CASE3 = 3
    CASE4 = 4
    CASE5 = 5
    CASE6 = 6

    def __str__(self):
        return f'Case{self.value}'


@dataclass(frozen=True)
class ThetaInterval:
    lo: float
    hi: float
    open: bool = True

    def contains(self, theta: float) -> bool:
        return self.lo < theta < self.hi

    def shrink(self, margin: float) -> 'ThetaInterval':
        if 2*margin >= self.hi - self.lo:
            raise InvalidParameters(
                f'margin {margin!r} leaves nothing of ({self.lo!r}, {self.hi!r})')
        return ThetaInterval(self.lo + margin, self.hi - margin)

    @property
    def width(self) -> float:
        return self.hi - self.lo


def delta_upper(params: MLParameters) -> float:
    return min(np.pi, np.pi/params.rho)


def _check_delta(name, value, params):
    lower = np.pi/(2*params.rho)
    upper = delta_upper(params)
    _finite(name, value)
    if not lower < value <= upper:
        raise DeltaOutOfRange(name, value, lower, upper)


def validate_config(params: MLParameters, config: ContourConfig,
                    rep: Rep) -> ContourConfig:
    '''
    Check `config` against the bounds of representation `rep`

    Returns the config unchanged. For rep B the contour angle bound is the
    same as for rep A (δ ⩽ min(π, π/ρ)); δ = π with ρ ⩽ 1 is what selects
    the detour cases 2-4 in classify_case.
    '''
    rep = Rep(rep)
    mode = config.mode
    if rep is Rep.B and not params.mu_re < 1 + 1/params.rho:
        raise MuConstraintViolated(
            f'representation B needs mu_re < 1 + 1/rho = {1 + 1/params.rho!r}, '
            f'got {params.mu_re!r}')

    if isinstance(mode, Param1):
        _check_delta('delta1', mode.delta1, params)
        _check_delta('delta2', mode.delta2, params)
    elif isinstance(mode, Param2):
        _check_delta('delta', mode.delta, params)
    elif rep is Rep.A:
        if params.rho < 1:
            raise Param3NotAvailable(
                f'parameterization 3 of representation A needs rho >= 1, got {params.rho!r}')
    else:
        if params.rho <= 1:
            raise Param3NotAvailable(
                f'parameterization 3 of representation B needs rho > 1, got {params.rho!r}')

    return config


def classify_case(params: MLParameters, config: ContourConfig) -> RepBCase:
    '''
    Select the rep B assembly for a validated config

    Equal angles given through Param1 keep the two-angle kernel (Case1);
    Param2 selects the single-angle kernel (Case5).
    '''
    if isinstance(config.mode, Param3):
        return RepBCase.CASE6
    d1, d2 = config.deltas(params)
    if params.rho <= 1:
        if d1 == np.pi and d2 == np.pi:
            return RepBCase.CASE4
        if d1 == np.pi:
            return RepBCase.CASE2
        if d2 == np.pi:
            return RepBCase.CASE3
    if params.rho > 1 and d1 == d2 == np.pi/params.rho:
        return RepBCase.CASE6
    if isinstance(config.mode, Param2):
        return RepBCase.CASE5
    return RepBCase.CASE1


def admissible_theta(params: MLParameters, config: ContourConfig,
                     case: typing.Union[Rep, RepBCase] = Rep.A) -> ThetaInterval:
    '''
    Open interval of admissible arg z

    `case` is Rep.A for representation A or a RepBCase for representation B.
    '''
    half = np.pi/(2*params.rho)
    d1, d2 = config.deltas(params)

    if case is RepBCase.CASE2:
        return ThetaInterval(half - d2 + np.pi, TWO_PI - half)
    elif case is RepBCase.CASE3:
        return ThetaInterval(half, -half + d1 + np.pi)
    elif case is RepBCase.CASE4:
        return ThetaInterval(half, TWO_PI - half)
    elif case is RepBCase.CASE6:
        return ThetaInterval(np.pi - half, np.pi + half)
    else:
        # rep A (all parameterizations), Case1 and Case5
        return ThetaInterval(half - d2 + np.pi, -half + d1 + np.pi)


def check_theta(theta: float, interval: ThetaInterval, where='') -> float:
    '''
    Canonicalize θ into [0, 2π) and require it strictly inside `interval`
    '''
    theta_c = canonical_theta(theta)
    if not interval.contains(theta_c):
        raise InadmissibleTheta(theta, interval, where)
    return theta_c


def default_config(params: MLParameters) -> ContourConfig:
    '''
    Widest admissible sector of representation A
    '''
    if params.rho >= 1:
        return ContourConfig(Param3())
    return ContourConfig(Param2(delta_upper(params)))
