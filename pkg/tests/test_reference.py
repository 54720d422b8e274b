#!/usr/bin/env python3
# -*- coding: utf-8 -*-

'''
Oracles: reciprocal gamma against mpmath, the defining series against the
closed forms at ρ = 1 and against e^{z²}erfc(-z) at ρ = 2
'''

import mpmath
import numpy as np
import pytest

from mlfeval.domain import MLParameters
from mlfeval.errors import InvalidParameters, SeriesDivergence
from mlfeval.reference import (recip_gamma, log_recip_gamma, series_eval,
                               closed_form_rho1, SeriesSettings)


@pytest.mark.parametrize('w,expected', [
    (1, 1.),
    (0, 0.),
    (-3, 0.),
    (0.5, 1/np.sqrt(np.pi)),
    (5, 1/24.),
])
def test_recip_gamma_values(w, expected):
    np.testing.assert_allclose(recip_gamma(w), expected, rtol=1e-13, atol=0)


@pytest.mark.parametrize('w', [0.3, -2.5, 7.25, complex(0.5, 1), complex(-3.2, 2.1),
                               complex(9, -4), complex(-0.7, -6)])
def test_recip_gamma_mpmath(w):
    expected = complex(mpmath.rgamma(w))
    np.testing.assert_allclose(recip_gamma(w), expected, rtol=1e-12)


def test_recip_gamma_real():
    assert recip_gamma(-1.5).imag == 0.
    assert recip_gamma(3.3).imag == 0.


def test_log_recip_gamma_pole():
    assert log_recip_gamma(-2).real == -np.inf


def test_reflection():
    rng = np.random.default_rng(0)
    for _ in range(50):
        w = complex(*rng.uniform(-10, 10, 2))
        lhs = recip_gamma(w)*recip_gamma(1 - w)
        rhs = np.sin(np.pi*w)/np.pi
        np.testing.assert_allclose(lhs, rhs, rtol=1e-12)


@pytest.mark.parametrize('rho,mu,z,expected', [
    (1, 1, 1, np.e),
    (1, 2, -1, 1 - np.exp(-1)),
    (1.7, 0.3, 0, 1/mpmath.gamma(0.3)),
])
def test_series_values(rho, mu, z, expected):
    res = series_eval(MLParameters(rho, mu), z)
    np.testing.assert_allclose(res.value, float(expected), rtol=1e-14)
    assert res.abs_err <= 1e-14*max(1, abs(res.value))


@pytest.mark.parametrize('n', range(-2, 5))
@pytest.mark.parametrize('z', [0.5, -2, 7j, complex(-5, 4), 7*np.exp(2.5j)])
def test_series_closed_form(n, z):
    res = series_eval(MLParameters(1, n), z)
    exact = closed_form_rho1(n, z)
    np.testing.assert_allclose(res.value, exact, rtol=1e-10, atol=1e-10)


@pytest.mark.parametrize('z', [0.3, -1.5, complex(1, 2), 2*np.exp(0.7j)])
def test_series_erfc(z):
    # E_{2,1}(z) = e^{z²}erfc(-z)
    expected = complex(mpmath.exp(mpmath.mpc(z)**2)*mpmath.erfc(-mpmath.mpc(z)))
    res = series_eval(MLParameters(2, 1), z)
    np.testing.assert_allclose(res.value, expected, rtol=1e-11)


def test_series_mpmath_complex_mu():
    params = MLParameters(1.3, 2.7, -0.6)
    z = 4*np.exp(2.8j)
    mp_z = mpmath.mpc(z)
    mp_mu = mpmath.mpc(2.7, -0.6)
    mpmath.mp.dps = 30
    expected = complex(mpmath.fsum(mp_z**k*mpmath.rgamma(mp_mu + mpmath.mpf(k)/mpmath.mpf(1.3))
                                   for k in range(200)))
    res = series_eval(params, z)
    np.testing.assert_allclose(res.value, expected, rtol=1e-10, atol=1e-12)


def test_series_symmetry():
    params = MLParameters(0.8, 1.4)
    z = 3*np.exp(1.9j)
    a = series_eval(params, z).value
    b = series_eval(params, np.conj(z)).value
    np.testing.assert_allclose(a, np.conj(b), rtol=1e-15)

    value = series_eval(params, -2.5).value
    assert value.imag == 0


def test_series_pole_terms():
    # μ = -1, ρ = 1: the first two terms vanish
    res = series_eval(MLParameters(1, -1), 2)
    np.testing.assert_allclose(res.value, np.exp(2)*4, rtol=1e-14)


def test_series_warnings():
    res = series_eval(MLParameters(1, 1), -30)
    assert res.warnings
    assert res.abs_err > 1e-16


def test_series_divergence():
    with pytest.raises(SeriesDivergence):
        series_eval(MLParameters(1, 1), 5, SeriesSettings(max_terms=5))


def test_settings():
    with pytest.raises(InvalidParameters):
        SeriesSettings(max_terms=0)


@pytest.mark.parametrize('n,z,expected', [
    (1, -1, np.exp(-1)),
    (0, -2, -2*np.exp(-2)),
    (3, -2, (1 + np.exp(-2))/4),
    (2, 0, 1.),
    (-1, 0, 0.),
])
def test_closed_form(n, z, expected):
    np.testing.assert_allclose(closed_form_rho1(n, z), expected, rtol=1e-14)


def test_closed_form_integer():
    with pytest.raises(InvalidParameters):
        closed_form_rho1(1.5, 1.)


if __name__ == '__main__':
    test_reflection()
    test_series_symmetry()
