#!/usr/bin/env python3
# -*- coding: utf-8 -*-

'''
Integrands: hand-substituted values, pointwise identities and an mpmath
oracle for the two-angle ray kernel
'''

import mpmath
import numpy as np
import pytest

from mlfeval import kernels
from mlfeval.domain import MLParameters
from mlfeval.errors import SingularDenominator, InvalidParameters

PI = np.pi
SIN1_COS1 = np.sin(1) + np.cos(1)


@pytest.mark.parametrize('r,phi,t,theta,mu_im,expected', [
    (1, -PI/2, 1, PI, 0., 1.),
    (1, 0., 1, 0., 0., np.e),
    (2, -PI, 1, PI, 0.5, np.exp(2)),
])
def test_phase_f(r, phi, t, theta, mu_im, expected):
    value = kernels.phase_f(r, phi, t, theta, MLParameters(1, 1, mu_im))
    assert value > 0
    np.testing.assert_allclose(value, expected, rtol=1e-14)


def test_phase_xi():
    np.testing.assert_allclose(
        kernels.phase_xi(1, -PI/2, 1, PI, MLParameters(1, 1)), 1., rtol=1e-14)
    np.testing.assert_allclose(
        kernels.phase_xi(2, 0., 1, PI/2, MLParameters(2, 0.5)), PI/2, rtol=1e-14)
    # ln(tr) = 0: μ_I does not contribute beyond the angle term
    a = kernels.phase_xi(1, 0.3, 1, 2., MLParameters(1.2, 0.4, 0.))
    b = kernels.phase_xi(1, 0.3, 1, 2., MLParameters(1.2, 0.4, 3.))
    assert a == b


def test_pi_rho_phases():
    varrho, xi = kernels.pi_rho_phases(1, 1, PI, MLParameters(1.7, 0.3, 0.2))
    assert (varrho, xi) == (-1., 0.)

    varrho, _ = kernels.pi_rho_phases(1.5, 2., PI, MLParameters(1.3, 0.3))
    np.testing.assert_allclose(varrho, -3.**1.3, rtol=1e-14)

    varrho, xi = kernels.pi_rho_phases(1, 2, 3*PI/2, MLParameters(1, 1))
    np.testing.assert_allclose(varrho, 0., atol=1e-15)
    np.testing.assert_allclose(xi, -2., rtol=1e-14)


def test_kernel_K():
    value = kernels.kernel_K(1, -PI/2, PI/2, 1, PI, MLParameters(1, 1))
    np.testing.assert_allclose(value.real, SIN1_COS1/(2*PI), rtol=1e-14)
    np.testing.assert_allclose(value.imag, 0., atol=1e-15)


def test_kernel_K_symmetric_im():
    # φ₁ = -φ₂, θ = π, μ_I = 0: no imaginary part
    r = np.linspace(0.05, 5, 50)
    params = MLParameters(1.4, 0.3)
    for delta in (0.4*PI, 0.5*PI, 0.7*PI):
        value = kernels.kernel_K(r, -delta, delta, 1.3, PI, params)
        np.testing.assert_allclose(value.imag, 0., atol=1e-14*np.abs(value).max())


def test_kernel_K_mu_re_one_finite_at_zero():
    value = kernels.kernel_K(np.array([1e-12, 1e-8]), -0.6*PI, 0.7*PI, 1.,
                             PI, MLParameters(1, 1))
    assert np.all(np.isfinite(value))


def test_kernel_K_conjugation():
    # real μ: (θ, φ₁, φ₂) -> (2π-θ, -φ₂, -φ₁) conjugates the kernel
    params = MLParameters(1.2, 0.7)
    r = np.linspace(0.1, 4, 40)
    a = kernels.kernel_K(r, -0.6*PI, 0.75*PI, 1.5, 2.9, params)
    b = kernels.kernel_K(r, -0.75*PI, 0.6*PI, 1.5, 2*PI - 2.9, params)
    np.testing.assert_allclose(a, np.conj(b), rtol=1e-11, atol=1e-14)


def mp_kernel_K(r, phi1, phi2, t, theta, rho, mu):
    '''
    Two-angle ray kernel written with mpmath complex exponentials
    '''
    r, t, theta = mpmath.mpf(r), mpmath.mpf(t), mpmath.mpf(theta)

    def branch(phi):
        x = theta + phi - mpmath.pi
        tr = t*r
        amp = mpmath.exp(tr**rho*mpmath.cos(rho*x) + rho*mu.imag*x
                         + rho*(1 - mu.real)*mpmath.log(tr))
        xi = tr**rho*mpmath.sin(rho*x) + rho*(1 - mu.real)*x - rho*mu.imag*mpmath.log(tr)
        den = r*r + 2*r*mpmath.cos(phi) + 1
        return amp*(r*mpmath.exp(1j*xi) + mpmath.exp(1j*(xi + phi)))/den

    b1, b2 = branch(mpmath.mpf(phi1)), branch(mpmath.mpf(phi2))
    # Re: Im of the branches, Im: minus their Re
    pref = rho/(2*mpmath.pi)
    return complex(pref*(b2.imag - b1.imag), pref*(b1.real - b2.real))


@pytest.mark.parametrize('r,phi1,phi2,t,theta,rho,mu', [
    (0.7, -0.8*PI, 0.9*PI, 1.2, 3.0, 1.1, complex(0.4, 0.3)),
    (2.5, -0.6*PI, 0.55*PI, 0.4, 3.5, 1.6, complex(-1.5, -0.8)),
    (1.3, -PI, 0.95*PI, 2.0, 3.2, 0.8, complex(2.2, 0.)),
])
def test_kernel_K_oracle(r, phi1, phi2, t, theta, rho, mu):
    mpmath.mp.dps = 30
    value = kernels.kernel_K(r, phi1, phi2, t, theta, MLParameters(rho, mu.real, mu.imag))
    expected = mp_kernel_K(r, phi1, phi2, t, theta, rho, mu)
    np.testing.assert_allclose(value, expected, rtol=1e-12)


def test_kernel_P():
    value = kernels.kernel_P(2, -PI, 1, PI, MLParameters(1, 1))
    np.testing.assert_allclose(value.real, np.exp(2)/(3*PI), rtol=1e-14)
    np.testing.assert_allclose(value.imag, 0., atol=1e-14)

    # θ = π, φ = -π, μ_I = 0: ξ = 0, no imaginary part
    for r in (1.5, 3.):
        for t in (0.3, 2.):
            value = kernels.kernel_P(r, -PI, t, PI, MLParameters(1.3, 0.4))
            assert abs(value.imag) < 1e-14*abs(value.real)

    with pytest.raises(SingularDenominator):
        kernels.kernel_P(1, 0., 1, PI, MLParameters(1, 1))


def test_kernel_P_small_t():
    value = kernels.kernel_P(1, PI, 1e-10, PI, MLParameters(1, 0.5))
    assert abs(value) < 1e-4


def test_kernel_K_sym():
    params = MLParameters(1, 1)
    np.testing.assert_allclose(kernels.kernel_K_sym(1, PI/2, 1, PI, params),
                               kernels.kernel_K(1, -PI/2, PI/2, 1, PI, params),
                               rtol=1e-14)
    np.testing.assert_allclose(kernels.kernel_K_sym(0.5, 2*PI/3, 1, PI, params),
                               kernels.kernel_K(0.5, -2*PI/3, 2*PI/3, 1, PI, params),
                               rtol=1e-13)
    with pytest.raises(SingularDenominator):
        kernels.kernel_K_sym(1, PI, 1, PI, params)


@pytest.mark.parametrize('rho,mu_re,mu_im', [(1.3, 2.7, 0.), (0.7, -1.2, 0.6),
                                              (2.2, 0.4, -0.9)])
def test_kernel_K_sym_identities(rho, mu_re, mu_im):
    params = MLParameters(rho, mu_re, mu_im)
    rng = np.random.default_rng(1)
    r = rng.uniform(0.05, 4, 200)
    t = 1.7
    for theta in (2.5, PI, 4.):
        for delta in np.linspace(PI/(2*rho) + 0.01, min(PI, PI/rho), 4):
            ks = kernels.kernel_K_sym(r, delta, t, theta, params)
            kp = kernels.kernel_K_prime(r, delta, t, theta, params)
            km = kernels.kernel_K_prime(r, -delta, t, theta, params)
            scale = np.abs(kp) + np.abs(km)
            kk = kernels.kernel_K(r, -delta, delta, t, theta, params)
            assert np.all(np.abs(ks - kk) <= 1e-12*scale)
            assert np.all(np.abs(ks - (kp - km)) <= 1e-12*scale)


def test_kernel_K_pirho():
    # both vanish up to rounding at ρ = 1: compare on the scale of the terms
    params = MLParameters(1, 1)
    scale = (abs(kernels.kernel_K_prime(2, PI, 1, PI, params))
             + abs(kernels.kernel_K_prime(2, -PI, 1, PI, params)))
    assert scale > 0
    assert abs(kernels.kernel_K_pirho(2, 1, PI, params)
               - kernels.kernel_K_sym(2, PI, 1, PI, params)) <= 1e-12*scale
    params = MLParameters(2, 1)
    value = kernels.kernel_K_pirho(1, 1, PI, params)
    assert np.isfinite(value)
    np.testing.assert_allclose(value, kernels.kernel_K_sym(1, PI/2, 1, PI, params),
                               rtol=1e-13)

    params = MLParameters(1.6, -0.4, 0.7)
    r = np.linspace(0.1, 3, 30)
    for theta in (2.4, 3.3):
        np.testing.assert_allclose(kernels.kernel_K_pirho(r, 0.8, theta, params),
                                   kernels.kernel_K_sym(r, PI/1.6, 0.8, theta, params),
                                   rtol=1e-11, atol=1e-15)

    with pytest.raises(InvalidParameters):
        kernels.kernel_K_pirho(1, 1, PI, MLParameters(0.9, 1))
    with pytest.raises(SingularDenominator):
        kernels.kernel_K_pirho(1, 1, PI, MLParameters(1, 1))


def test_kernel_K_prime():
    value = kernels.kernel_K_prime(1, PI/2, 1, PI, MLParameters(1, 1))
    np.testing.assert_allclose(value.real, SIN1_COS1/(4*PI), rtol=1e-14)
    np.testing.assert_allclose(value.imag, -(np.cos(1) - np.sin(1))/(4*PI), rtol=1e-13)

    # δ = 0: ξ(1, -π, 1, π) = 0, no real part
    value = kernels.kernel_K_prime(1, 0., 1, PI, MLParameters(1, 1))
    np.testing.assert_allclose(value.real, 0., atol=1e-15)

    with pytest.raises(SingularDenominator):
        kernels.kernel_K_prime(1, PI, 1, PI, MLParameters(1, 1))


@pytest.mark.parametrize('tau,psi,k,r,phi', [
    (0.5, -PI, 0, 0.5, 0.),
    (0.5, 0., 0, 1.5, 0.),
    (0.5, -PI, -2, 0.5, -2*PI),
])
def test_arc_geometry(tau, psi, k, r, phi):
    rr, pp = kernels.arc_geometry(tau, psi, k)
    np.testing.assert_allclose(rr, r, rtol=1e-14)
    np.testing.assert_allclose(pp, phi, atol=1e-15)


def test_arc_geometry_bounds():
    for tau in (0., 1., 1.5):
        with pytest.raises(InvalidParameters):
            kernels.arc_geometry(tau, 0., 0)


def test_kernel_P_prime():
    value = kernels.kernel_P_prime(0.5, -PI, 0, 1, PI, MLParameters(1, 1))
    np.testing.assert_allclose(value.real, np.exp(-0.5)/(2*PI), rtol=1e-14)
    np.testing.assert_allclose(value.imag, 0., atol=1e-14)

    value = kernels.kernel_P_prime(0.5, 0., 0, 1, PI, MLParameters(1, 1))
    assert np.isfinite(value)


if __name__ == '__main__':
    test_kernel_K()
    test_kernel_P()
    test_kernel_P_prime()
