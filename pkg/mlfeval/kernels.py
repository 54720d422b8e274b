'''
Integrands of the real-variable representations of E_{ρ,μ}(z)

All kernels take numpy arrays (or scalars) for their integration variable and
broadcast over the other arguments. Complex kernels return Re + i·Im in a
single complex array; a scalar input gives a numpy complex scalar.

The power (tr)^{ρ(1-μ_R)} is always folded into the exponent of the phase
function f before exponentiation, so that large negative μ_R does not
overflow where the product itself is moderate.
'''

import numpy as np

from mlfeval.domain import MLParameters
from mlfeval.errors import SingularDenominator, InvalidParameters

TWO_PI = 2*np.pi


def _tr(r, t):
    return t*np.asarray(r, dtype=float)


def _exponent_f(tr, x, params):
    return tr**params.rho*np.cos(params.rho*x) + params.rho*params.mu_im*x


def _amplitude(tr, x, params):
    '''
    f·(tr)^{ρ(1-μ_R)} computed as a single exponential
    '''
    with np.errstate(over='ignore'):
        return np.exp(_exponent_f(tr, x, params)
                      + params.exponent_at_zero*np.log(tr))


def _check_denominator(den, what):
    if np.any(den == 0):
        raise SingularDenominator(f'{what} vanishes')


def phase_f(r, phi, t, theta, params: MLParameters):
    '''
    f(r,φ,t,θ) = exp{(tr)^ρ cos(ρ(θ+φ)) + ρμ_I(θ+φ)}
    '''
    with np.errstate(over='ignore'):
        return np.exp(_exponent_f(_tr(r, t), theta + np.asarray(phi), params))


def phase_xi(r, phi, t, theta, params: MLParameters):
    '''
    ξ(r,φ,t,θ) = (tr)^ρ sin(ρ(θ+φ)) + ρ(1-μ_R)(θ+φ) - ρμ_I ln(tr)
    '''
    tr = _tr(r, t)
    x = theta + np.asarray(phi)
    rho = params.rho
    return (tr**rho*np.sin(rho*x) + rho*(1 - params.mu_re)*x
            - rho*params.mu_im*np.log(tr))


def pi_rho_phases(r, t, theta, params: MLParameters):
    '''
    Phases (ϱ, ξ′) of the δ_ρ = π/ρ kernel
    '''
    tr = _tr(r, t)
    rho = params.rho
    y = rho*(theta - np.pi)
    varrho = -tr**rho*np.cos(y) + params.mu_im*y
    xi = -tr**rho*np.sin(y) + (1 - params.mu_re)*y - rho*params.mu_im*np.log(tr)
    return varrho, xi


def kernel_K(r, phi1, phi2, t, theta, params: MLParameters):
    '''
    Ray kernel of the two-angle contour, evaluated at angles φ₁ and φ₂
    '''
    r = np.asarray(r, dtype=float)
    tr = _tr(r, t)
    den1 = r*r + 2*r*np.cos(phi1) + 1
    den2 = r*r + 2*r*np.cos(phi2) + 1
    _check_denominator(den1, 'r^2 + 2r cos(phi1) + 1')
    _check_denominator(den2, 'r^2 + 2r cos(phi2) + 1')

    a1 = _amplitude(tr, theta + phi1 - np.pi, params)
    a2 = _amplitude(tr, theta + phi2 - np.pi, params)
    xi1 = phase_xi(r, phi1 - np.pi, t, theta, params)
    xi2 = phase_xi(r, phi2 - np.pi, t, theta, params)

    pref = params.rho/TWO_PI
    re = pref*(a2*(r*np.sin(xi2) + np.sin(xi2 + phi2))/den2
               - a1*(r*np.sin(xi1) + np.sin(xi1 + phi1))/den1)
    im = pref*(a1*(r*np.cos(xi1) + np.cos(xi1 + phi1))/den1
               - a2*(r*np.cos(xi2) + np.cos(xi2 + phi2))/den2)
    return re + 1j*im


def kernel_P(r, phi, t, theta, params: MLParameters):
    '''
    Arc kernel of representation A; vectorized over φ at fixed radius r
    '''
    r = np.asarray(r, dtype=float)
    phi = np.asarray(phi, dtype=float)
    tr = _tr(r, t)
    den = r*r - 2*r*np.cos(phi) + 1
    _check_denominator(den, 'r^2 - 2r cos(phi) + 1')

    amp = _amplitude(tr, theta + phi, params)
    xi = phase_xi(r, phi, t, theta, params)
    scale = params.rho/TWO_PI*r*amp/den
    return scale*((r*np.cos(xi) - np.cos(xi + phi))
                  + 1j*(r*np.sin(xi) - np.sin(xi + phi)))


def kernel_K_sym(r, delta, t, theta, params: MLParameters):
    '''
    Ray kernel for δ₁ρ = δ₂ρ = δ; equal to kernel_K(r, -δ, δ, ...)
    '''
    r = np.asarray(r, dtype=float)
    tr = _tr(r, t)
    den = r*r + 2*r*np.cos(delta) + 1
    _check_denominator(den, 'r^2 + 2r cos(delta) + 1')

    ap = _amplitude(tr, theta + delta - np.pi, params)
    am = _amplitude(tr, theta - delta - np.pi, params)
    xp = phase_xi(r, delta - np.pi, t, theta, params)
    xm = phase_xi(r, -delta - np.pi, t, theta, params)

    scale = params.rho/TWO_PI/den
    re = (ap*(r*np.sin(xp) + np.sin(xp + delta))
          - am*(r*np.sin(xm) + np.sin(xm - delta)))
    im = (am*(r*np.cos(xm) + np.cos(xm - delta))
          - ap*(r*np.cos(xp) + np.cos(xp + delta)))
    return scale*(re + 1j*im)


def kernel_K_pirho(r, t, theta, params: MLParameters):
    '''
    Ray kernel for δ_ρ = π/ρ (ρ ⩾ 1), written with the phases ϱ and ξ′
    '''
    if params.rho < 1:
        raise InvalidParameters(f'the pi/rho kernel needs rho >= 1, got {params.rho!r}')
    r = np.asarray(r, dtype=float)
    tr = _tr(r, t)
    angle = np.pi/params.rho
    den = r*r + 2*r*np.cos(angle) + 1
    _check_denominator(den, 'r^2 + 2r cos(pi/rho) + 1')

    varrho, xi = pi_rho_phases(r, t, theta, params)
    shift = (1 - params.mu_re)*np.pi
    wp = np.exp(params.mu_im*np.pi)
    wm = np.exp(-params.mu_im*np.pi)
    with np.errstate(over='ignore'):
        scale = params.rho/TWO_PI*np.exp(varrho + params.exponent_at_zero*np.log(tr))/den

    xp = xi + shift
    xm = xi - shift
    re = (wp*(r*np.sin(xp) + np.sin(xp + angle))
          - wm*(r*np.sin(xm) + np.sin(xm - angle)))
    im = (wm*(r*np.cos(xm) + np.cos(xm - angle))
          - wp*(r*np.cos(xp) + np.cos(xp + angle)))
    return scale*(re + 1j*im)


def kernel_K_prime(r, delta, t, theta, params: MLParameters):
    '''
    One-sided ray kernel K′(r,δ) along arg ζ = δ - π

    kernel_K_sym(r, δ) = kernel_K_prime(r, δ) - kernel_K_prime(r, -δ)
    '''
    r = np.asarray(r, dtype=float)
    tr = _tr(r, t)
    den = r*r + 2*r*np.cos(delta) + 1
    _check_denominator(den, 'r^2 + 2r cos(delta) + 1')

    amp = _amplitude(tr, theta + delta - np.pi, params)
    xi = phase_xi(r, delta - np.pi, t, theta, params)
    scale = params.rho/TWO_PI*amp/den
    return scale*((r*np.sin(xi) + np.sin(xi + delta))
                  - 1j*(r*np.cos(xi) + np.cos(xi + delta)))


def arc_geometry(tau, psi, k):
    '''
    Point ζ = 1 + τe^{iψ} of the detour arc in polar form (r, φ)

    φ uses the single-argument arctan plus kπ; τ < 1 keeps τcosψ + 1 > 0.
    '''
    if not 0 < tau < 1:
        raise InvalidParameters(f'arc radius tau must be in (0, 1), got {tau!r}')
    psi = np.asarray(psi, dtype=float)
    r = np.sqrt(tau*tau + 2*tau*np.cos(psi) + 1)
    phi = np.arctan(tau*np.sin(psi)/(tau*np.cos(psi) + 1)) + k*np.pi
    return r, phi


def kernel_P_prime(tau, psi, k, t, theta, params: MLParameters):
    '''
    Kernel of the detour arc of radius τ around ζ = 1; vectorized over ψ
    '''
    r, phi = arc_geometry(tau, psi, k)
    den = r*r - 2*r*np.cos(phi) + 1
    _check_denominator(den, 'r^2 - 2r cos(phi) + 1')

    tr = t*r
    rho = params.rho
    x = theta + phi
    amp = _amplitude(tr, x, params)
    xi = (tr**rho*np.sin(rho*x) - rho*params.mu_im*np.log(tr)
          + rho*(1 - params.mu_re)*x + psi)
    scale = rho*tau/TWO_PI*amp/den
    return scale*((r*np.cos(xi - phi) - np.cos(xi))
                  + 1j*(r*np.sin(xi - phi) - np.sin(xi)))
