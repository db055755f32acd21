#------------------------------------------------------------------------------
#
# Copyright (c) turbdiff contributors.
# All rights reserved.
#
# This code is licensed under the MIT License.
#
# Permission is hereby granted, free of charge, to any person obtaining a copy
# of this software and associated documentation files(the "Software"), to deal
# in the Software without restriction, including without limitation the rights
# to use, copy, modify, merge, publish, distribute, sublicense, and / or sell
# copies of the Software, and to permit persons to whom the Software is
# furnished to do so, subject to the following conditions :
#
# The above copyright notice and this permission notice shall be included in
# all copies or substantial portions of the Software.
#
# THE SOFTWARE IS PROVIDED "AS IS", WITHOUT WARRANTY OF ANY KIND, EXPRESS OR
# IMPLIED, INCLUDING BUT NOT LIMITED TO THE WARRANTIES OF MERCHANTABILITY,
# FITNESS FOR A PARTICULAR PURPOSE AND NONINFRINGEMENT.IN NO EVENT SHALL THE
# AUTHORS OR COPYRIGHT HOLDERS BE LIABLE FOR ANY CLAIM, DAMAGES OR OTHER
# LIABILITY, WHETHER IN AN ACTION OF CONTRACT, TORT OR OTHERWISE, ARISING FROM,
# OUT OF OR IN CONNECTION WITH THE SOFTWARE OR THE USE OR OTHER DEALINGS IN
# THE SOFTWARE.
#
#------------------------------------------------------------------------------

'''Taylor-Kubo diffusivity, its regularized form, Eulerian correlations and
the diffusive/superdiffusive phase classification.

All d-dimensional integrals over k are isotropic, so the angular part is done
in closed form (``angular_factor``) and only a radial integral remains.

Factor-of-2 convention: ``taylor_kubo`` returns the one-sided integral
K_ij = int_0^inf R_ij(t, 0) dt; the Brownian covariance of the limit is
D* = K + K^T = 2K, with E[x_i(t) x_j(t)] = D*_ij t. Every matrix carries a
kind tag and ``DiffusivityMatrix.as_covariance`` is the only conversion.
'''
import math

import numpy as np
from scipy import special

from . import argument
from . import log
from . import spectrum
from .constants import DiffusivityKind, Verdict, Phase, Quadrature, Errors
from .quadrature import integrate_radial
from .turbdiff_error import DimensionTooSmall, DivergentIntegral


class DiffusivityMatrix(object):
    def __init__(self, value, kind, abs_error_estimate=0.0):
        if kind not in (DiffusivityKind.ONE_SIDED, DiffusivityKind.COVARIANCE):
            raise ValueError("Unknown diffusivity kind: {!r}".format(kind))
        self.value = np.asarray(value, dtype=float)
        self.kind = kind
        self.abs_error_estimate = float(abs_error_estimate)

    @property
    def d(self):
        return self.value.shape[0]

    def diagonal(self):
        return np.diag(self.value).copy()

    def as_covariance(self):
        '''D* = K + K^T; a Covariance matrix is returned unchanged.'''
        if self.kind == DiffusivityKind.COVARIANCE:
            return self
        return DiffusivityMatrix(self.value + self.value.T, DiffusivityKind.COVARIANCE,
                                 2 * self.abs_error_estimate)

    def to_dict(self):
        return {
            'kind': self.kind,
            'value': self.value.tolist(),
            'abs_error_estimate': self.abs_error_estimate,
            }

    def __repr__(self):
        return 'DiffusivityMatrix(kind={}, diag={}, err={})'.format(
            self.kind, self.diagonal().tolist(), self.abs_error_estimate)


class PhaseVerdict(object):  # pylint: disable=too-few-public-methods
    def __init__(self, verdict, margin):
        self.verdict = verdict
        self.margin = margin

    def to_dict(self):
        return {'verdict': self.verdict, 'margin': self.margin}

    def __repr__(self):
        return 'PhaseVerdict({}, margin={!r})'.format(self.verdict, self.margin)


def angular_factor(d):
    '''Integral over the unit sphere of a diagonal entry of I - k k / |k|^2.'''
    if isinstance(d, bool) or not isinstance(d, (int, np.integer)) or d < 2:
        raise DimensionTooSmall(Errors.ERROR_DIMENSION.format(d), {'d': d})
    return (d - 1.0) / d * spectrum.sphere_area(d)

def classify_phase(alpha, beta):
    argument.validate_alpha_beta(alpha, beta)
    margin = 1.0 - alpha - beta
    if margin > Phase.TOL_BOUNDARY:
        verdict = Verdict.DIFFUSIVE
    elif margin < -Phase.TOL_BOUNDARY:
        verdict = Verdict.SUPERDIFFUSIVE
    else:
        verdict = Verdict.BOUNDARY
    return PhaseVerdict(verdict, margin)


def _support(params):
    lo, hi = params.shape.support()
    return lo, min(hi, params.cutoff)

def _isotropic_integral(params, radial, scales=(), rtol=Quadrature.RTOL,
                        atol=Quadrature.ATOL, log_context=None):
    '''angular_factor(d) * int radial(k) a(k) k^(1-2 alpha) dk, as (scalar, error).'''
    lo, hi = _support(params)

    def integrand(k):
        return radial(k) * spectrum.radial_density(params, k)

    result = integrate_radial(integrand, lo, hi, breakpoints=params.breakpoints(),
                              scales=scales, rtol=rtol, atol=atol, log_context=log_context)
    factor = angular_factor(params.d)
    return factor * result.value, factor * result.abs_error

def radial_mass(params, lo, hi, rtol=Quadrature.RTOL, atol=Quadrature.ATOL, log_context=None):
    '''int_lo^hi shell_energy(k) dk.'''
    support_lo, support_hi = _support(params)
    lo, hi = max(lo, support_lo), min(hi, support_hi)
    if hi <= lo:
        return 0.0, 0.0

    def integrand(k):
        return spectrum.shell_energy(params, k)

    result = integrate_radial(integrand, lo, hi, breakpoints=params.breakpoints(),
                              rtol=rtol, atol=atol, log_context=log_context)
    return result.value, result.abs_error

def taylor_kubo(params, rtol=Quadrature.RTOL, atol=Quadrature.ATOL, log_context=None):
    '''One-sided Taylor-Kubo matrix K_ij = int_0^inf R_ij(t, 0) dt.

    :raises DivergentIntegral: when alpha + beta >= 1.
    '''
    logger = log.Logger('Kubo', log_context)
    phase = classify_phase(params.alpha, params.beta)
    if phase.verdict != Verdict.DIFFUSIVE:
        raise DivergentIntegral(
            Errors.ERROR_DIVERGENT.format(params.alpha + params.beta, phase.margin),
            {'alpha': params.alpha, 'beta': params.beta, 'margin': phase.margin})

    two_beta = 2 * params.beta
    scalar, error = _isotropic_integral(
        params, lambda k: k ** (-two_beta), rtol=rtol, atol=atol, log_context=log_context)
    logger.debug("Taylor-Kubo scalar %(value)s +- %(err)s", {'value': scalar, 'err': error})
    return DiffusivityMatrix(scalar * np.eye(params.d), DiffusivityKind.ONE_SIDED, error)

def regularized_diffusivity(params, eps, rtol=Quadrature.RTOL, atol=Quadrature.ATOL,
                            log_context=None):
    '''D_eps, finite for every eps > 0; tends to the one-sided K as eps -> 0.'''
    argument.validate_positive(eps, 'eps')
    two_beta = 2 * params.beta
    eps2 = eps * eps
    scales = (eps ** (1.0 / params.beta),) if params.beta > 0 else ()

    def radial(k):
        k2b = k ** two_beta
        return k2b / (k2b + eps2) ** 2

    scalar, error = _isotropic_integral(params, radial, scales, rtol, atol, log_context)
    return DiffusivityMatrix(scalar * np.eye(params.d), DiffusivityKind.ONE_SIDED, error)

def eulerian_correlation(params, t, rtol=Quadrature.RTOL, atol=Quadrature.ATOL,
                         log_context=None):
    '''R(t, 0); at t = 0 the velocity covariance E[V (x) V].'''
    argument.validate_nonnegative(t, 't')
    two_beta = 2 * params.beta
    scales = (t ** (-1.0 / two_beta),) if t > 0 and params.beta > 0 else ()

    def radial(k):
        return np.exp(-(k ** two_beta) * t)

    scalar, _ = _isotropic_integral(params, radial, scales, rtol, atol, log_context)
    return scalar * np.eye(params.d)


def _bessel_kernels(nu, r):
    '''G0 = r^-nu J_nu, G1 = r^-(nu+1) J_(nu+1), G2 = r^-nu J_(nu+2).'''
    r = np.asarray(r, dtype=float)
    small = r < 1e-6
    safe = np.where(small, 1.0, r)
    g0 = np.where(small, 1.0 / (2 ** nu * special.gamma(nu + 1)),
                  special.jv(nu, safe) * safe ** (-nu))
    g1 = np.where(small, 1.0 / (2 ** (nu + 1) * special.gamma(nu + 2)),
                  special.jv(nu + 1, safe) * safe ** (-nu - 1))
    g2 = np.where(small, r * r / (2 ** (nu + 2) * special.gamma(nu + 3)),
                  special.jv(nu + 2, safe) * safe ** (-nu))
    return g0, g1, g2

def two_point_correlation(params, t, x, rtol=Quadrature.RTOL, atol=1e-12, log_context=None):
    '''R_ij(t, x) = int cos(k.x) exp(-|k|^(2 beta) t) R_hat_ij(k) dk.

    The angular integral is the Bessel kernel
    (2 pi)^(d/2) [(G0 - G1) delta_ij + G2 xhat_i xhat_j] at r = |k| |x|.
    '''
    argument.validate_nonnegative(t, 't')
    x = np.asarray(x, dtype=float)
    if x.shape != (params.d,):
        raise ValueError("x should be a {}-vector, got shape {}".format(params.d, x.shape))
    separation = float(np.linalg.norm(x))
    if separation == 0:
        return eulerian_correlation(params, t, rtol, atol, log_context)

    nu = params.d / 2.0 - 1.0
    two_beta = 2 * params.beta
    lo, hi = _support(params)
    scales = (t ** (-1.0 / two_beta),) if t > 0 and params.beta > 0 else ()
    # one breakpoint per oscillation keeps the panels smooth
    period = 2 * math.pi / separation
    breakpoints = params.breakpoints() + list(np.arange(period, hi, period))

    def part(which):
        def integrand(k):
            g0, g1, g2 = _bessel_kernels(nu, k * separation)
            kernel = g0 - g1 if which == 0 else g2
            return kernel * np.exp(-(k ** two_beta) * t) * spectrum.radial_density(params, k)
        return integrate_radial(integrand, lo, hi, breakpoints=breakpoints, scales=scales,
                                rtol=rtol, atol=atol, log_context=log_context).value

    xhat = x / separation
    factor = (2 * math.pi) ** (params.d / 2.0)
    return factor * (part(0) * np.eye(params.d) + part(1) * np.outer(xhat, xhat))
