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

'''Variance integrals of the first corrector and their small-parameter scaling.

Two parameterizations are exposed, eps and lambda = eps^2. chi1_variance is
eps^2 int shell_energy(k) / (eps^2 + k^(2 beta))^2 dk, the variance of the
eps-scaled corrector; chi1_variance_lambda is the same integral without the
eps^2 prefactor.

The small-eps rate of chi1_variance is min(2, 2 (1 - alpha - beta) / beta)
when the shape reaches k = 0 and 2 otherwise. The second branch is set by the
ultraviolet cutoff; ``bound_exponent`` keeps the cutoff-free rate.
'''
import math

import numpy as np

from . import argument
from . import log
from . import spectrum
from .constants import (CorrectorDefaults, CorrectorOp, Quadrature, ScalingParameter)
from .quadrature import integrate_radial
from .turbdiff_error import DegenerateWindow, GridTooNarrow


def _energy_integral(params, radial, scale, rtol, atol, log_context):
    if params.shape.is_zero():
        return 0.0
    lo, hi = params.shape.support()
    hi = min(hi, params.cutoff)

    def integrand(k):
        return radial(k) * spectrum.shell_energy(params, k)

    scales = (scale,) if scale > 0 and math.isfinite(scale) else ()
    return integrate_radial(integrand, lo, hi, breakpoints=params.breakpoints(), scales=scales,
                            rtol=rtol, atol=atol, log_context=log_context).value


def chi1_variance(params, eps, rtol=Quadrature.RTOL, atol=Quadrature.ATOL, log_context=None):
    argument.validate_positive(eps, 'eps')
    eps2 = eps * eps
    two_beta = 2 * params.beta
    scale = eps ** (1.0 / params.beta) if params.beta > 0 else 0.0

    def radial(k):
        return 1.0 / (eps2 + k ** two_beta) ** 2

    return eps2 * _energy_integral(params, radial, scale, rtol, atol, log_context)

def chi1_variance_lambda(params, lam, rtol=Quadrature.RTOL, atol=Quadrature.ATOL, log_context=None):
    '''int shell_energy(k) / (lambda + k^(2 beta))^2 dk.'''
    argument.validate_positive(lam, 'lambda')
    return chi1_variance(params, math.sqrt(lam), rtol, atol, log_context) / lam

def grad_chi1_variance(params, lam, rtol=Quadrature.RTOL, atol=Quadrature.ATOL, log_context=None):
    '''int k^2 shell_energy(k) / (lambda + k^(2 beta))^2 dk.'''
    argument.validate_positive(lam, 'lambda')
    two_beta = 2 * params.beta
    scale = lam ** (1.0 / two_beta) if params.beta > 0 else 0.0

    def radial(k):
        return k * k / (lam + k ** two_beta) ** 2

    return _energy_integral(params, radial, scale, rtol, atol, log_context)


def _reaches_origin(params):
    return params.shape.support()[0] == 0 and not params.shape.is_zero()

def _in_parameter(lambda_exponent, parameter):
    '''A rate in lambda, restated for `parameter` (lambda = eps^2).'''
    return 2 * lambda_exponent if parameter == ScalingParameter.EPS else lambda_exponent

def bound_exponent(op, params, parameter=ScalingParameter.EPS):
    '''The exponent with the cutoff removed.'''
    alpha, beta = params.alpha, params.beta
    if beta == 0:
        return math.nan
    if op == CorrectorOp.CHI1:
        return _in_parameter((1 - alpha - beta) / beta, parameter)
    return _in_parameter((2 - alpha - 2 * beta) / beta, parameter)

def theory_exponent(op, params, parameter=ScalingParameter.EPS):
    '''Small-parameter exponent of `op` for these params and this finite cutoff.'''
    alpha, beta = params.alpha, params.beta
    if op == CorrectorOp.CHI1:
        exponent = 1.0
        if _reaches_origin(params) and beta > 0:
            exponent = min(1.0, (1 - alpha - beta) / beta)
        return _in_parameter(exponent, parameter)
    if op == CorrectorOp.GRAD_CHI1:
        if beta == 0 or not _reaches_origin(params):
            return 0.0
        return _in_parameter(min(0.0, (2 - alpha - 2 * beta) / beta), parameter)
    raise ValueError("Unknown corrector operation: {!r}".format(op))


class ScalingFit(object):
    def __init__(self, op, parameter, exponent, theory_exponent, bound_exponent, grid, stderr,
                 prefactor):
        self.op = op
        self.parameter = parameter
        self.exponent = exponent
        self.theory_exponent = theory_exponent
        self.bound_exponent = bound_exponent
        self.grid = grid
        self.stderr = stderr
        self.prefactor = prefactor

    @property
    def relative_deviation(self):
        if self.theory_exponent is None or self.theory_exponent == 0:
            return None
        return abs(self.exponent - self.theory_exponent) / abs(self.theory_exponent)

    def to_dict(self):
        return {
            'op': self.op,
            'parameter': self.parameter,
            'exponent': self.exponent,
            'stderr': self.stderr,
            'theory_exponent': self.theory_exponent,
            'bound_exponent': self.bound_exponent,
            'grid': [list(point) for point in self.grid],
            }

    def __repr__(self):
        return 'ScalingFit({}, exponent={!r}, theory={!r})'.format(
            self.op, self.exponent, self.theory_exponent)


def _evaluator(op, params, parameter, log_context):
    if callable(op):
        return op
    if op == CorrectorOp.CHI1:
        if parameter == ScalingParameter.LAMBDA:
            return lambda lam: chi1_variance(params, math.sqrt(lam), log_context=log_context)
        return lambda eps: chi1_variance(params, eps, log_context=log_context)
    if op == CorrectorOp.GRAD_CHI1:
        if parameter == ScalingParameter.EPS:
            return lambda eps: grad_chi1_variance(params, eps * eps, log_context=log_context)
        return lambda lam: grad_chi1_variance(params, lam, log_context=log_context)
    raise ValueError("Unknown corrector operation: {!r}".format(op))


def fit_scaling(op, params, grid, parameter=ScalingParameter.EPS, log_context=None):
    '''Log-log regression of an integral over a grid of eps (or lambda) values.

    :param op: CorrectorOp.CHI1, CorrectorOp.GRAD_CHI1, or a callable of one
        positive argument.
    :raises GridTooNarrow: when the grid spans fewer than 3 decades.
    '''
    argument.validate_grid(grid, 'grid')
    if parameter not in (ScalingParameter.EPS, ScalingParameter.LAMBDA):
        raise ValueError("Unknown scaling parameter: {!r}".format(parameter))
    grid = sorted(set(float(p) for p in grid), reverse=True)
    decades = math.log10(grid[0] / grid[-1])
    if decades < CorrectorDefaults.MIN_DECADES - 1e-9:
        raise GridTooNarrow("Scaling grid spans {:.3g} decades, at least {} are needed.".format(
            decades, CorrectorDefaults.MIN_DECADES), {'decades': decades})

    logger = log.Logger('Corrector', log_context)
    evaluate = _evaluator(op, params, parameter, log_context)
    values = np.array([evaluate(p) for p in grid], dtype=float)
    if np.any(values <= 0):
        raise DegenerateWindow("Scaling values must be positive for a log-log fit.",
                               {'values': values.tolist()})

    x = np.log(grid)
    y = np.log(values)
    # residual-scaled covariance needs more points than parameters + 2
    if len(grid) > 3:
        (slope, intercept), covariance = np.polyfit(x, y, 1, cov=True)
        stderr = float(math.sqrt(max(covariance[0, 0], 0.0)))
    else:
        slope, intercept = np.polyfit(x, y, 1)
        stderr = 0.0

    if callable(op):
        name, theory, bound = getattr(op, '__name__', 'custom'), None, None
    else:
        name, theory, bound = op, theory_exponent(op, params, parameter), bound_exponent(op, params, parameter)
    logger.debug("Fitted %(op)s exponent %(fit)s against %(theory)s",
                 {'op': name, 'fit': slope, 'theory': theory})
    return ScalingFit(name, parameter, float(slope), theory, bound,
                      list(zip(grid, values.tolist())), stderr, float(math.exp(intercept)))


def deepen_scaling(op, params, grid, parameter=ScalingParameter.EPS,
                   step=CorrectorDefaults.DEEPEN_STEP, max_rounds=CorrectorDefaults.DEEPEN_MAX,
                   stable_rtol=CorrectorDefaults.STABLE_RTOL, log_context=None):
    '''Extend the grid toward 0 until the exponent over its last 3 decades settles.'''
    logger = log.Logger('Corrector', log_context)
    grid = sorted(set(float(p) for p in grid), reverse=True)
    window = 10 ** CorrectorDefaults.MIN_DECADES

    def tail(points):
        smallest = points[-1]
        return [p for p in points if p <= smallest * window * (1 + 1e-12)]

    previous = fit_scaling(op, params, tail(grid), parameter, log_context)
    for _ in range(max_rounds):
        grid.append(grid[-1] / step)
        current = fit_scaling(op, params, tail(grid), parameter, log_context)
        change = abs(current.exponent - previous.exponent)
        previous = current
        if change <= stable_rtol * max(abs(current.exponent), 1e-12):
            return current
    logger.warn("Scaling exponent still moving after %(rounds)s deepening rounds",
                {'rounds': max_rounds})
    return previous
