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

'''Adaptive Gauss-Legendre quadrature on a mesh graded geometrically toward 0.

Radial integrands in this package behave like k^p near k = 0 with p > -1,
sometimes with a crossover at a regularization scale (eps^(1/beta), ...).
Panels of ratio 2 down to a floor resolve the algebraic endpoint behaviour;
the remaining [0, floor] piece is extrapolated from the local power law.
'''
import functools
import heapq
import math

import numpy as np
from scipy.special import roots_legendre

from . import log
from .constants import Quadrature
from .turbdiff_error import QuadratureFailure


@functools.lru_cache(maxsize=8)
def gauss_legendre(npoints):
    nodes, weights = roots_legendre(npoints)
    return np.asarray(nodes, dtype=float), np.asarray(weights, dtype=float)


class QuadratureResult(object):  # pylint: disable=too-few-public-methods
    def __init__(self, value, abs_error, panels, tail):
        self.value = value
        self.abs_error = abs_error
        self.panels = panels
        self.tail = tail

    def __repr__(self):
        return 'QuadratureResult(value={!r}, abs_error={!r}, panels={})'.format(
            self.value, self.abs_error, self.panels)


def _panel_estimates(func, lo, hi, npoints):
    '''Low/high order Gauss-Legendre estimates for a batch of panels.'''
    lo = np.asarray(lo, dtype=float)
    hi = np.asarray(hi, dtype=float)
    half = 0.5 * (hi - lo)
    mid = 0.5 * (hi + lo)
    estimates = []
    for n in (npoints, 2 * npoints):
        nodes, weights = gauss_legendre(n)
        x = mid[:, None] + half[:, None] * nodes[None, :]
        fx = np.asarray(func(x.ravel()), dtype=float).reshape(x.shape)
        if not np.all(np.isfinite(fx)):
            raise QuadratureFailure("Integrand is not finite on the quadrature mesh.",
                                    {'lo': float(lo.min()), 'hi': float(hi.max())})
        estimates.append(half * (fx @ weights))
    low, high = estimates
    return high, np.abs(high - low)


def _origin_tail(func, k0):
    '''Integral over [0, k0] assuming f(k) ~ c k^p just below k0.'''
    f1, f2, f3 = (float(v) for v in np.asarray(func(np.array([k0, k0 / 2, k0 / 4])), dtype=float))
    if f1 == 0 and f2 == 0:
        return 0.0, 0.0
    same_sign = (f1 > 0 and f2 > 0 and f3 > 0) or (f1 < 0 and f2 < 0 and f3 < 0)
    if not same_sign:
        return f1 * k0, (abs(f1) + abs(f2)) * k0

    p12 = math.log(f1 / f2, 2)
    p23 = math.log(f2 / f3, 2)
    if p12 <= -1 or p23 <= -1:
        raise QuadratureFailure("Integrand is not integrable at k = 0.",
                                {'k0': k0, 'local_exponent': p12})
    tail = f1 * k0 / (p12 + 1)
    other = f1 * k0 / (p23 + 1)
    return tail, abs(tail - other)


def _mesh(lo, hi, breakpoints, scales):
    floor = hi * Quadrature.GRADING_RATIO ** (-Quadrature.GRADING_DEPTH)
    for scale in scales:
        if scale > 0:
            floor = min(floor, scale * Quadrature.SCALE_FLOOR_FACTOR)

    points = set([hi])
    point = hi / Quadrature.GRADING_RATIO
    while point > max(lo, floor):
        points.add(point)
        point /= Quadrature.GRADING_RATIO
    for point in list(breakpoints) + list(scales):
        if lo < point < hi:
            points.add(float(point))
    if lo > 0:
        points.add(lo)
    return sorted(points)


def integrate_radial(func, lo, hi, breakpoints=(), scales=(),
                     rtol=Quadrature.RTOL, atol=Quadrature.ATOL, log_context=None):
    '''Integrate a vectorized func over [lo, hi], 0 <= lo.

    :param func: callable taking a 1-D array of k > 0 and returning values.
    :param breakpoints: points where func is not smooth.
    :param scales: crossover scales of the integrand near 0; the mesh is
        graded well below each of them.
    :returns: QuadratureResult with value and absolute error estimate.
    '''
    if lo < 0:
        raise ValueError("lo should be >= 0, got {}".format(lo))
    if hi <= lo:
        return QuadratureResult(0.0, 0.0, 0, 0.0)

    logger = log.Logger('Quadrature', log_context)
    points = _mesh(lo, hi, breakpoints, scales)

    tail, tail_error = 0.0, 0.0
    if lo == 0:
        tail, tail_error = _origin_tail(func, points[0])

    values, errors = _panel_estimates(func, points[:-1], points[1:], Quadrature.GAUSS_POINTS)
    heap = [(-err, a, b, val) for a, b, val, err in zip(points[:-1], points[1:], values, errors)]
    heapq.heapify(heap)
    total = float(np.sum(values)) + tail
    total_error = float(np.sum(errors)) + tail_error

    # the origin tail is not refinable; only panel error drives bisection
    while total_error - tail_error > max(atol, rtol * abs(total)):
        if len(heap) >= Quadrature.MAX_PANELS:
            raise QuadratureFailure(
                "Quadrature did not reach the requested tolerance.",
                {'value': total, 'abs_error': total_error, 'panels': len(heap)})
        neg_err, a, b, val = heapq.heappop(heap)
        mid = 0.5 * (a + b)
        halves, half_errors = _panel_estimates(func, [a, mid], [mid, b], Quadrature.GAUSS_POINTS)
        total += float(halves.sum()) - val
        total_error += float(half_errors.sum()) + neg_err
        heapq.heappush(heap, (-half_errors[0], a, mid, halves[0]))
        heapq.heappush(heap, (-half_errors[1], mid, b, halves[1]))

    # re-sum once to shed the drift of the running updates
    total = math.fsum(item[3] for item in heap) + tail
    total_error = math.fsum(-item[0] for item in heap) + tail_error
    logger.debug("Radial quadrature over [%(lo)s, %(hi)s]: %(panels)s panels, error %(err)s",
                 {'lo': lo, 'hi': hi, 'panels': len(heap), 'err': total_error})
    return QuadratureResult(total, total_error, len(heap), tail)
