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

'''Model parameters and the power-law spectral density of the velocity field.

Everything downstream (quadrature, field synthesis, correctors) queries the
functions here; nothing else evaluates a(k) or the projector directly.
'''
import hashlib
import json
import math

import numpy as np
from scipy import special

from . import argument
from .constants import ShapeKind, Errors
from .turbdiff_error import ZeroWavevector


class ShapeFn(object):
    '''The compactly supported shape function a(k).

    Only three closed forms exist so that a config file describes a run
    completely. Use the ``indicator``, ``bump`` and ``tabulated`` constructors.
    '''

    def __init__(self, kind, **arguments):
        self.kind = kind
        self.arguments = arguments
        if kind == ShapeKind.INDICATOR:
            self._lo = float(arguments['lo'])
            self._hi = float(arguments['hi'])
            if not 0 <= self._lo < self._hi:
                raise ValueError("Indicator needs 0 <= lo < hi, got ({}, {}).".format(self._lo, self._hi))
        elif kind == ShapeKind.BUMP:
            self._center = float(arguments['center'])
            self._width = float(arguments['width'])
            argument.validate_positive(self._width, 'width')
            self._lo = max(0.0, self._center - self._width)
            self._hi = self._center + self._width
            if self._hi <= 0:
                raise ValueError("Bump support lies entirely below k = 0.")
        elif kind == ShapeKind.TABULATED:
            self._knots = np.asarray(arguments['knots'], dtype=float)
            self._values = np.asarray(arguments['values'], dtype=float)
            if self._knots.ndim != 1 or self._knots.shape != self._values.shape or len(self._knots) < 2:
                raise ValueError("Tabulated needs matching 1-D knots and values, at least 2 of each.")
            if np.any(np.diff(self._knots) <= 0) or self._knots[0] < 0:
                raise ValueError("Tabulated knots must be nonnegative and strictly increasing.")
            if np.any(self._values < 0):
                raise ValueError("Tabulated values must be nonnegative.")
            self._lo = float(self._knots[0])
            self._hi = float(self._knots[-1])
        else:
            raise ValueError("Unknown shape kind: {!r}".format(kind))

    @classmethod
    def indicator(cls, lo, hi):
        return cls(ShapeKind.INDICATOR, lo=lo, hi=hi)

    @classmethod
    def bump(cls, center, width):
        return cls(ShapeKind.BUMP, center=center, width=width)

    @classmethod
    def tabulated(cls, knots, values):
        return cls(ShapeKind.TABULATED, knots=[float(x) for x in knots],
                   values=[float(x) for x in values])

    def __call__(self, k):
        k = np.asarray(k, dtype=float)
        if self.kind == ShapeKind.INDICATOR:
            return np.where((k >= self._lo) & (k <= self._hi), 1.0, 0.0)
        if self.kind == ShapeKind.BUMP:
            u = (k - self._center) / self._width
            return np.where((np.abs(u) < 1) & (k >= 0), (1.0 - u * u) ** 2, 0.0)
        return np.interp(k, self._knots, self._values, left=0.0, right=0.0)

    def support(self):
        return self._lo, self._hi

    def breakpoints(self):
        '''Points where a(k) is not smooth; quadrature panels never straddle them.'''
        if self.kind == ShapeKind.INDICATOR:
            return [self._lo, self._hi]
        if self.kind == ShapeKind.BUMP:
            return [self._lo, self._center, self._hi]
        return [float(x) for x in self._knots]

    def is_zero(self):
        if self.kind == ShapeKind.TABULATED:
            return not np.any(self._values > 0)
        return False

    def validate(self, cutoff):
        if self._hi > cutoff * (1 + 1e-12):
            raise ValueError(Errors.ERROR_SHAPE_SUPPORT.format((self._lo, self._hi), cutoff))

    def rescaled(self, lam):
        '''a(k / lam): the same profile with its support stretched by lam.'''
        argument.validate_positive(lam, 'lam')
        if self.kind == ShapeKind.INDICATOR:
            return ShapeFn.indicator(self._lo * lam, self._hi * lam)
        if self.kind == ShapeKind.BUMP:
            return ShapeFn.bump(self._center * lam, self._width * lam)
        return ShapeFn.tabulated(self._knots * lam, self._values)

    def to_dict(self):
        result = {'kind': self.kind}
        for key in sorted(self.arguments):
            value = self.arguments[key]
            result[key] = [float(x) for x in value] if isinstance(value, (list, tuple, np.ndarray)) else float(value)
        return result

    @classmethod
    def from_dict(cls, data):
        data = dict(data)
        kind = data.pop('kind')
        if kind == ShapeKind.TABULATED:
            return cls.tabulated(data['knots'], data['values'])
        return cls(kind, **data)

    def __eq__(self, other):
        return isinstance(other, ShapeFn) and self.to_dict() == other.to_dict()

    def __ne__(self, other):
        return not self == other

    def __repr__(self):
        return 'ShapeFn({})'.format(self.to_dict())


class ModelParams(object):
    '''The physical model: dimension, spectral exponents, cutoff, shape, seed.'''

    def __init__(self, d, alpha, beta, cutoff, shape, seed=0):
        argument.validate_dimension(d)
        argument.validate_alpha_beta(alpha, beta)
        argument.validate_positive(cutoff, 'cutoff')
        argument.validate_seed(seed)
        if not isinstance(shape, ShapeFn):
            raise ValueError("shape should be a ShapeFn, got {!r}".format(shape))
        shape.validate(cutoff)

        self.d = int(d)
        self.alpha = float(alpha)
        self.beta = float(beta)
        self.cutoff = float(cutoff)
        self.shape = shape
        self.seed = int(seed)

    def with_seed(self, seed):
        return ModelParams(self.d, self.alpha, self.beta, self.cutoff, self.shape, seed)

    def with_exponents(self, alpha, beta):
        return ModelParams(self.d, alpha, beta, self.cutoff, self.shape, self.seed)

    def rescaled(self, lam):
        '''Stretch the shape support and the cutoff by lam (k -> lam k).'''
        return ModelParams(self.d, self.alpha, self.beta, self.cutoff * lam,
                           self.shape.rescaled(lam), self.seed)

    def breakpoints(self):
        return [k for k in self.shape.breakpoints() if 0 < k < self.cutoff] + [self.cutoff]

    def to_dict(self):
        return {
            'd': self.d,
            'alpha': self.alpha,
            'beta': self.beta,
            'cutoff': self.cutoff,
            'shape': self.shape.to_dict(),
            'seed': self.seed,
            }

    @classmethod
    def from_dict(cls, data):
        return cls(data['d'], data['alpha'], data['beta'], data['cutoff'],
                   ShapeFn.from_dict(data['shape']), data.get('seed', 0))

    def digest(self):
        canonical = json.dumps(self.to_dict(), sort_keys=True, separators=(',', ':'))
        return hashlib.sha256(canonical.encode('utf8')).hexdigest()

    def __eq__(self, other):
        return isinstance(other, ModelParams) and self.to_dict() == other.to_dict()

    def __ne__(self, other):
        return not self == other

    def __repr__(self):
        return 'ModelParams({})'.format(self.to_dict())


class SpectralTensor(object):  # pylint: disable=too-few-public-methods
    def __init__(self, k, value):
        self.k = k
        self.value = value


def sphere_area(d):
    '''Surface area S_{d-1} of the unit sphere in R^d.'''
    return 2.0 * math.pi ** (d / 2.0) / special.gamma(d / 2.0)

def energy_normalization(d):
    '''The constant c in shell_energy(k) = c a(k) k^(1 - 2 alpha).'''
    return sphere_area(d) * (d - 1)

def power_law(params, k_norm):
    '''a(|k|) |k|^-(2 alpha + d - 2), the scalar factor of the spectral density.'''
    k_norm = np.asarray(k_norm, dtype=float)
    amplitude = params.shape(k_norm)
    with np.errstate(divide='ignore', invalid='ignore'):
        scalar = amplitude * k_norm ** (-(2 * params.alpha + params.d - 2))
    return np.where((amplitude > 0) & (k_norm <= params.cutoff), scalar, 0.0)

def spectral_density(params, k):
    k = np.asarray(k, dtype=float)
    if k.shape != (params.d,):
        raise ValueError("k should be a {}-vector, got shape {}".format(params.d, k.shape))
    k_norm = float(np.linalg.norm(k))
    if k_norm == 0:
        raise ZeroWavevector("The spectral density is singular at k = 0.", {'k': k.tolist()})

    khat = k / k_norm
    projector = np.eye(params.d) - np.outer(khat, khat)
    return SpectralTensor(k, float(power_law(params, k_norm)) * projector)

def time_correlation(params, k_norm, t):
    argument.validate_positive(k_norm, 'k_norm')
    argument.validate_nonnegative(t, 't')
    return math.exp(-(k_norm ** (2 * params.beta)) * t)

def radial_density(params, k_norm):
    '''a(k) k^(1 - 2 alpha), the radial profile shared by every isotropic integral.'''
    k_norm = np.asarray(k_norm, dtype=float)
    amplitude = params.shape(k_norm)
    with np.errstate(divide='ignore', invalid='ignore'):
        radial = amplitude * k_norm ** (1 - 2 * params.alpha)
    return np.where((amplitude > 0) & (k_norm <= params.cutoff), radial, 0.0)

def shell_energy(params, k_norm):
    return energy_normalization(params.d) * radial_density(params, k_norm)
