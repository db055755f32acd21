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

import math
import numbers

from .constants import Errors

def validate_not_none(value, name):
    if value is None:
        raise ValueError(Errors.ERROR_VALUE_NONE.format(name))

def validate_positive(value, name):
    validate_not_none(value, name)
    if not value > 0 or not math.isfinite(value):
        raise ValueError(Errors.ERROR_NOT_POSITIVE.format(name, value))

def validate_nonnegative(value, name):
    validate_not_none(value, name)
    if not value >= 0 or not math.isfinite(value):
        raise ValueError(Errors.ERROR_NEGATIVE.format(name, value))

def validate_positive_int(value, name):
    if isinstance(value, bool) or not isinstance(value, numbers.Integral) or value < 1:
        raise ValueError("{} should be an integer >= 1, got {!r}.".format(name, value))

def validate_seed(seed, name='seed'):
    if isinstance(seed, bool) or not isinstance(seed, numbers.Integral):
        raise ValueError("{} should be an integer, got {!r}.".format(name, seed))
    if seed < 0 or seed >= 2 ** 64:
        raise ValueError("{} should be a 64-bit unsigned integer, got {}.".format(name, seed))

def validate_dimension(d):
    if isinstance(d, bool) or not isinstance(d, numbers.Integral) or d < 2:
        raise ValueError(Errors.ERROR_DIMENSION.format(d))

def validate_alpha_beta(alpha, beta):
    validate_not_none(alpha, 'alpha')
    if not alpha < 1:
        raise ValueError(Errors.ERROR_ALPHA.format(alpha))
    validate_nonnegative(beta, 'beta')

def validate_ratio(value, name):
    if not 0 < value < 1:
        raise ValueError("{} should be in (0, 1), got {}.".format(name, value))

def validate_window(window):
    lo, hi = window
    if not lo < hi:
        raise ValueError("window should satisfy lo < hi, got {}.".format(window))

def validate_grid(grid, name):
    if len(grid) < 2:
        raise ValueError("{} needs at least 2 points.".format(name))
    for value in grid:
        validate_positive(value, name)
