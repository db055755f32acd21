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
import unittest
from unittest import mock

import numpy as np

from turbdiff import constants
from turbdiff import quadrature
from turbdiff.turbdiff_error import QuadratureFailure


class TestQuadrature(unittest.TestCase):
    def test_gauss_legendre_weights(self):
        nodes, weights = quadrature.gauss_legendre(10)
        self.assertAlmostEqual(weights.sum(), 2.0)
        self.assertAlmostEqual(float(weights @ nodes ** 18), 2.0 / 19)

    def test_integrable_endpoint_singularity(self):
        result = quadrature.integrate_radial(lambda k: k ** -0.5, 0.0, 1.0)
        self.assertAlmostEqual(result.value, 2.0, delta=1e-9)
        self.assertLess(result.abs_error, 1e-8)

    def test_vanishing_endpoint(self):
        result = quadrature.integrate_radial(lambda k: k ** 0.5, 0.0, 1.0)
        self.assertAlmostEqual(result.value, 2.0 / 3, delta=1e-10)

    def test_breakpoints(self):
        def window(k):
            return np.where((k >= 0.3) & (k <= 0.7), 1.0, 0.0)
        result = quadrature.integrate_radial(window, 0.0, 1.0, breakpoints=[0.3, 0.7])
        self.assertAlmostEqual(result.value, 0.4, delta=1e-12)

    def test_regularization_scale(self):
        eps = 1e-4
        result = quadrature.integrate_radial(lambda k: eps / (k * k + eps * eps), 0.0, 1.0,
                                             scales=(eps,))
        self.assertAlmostEqual(result.value, math.atan(1.0 / eps), delta=1e-8)

    def test_lower_limit_above_zero(self):
        result = quadrature.integrate_radial(np.exp, 0.5, 1.0)
        self.assertAlmostEqual(result.value, math.e - math.exp(0.5), delta=1e-12)
        self.assertEqual(result.tail, 0.0)

    def test_empty_interval(self):
        self.assertEqual(quadrature.integrate_radial(np.exp, 1.0, 1.0).value, 0.0)
        with self.assertRaises(ValueError):
            quadrature.integrate_radial(np.exp, -1.0, 1.0)

    def test_non_integrable(self):
        with self.assertRaises(QuadratureFailure):
            quadrature.integrate_radial(lambda k: k ** -1.5, 0.0, 1.0)

    def test_non_finite_integrand(self):
        with self.assertRaises(QuadratureFailure):
            quadrature.integrate_radial(lambda k: np.where(k > 0.5, np.nan, 1.0), 0.1, 1.0)

    def test_panel_budget(self):
        def step(k):
            return np.where(k < 0.3337, 1.0, 0.0)
        with mock.patch.object(constants.Quadrature, 'MAX_PANELS', 5):
            with self.assertRaises(QuadratureFailure):
                quadrature.integrate_radial(step, 0.1, 1.0)


if __name__ == '__main__':
    unittest.main()
