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

from turbdiff import corrector
from turbdiff.constants import CorrectorOp, ScalingParameter
from turbdiff.spectrum import ShapeFn
from turbdiff.turbdiff_error import DegenerateWindow, GridTooNarrow
from tests import util


class TestIntegrals(unittest.TestCase):
    def test_chi1_closed_form_limit(self):
        # eps^-2 chi1 -> int shell_energy k^-4beta = 2 pi int k^-0.5 = 4 pi
        params = util.canonical_params()
        eps = 1e-4
        self.assertAlmostEqual(corrector.chi1_variance(params, eps) / eps ** 2, 4 * math.pi,
                               delta=1e-3 * 4 * math.pi)

    def test_lambda_parameterization(self):
        params = util.canonical_params()
        lam = 1e-3
        self.assertAlmostEqual(corrector.chi1_variance_lambda(params, lam),
                               corrector.chi1_variance(params, math.sqrt(lam)) / lam)

    def test_grad_positive_and_decreasing(self):
        params = util.canonical_params(alpha=0.3, beta=0.9)
        large = corrector.grad_chi1_variance(params, 1e-2)
        small = corrector.grad_chi1_variance(params, 1e-4)
        self.assertGreater(small, large)
        self.assertGreater(large, 0)

    def test_grad_bounded_below_critical_line(self):
        # alpha + 2 beta < 2: the limit lambda -> 0 is finite
        params = util.canonical_params()
        coarse = corrector.grad_chi1_variance(params, 1e-8)
        fine = corrector.grad_chi1_variance(params, 1e-10)
        self.assertLess(abs(coarse - fine), 0.01 * fine)

    def test_validation(self):
        params = util.canonical_params()
        with self.assertRaises(ValueError):
            corrector.chi1_variance(params, 0.0)
        with self.assertRaises(ValueError):
            corrector.grad_chi1_variance(params, -1.0)

    def test_zero_shape(self):
        self.assertEqual(corrector.chi1_variance(util.zero_params(), 0.1), 0.0)


class TestExponents(unittest.TestCase):
    def test_theory(self):
        params = util.canonical_params(alpha=0.25, beta=0.5)
        self.assertEqual(corrector.theory_exponent(CorrectorOp.CHI1, params), 1.0)
        self.assertEqual(corrector.theory_exponent(CorrectorOp.CHI1, params,
                                                   ScalingParameter.LAMBDA), 0.5)
        self.assertEqual(corrector.theory_exponent(CorrectorOp.CHI1, util.canonical_params()), 2.0)
        self.assertEqual(corrector.bound_exponent(CorrectorOp.CHI1, util.canonical_params()), 4.0)
        grad = util.canonical_params(alpha=0.3, beta=0.9)
        self.assertAlmostEqual(corrector.theory_exponent(CorrectorOp.GRAD_CHI1, grad,
                                                         ScalingParameter.LAMBDA), -1 / 9.0)
        self.assertAlmostEqual(corrector.theory_exponent(CorrectorOp.GRAD_CHI1, grad), -2 / 9.0)
        self.assertAlmostEqual(corrector.bound_exponent(CorrectorOp.GRAD_CHI1, grad,
                                                        ScalingParameter.LAMBDA), -1 / 9.0)
        self.assertEqual(corrector.theory_exponent(CorrectorOp.GRAD_CHI1, util.canonical_params()), 0.0)

    def test_shape_away_from_origin(self):
        params = util.canonical_params(alpha=0.6, beta=0.6, shape=ShapeFn.indicator(0.5, 1.0))
        self.assertEqual(corrector.theory_exponent(CorrectorOp.CHI1, params), 2.0)
        self.assertEqual(corrector.theory_exponent(CorrectorOp.GRAD_CHI1, params), 0.0)

    def test_unknown_op(self):
        with self.assertRaises(ValueError):
            corrector.theory_exponent('chi2', util.canonical_params())


class TestFitScaling(unittest.TestCase):
    def test_chi1_critical_rate(self):
        params = util.canonical_params(alpha=0.25, beta=0.5)
        fit = corrector.fit_scaling(CorrectorOp.CHI1, params, [1e-3, 1e-4, 1e-5, 1e-6])
        self.assertAlmostEqual(fit.exponent, 1.0, delta=0.01)
        self.assertLess(fit.relative_deviation, 0.01)
        self.assertEqual(len(fit.grid), 4)

    def test_chi1_cutoff_rate(self):
        fit = corrector.fit_scaling(CorrectorOp.CHI1, util.canonical_params(),
                                    [1e-2, 1e-3, 1e-4, 1e-5])
        self.assertAlmostEqual(fit.exponent, 2.0, delta=0.02)
        self.assertEqual(fit.bound_exponent, 4.0)

    def test_grad_chi1(self):
        params = util.canonical_params(alpha=0.3, beta=0.9)
        fit = corrector.fit_scaling(CorrectorOp.GRAD_CHI1, params,
                                    [1e-24, 1e-26, 1e-28, 1e-30], ScalingParameter.LAMBDA)
        self.assertAlmostEqual(fit.theory_exponent, -1 / 9.0)
        self.assertAlmostEqual(fit.exponent, -1 / 9.0, delta=0.005)

    def test_callable(self):
        fit = corrector.fit_scaling(lambda eps: 3.0 * eps ** 1.5, None, [1e-1, 1e-2, 1e-3, 1e-4])
        self.assertAlmostEqual(fit.exponent, 1.5, places=10)
        self.assertAlmostEqual(fit.prefactor, 3.0, places=8)
        self.assertIsNone(fit.theory_exponent)
        self.assertIsNone(fit.relative_deviation)

    def test_grid_too_narrow(self):
        with self.assertRaises(GridTooNarrow):
            corrector.fit_scaling(CorrectorOp.CHI1, util.canonical_params(), [1e-1, 1e-2, 1e-3 * 2])

    def test_nonpositive_values(self):
        with self.assertRaises(DegenerateWindow):
            corrector.fit_scaling(CorrectorOp.CHI1, util.zero_params(), [1e-1, 1e-2, 1e-3, 1e-4])

    def test_deepen_settles(self):
        fit = corrector.deepen_scaling(lambda eps: eps ** 1.5 * (1 + eps), None, [1e-1, 1e-2, 1e-3, 1e-4])
        self.assertAlmostEqual(fit.exponent, 1.5, delta=1e-3)
        self.assertLessEqual(fit.grid[-1][0], 1e-5)

    def test_to_dict(self):
        fit = corrector.fit_scaling(lambda eps: eps ** 2, None, [1e-1, 1e-2, 1e-3, 1e-4])
        data = fit.to_dict()
        self.assertEqual(data['grid'][0][0], 1e-1)
        self.assertEqual(data['parameter'], ScalingParameter.EPS)


if __name__ == '__main__':
    unittest.main()
