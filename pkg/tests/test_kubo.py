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

import numpy as np
from scipy import integrate

from turbdiff import kubo
from turbdiff import spectrum
from turbdiff.constants import DiffusivityKind, Verdict
from turbdiff.spectrum import ShapeFn
from turbdiff.turbdiff_error import DimensionTooSmall, DivergentIntegral
from tests import util


class TestTaylorKubo(unittest.TestCase):
    def test_canonical_value(self):
        matrix = kubo.taylor_kubo(util.canonical_params())
        self.assertEqual(matrix.kind, DiffusivityKind.ONE_SIDED)
        np.testing.assert_allclose(matrix.value, util.parameters['one_sided'] * np.eye(2),
                                   rtol=1e-6, atol=1e-12)
        self.assertLess(matrix.abs_error_estimate, 1e-6)

    def test_covariance_is_twice_one_sided(self):
        covariance = kubo.taylor_kubo(util.canonical_params()).as_covariance()
        self.assertEqual(covariance.kind, DiffusivityKind.COVARIANCE)
        np.testing.assert_allclose(covariance.diagonal(), [util.parameters['covariance']] * 2,
                                   rtol=1e-6)
        self.assertIs(covariance.as_covariance(), covariance)

    def test_monte_carlo_oracle(self):
        # k = r (cos theta, sin theta) with r, theta uniform: density 1 / (2 pi r) on the disk
        params = util.canonical_params()
        generator = np.random.default_rng(util.parameters['seed'])
        theta = generator.uniform(0, 2 * math.pi, 10 ** 6)
        radius = generator.uniform(0, 1, 10 ** 6)
        integrand = (spectrum.power_law(params, radius) * (1 - np.cos(theta) ** 2)
                     * radius ** (-2 * params.beta))
        samples = integrand * 2 * math.pi * radius
        stderr = samples.std(ddof=1) / math.sqrt(len(samples))
        value = kubo.taylor_kubo(params).value[0, 0]
        self.assertLess(abs(samples.mean() - value), 3 * stderr)

    def test_closed_form(self):
        # pi * int_0^1 k^(1 - 0.2 - 0.6) dk
        matrix = kubo.taylor_kubo(util.canonical_params(alpha=0.1, beta=0.3))
        np.testing.assert_allclose(matrix.diagonal(), [math.pi / 1.2] * 2, rtol=1e-8)

    def test_trace_matches_shell_energy(self):
        params = util.canonical_params(d=3, alpha=0.3, beta=0.2)
        matrix = kubo.taylor_kubo(params)
        expected, _ = integrate.quad(
            lambda k: float(spectrum.shell_energy(params, k)) * k ** (-2 * params.beta), 0, 1)
        self.assertAlmostEqual(np.trace(matrix.value), expected, delta=1e-7 * expected)
        np.testing.assert_allclose(matrix.value, np.diag(matrix.diagonal()))

    def test_shape_away_from_origin(self):
        params = util.canonical_params(alpha=0.8, beta=0.9, shape=ShapeFn.indicator(0.5, 1.0))
        with self.assertRaises(DivergentIntegral):
            kubo.taylor_kubo(params)

    def test_divergent_and_boundary(self):
        for alpha, beta in ((0.6, 0.6), (0.5, 0.5), (0.0, 1.0)):
            with self.assertRaises(DivergentIntegral) as context:
                kubo.taylor_kubo(util.canonical_params(alpha=alpha, beta=beta))
            self.assertIn('margin', context.exception.error_response)

    def test_zero_shape(self):
        matrix = kubo.taylor_kubo(util.zero_params())
        np.testing.assert_array_equal(matrix.value, np.zeros((2, 2)))

    def test_scaling_law(self):
        # k -> lam k stretches the support and scales K by lam^(2 - 2 alpha - 2 beta)
        for alpha, beta in ((0.25, 0.25), (0.1, 0.6)):
            params = util.canonical_params(alpha=alpha, beta=beta, shape=ShapeFn.indicator(0.2, 1.0))
            base = kubo.taylor_kubo(params).value
            for lam in (0.5, 3.0):
                scaled = kubo.taylor_kubo(params.rescaled(lam)).value
                np.testing.assert_allclose(scaled, lam ** (2 - 2 * alpha - 2 * beta) * base,
                                           rtol=1e-6, atol=1e-12)

    def test_angular_factor(self):
        self.assertAlmostEqual(kubo.angular_factor(2), math.pi)
        self.assertAlmostEqual(kubo.angular_factor(3), 8 * math.pi / 3)
        with self.assertRaises(DimensionTooSmall):
            kubo.angular_factor(1)


class TestPhase(unittest.TestCase):
    def test_verdicts(self):
        self.assertEqual(kubo.classify_phase(0.25, 0.25).verdict, Verdict.DIFFUSIVE)
        self.assertEqual(kubo.classify_phase(0.5, 0.5).verdict, Verdict.BOUNDARY)
        self.assertEqual(kubo.classify_phase(0.5, 0.5 + 1e-12).verdict, Verdict.BOUNDARY)
        self.assertEqual(kubo.classify_phase(0.7, 0.6).verdict, Verdict.SUPERDIFFUSIVE)
        self.assertEqual(kubo.classify_phase(-2.0, 0.0).verdict, Verdict.DIFFUSIVE)

    def test_grid_agrees_with_divergence(self):
        grid = np.linspace(0.0, 0.99, 21)
        for alpha in grid:
            for beta in grid:
                verdict = kubo.classify_phase(alpha, beta).verdict
                expected = Verdict.DIFFUSIVE if alpha + beta < 1 else Verdict.SUPERDIFFUSIVE
                self.assertEqual(verdict, expected, (alpha, beta))

    def test_invalid(self):
        with self.assertRaises(ValueError):
            kubo.classify_phase(1.0, 0.1)
        with self.assertRaises(ValueError):
            kubo.classify_phase(0.1, -0.1)


class TestRegularizedDiffusivity(unittest.TestCase):
    def test_monotone_convergence(self):
        params = util.canonical_params()
        values = [kubo.regularized_diffusivity(params, eps).value[0, 0]
                  for eps in (1.0, 0.1, 0.01, 1e-3, 1e-4)]
        self.assertTrue(all(a < b for a, b in zip(values, values[1:])))
        self.assertAlmostEqual(values[-1], math.pi, delta=1e-3 * math.pi)

    def test_finite_in_superdiffusive_phase(self):
        params = util.canonical_params(alpha=0.6, beta=0.6)
        small = kubo.regularized_diffusivity(params, 1e-2).value[0, 0]
        smaller = kubo.regularized_diffusivity(params, 1e-3).value[0, 0]
        self.assertTrue(math.isfinite(smaller))
        self.assertGreater(smaller, small)

    def test_eps_validation(self):
        with self.assertRaises(ValueError):
            kubo.regularized_diffusivity(util.canonical_params(), 0.0)


class TestEulerianCorrelation(unittest.TestCase):
    def test_energy_at_time_zero(self):
        value = kubo.eulerian_correlation(util.canonical_params(), 0.0)
        self.assertAlmostEqual(np.trace(value), util.parameters['energy'], delta=1e-9)

    def test_decay(self):
        params = util.canonical_params()
        expected, _ = integrate.quad(lambda k: math.sqrt(k) * math.exp(-math.sqrt(k) * 3.0),
                                     0, 1, epsabs=1e-13)
        value = kubo.eulerian_correlation(params, 3.0)
        self.assertAlmostEqual(value[0, 0], math.pi * expected, delta=1e-9)
        self.assertEqual(value[0, 1], 0.0)

    def test_two_point_reduces_at_origin(self):
        params = util.canonical_params()
        np.testing.assert_allclose(kubo.two_point_correlation(params, 0.5, np.zeros(2)),
                                   kubo.eulerian_correlation(params, 0.5))

    def test_two_point_against_polar_integral(self):
        params = util.canonical_params()
        separation = np.array([2.0, 0.0])

        def polar(theta, k, component):
            angular = math.sin(theta) ** 2 if component == 0 else math.cos(theta) ** 2
            return (math.sqrt(k) * math.exp(-math.sqrt(k) * 0.5)
                    * math.cos(k * separation[0] * math.cos(theta)) * angular)

        value = kubo.two_point_correlation(params, 0.5, separation)
        for component in (0, 1):
            expected, _ = integrate.dblquad(polar, 0, 1, 0, 2 * math.pi, args=(component,),
                                            epsabs=1e-11, epsrel=1e-10)
            self.assertAlmostEqual(value[component, component], expected, delta=1e-7)
        self.assertAlmostEqual(value[0, 1], 0.0, delta=1e-12)

    def test_two_point_rotates_with_separation(self):
        params = util.canonical_params()
        along = kubo.two_point_correlation(params, 0.0, np.array([1.5, 0.0]))
        diagonal = kubo.two_point_correlation(params, 0.0, np.array([1.5, 1.5]) / math.sqrt(2))
        rotation = np.array([[1, -1], [1, 1]]) / math.sqrt(2)
        np.testing.assert_allclose(diagonal, rotation @ along @ rotation.T, atol=1e-10)


if __name__ == '__main__':
    unittest.main()
