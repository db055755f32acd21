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

from turbdiff import analysis
from turbdiff import kubo
from turbdiff import tracer
from turbdiff.constants import AnalysisDefaults, DiffusivityKind, EstimateMethod
from turbdiff.turbdiff_error import (DegenerateWindow, KindMismatch, ReplayUnavailable,
                                     TailNotConverged, TooFewTrajectories)
from tests import util


def covariance(value, d=2):
    return kubo.DiffusivityMatrix(value * np.eye(d), DiffusivityKind.COVARIANCE)


class TestJackknife(unittest.TestCase):
    def test_mean_stderr(self):
        samples = np.array([1.0, 2.0, 4.0, 7.0])
        replicates = analysis.leave_one_out(samples)
        np.testing.assert_allclose(replicates, [13 / 3.0, 4.0, 10 / 3.0, 7 / 3.0])
        # jackknife of the mean is the usual standard error
        self.assertAlmostEqual(float(analysis.jackknife_stderr(replicates)),
                               samples.std(ddof=1) / 2.0)


class TestMsd(unittest.TestCase):
    def test_brownian_slope(self):
        ensemble = util.brownian_ensemble(400, 200, 0.05, 2.0, 1)
        curve = analysis.msd(ensemble)
        self.assertEqual(curve.msd_matrix.shape, (201, 2, 2))
        estimate = analysis.msd_slope(curve)
        self.assertEqual(estimate.kind, DiffusivityKind.COVARIANCE)
        self.assertEqual(estimate.method, EstimateMethod.MSD_SLOPE)
        np.testing.assert_allclose(estimate.matrix, estimate.matrix.T)
        self.assertTrue(analysis.compare(estimate, covariance(2.0), z_pass=5.0).passed)

    def test_interval_coverage(self):
        slope_covered = 0
        green_kubo_covered = 0
        dt = 0.1
        for seed in range(100):
            ensemble = util.brownian_ensemble(200, 100, dt, 1.0, 1000 + seed)
            estimate = analysis.msd_slope(analysis.msd(ensemble))
            slope_covered += abs(estimate.matrix[0, 0] - 1.0) <= estimate.ci95[0, 0]
            # increments over dt: the trapezoid keeps half of the lag-0 spike
            velocities = np.diff(ensemble.positions, axis=1) / dt
            curve = analysis.lagrangian_vacf(ensemble, velocities)
            estimate = analysis.green_kubo(curve, strict=False)
            green_kubo_covered += abs(estimate.matrix[0, 0] - 1.0) <= estimate.ci95[0, 0]
        self.assertGreaterEqual(slope_covered, 90)
        self.assertGreaterEqual(green_kubo_covered, 90)

    def test_too_few_trajectories(self):
        with self.assertRaises(TooFewTrajectories):
            analysis.msd(util.brownian_ensemble(1, 10, 0.1, 1.0, 0))

    def test_macroscopic(self):
        ensemble = util.brownian_ensemble(2, 10, 0.1, 1.0, 0)
        times, positions = analysis.macroscopic(ensemble, 0.1)
        np.testing.assert_allclose(times, ensemble.times * 0.01)
        np.testing.assert_allclose(positions, ensemble.positions * 0.1)


class TestFitExponent(unittest.TestCase):
    def test_diffusive(self):
        curve = analysis.msd(util.brownian_ensemble(400, 400, 0.05, 1.0, 2))
        fit = analysis.fit_exponent(curve)
        self.assertLess(abs(fit.exponent - 1.0), max(5 * fit.stderr, 0.02))
        self.assertGreater(fit.stderr, 0)

    def test_ballistic(self):
        generator = np.random.default_rng(5)
        velocity = generator.standard_normal((20, 1, 2))
        times = np.arange(101) * 0.1
        ensemble = tracer.TrajectoryEnsemble(times, velocity * times[None, :, None])
        fit = analysis.fit_exponent(analysis.msd(ensemble))
        self.assertAlmostEqual(fit.exponent, 2.0, places=10)
        self.assertAlmostEqual(fit.stderr, 0.0, places=8)
        self.assertAlmostEqual(fit.prefactor, float(np.mean(np.sum(velocity ** 2, axis=2))),
                               places=8)

    def test_default_window(self):
        lo, hi = analysis.default_window(np.arange(101) * 0.1)
        self.assertAlmostEqual(hi, 9.0)
        self.assertAlmostEqual(lo, 0.9)

    def test_degenerate(self):
        times = np.arange(101) * 0.1
        ensemble = tracer.TrajectoryEnsemble(times, np.zeros((4, 101, 2)))
        with self.assertRaises(DegenerateWindow):
            analysis.fit_exponent(analysis.msd(ensemble))

    def test_window_too_small(self):
        curve = analysis.msd(util.brownian_ensemble(4, 100, 0.1, 1.0, 0))
        with self.assertRaises(ValueError):
            analysis.fit_exponent(curve, (1.0, 1.5))
        with self.assertRaises(ValueError):
            analysis.msd_slope(curve, (5.0, 2.0))


class TestGreenKubo(unittest.TestCase):
    def test_exponential_vacf(self):
        lags = np.arange(30001) * 1e-3
        curve = analysis.VacfCurve(lags, np.exp(-lags), np.zeros_like(lags))
        estimate = analysis.green_kubo(curve)
        self.assertEqual(estimate.method, EstimateMethod.GREEN_KUBO)
        self.assertAlmostEqual(estimate.diagnostics['one_sided_trace'], 1.0, delta=1e-6)
        np.testing.assert_allclose(estimate.matrix, np.eye(2), atol=1e-6)
        self.assertTrue(estimate.diagnostics['tail_converged'])

    def test_zero_vacf(self):
        lags = np.arange(100) * 0.1
        curve = analysis.VacfCurve(lags, np.zeros(100), np.zeros(100))
        np.testing.assert_array_equal(analysis.green_kubo(curve).matrix, np.zeros((2, 2)))

    def test_tail_not_converged(self):
        lags = np.arange(100) * 0.1
        curve = analysis.VacfCurve(lags, np.ones(100), np.zeros(100))
        with self.assertRaises(TailNotConverged):
            analysis.green_kubo(curve)
        relaxed = analysis.green_kubo(curve, strict=False)
        self.assertFalse(relaxed.diagnostics['tail_converged'])

    def test_ou_velocities(self):
        n_traj, n_steps, dt = 200, 2000, 0.05
        velocities = util.ou_velocities(n_traj, n_steps, dt, 1.0, 4)
        ensemble = tracer.TrajectoryEnsemble(np.arange(n_steps) * dt, np.zeros((n_traj, n_steps, 2)))
        curve = analysis.lagrangian_vacf(ensemble, velocities)
        self.assertAlmostEqual(curve.vacf[0], 2.0, delta=0.1)
        self.assertEqual(curve.matrix.shape, (1000, 2, 2))
        estimate = analysis.green_kubo(curve, strict=False)
        # one-sided integral of exp(-s) per component, doubled
        self.assertTrue(analysis.compare(estimate, covariance(2.0), z_pass=5.0).passed)

    def test_vacf_needs_replay_or_velocities(self):
        ensemble = util.brownian_ensemble(3, 10, 0.1, 1.0, 0)
        with self.assertRaises(ReplayUnavailable):
            analysis.lagrangian_vacf(ensemble)


class TestCompare(unittest.TestCase):
    def test_kind_mismatch(self):
        estimate = analysis.DiffusivityEstimate(np.eye(2), np.zeros((2, 2)), EstimateMethod.MSD_SLOPE)
        one_sided = kubo.DiffusivityMatrix(np.eye(2), DiffusivityKind.ONE_SIDED)
        with self.assertRaises(KindMismatch):
            analysis.compare(estimate, one_sided)
        self.assertFalse(analysis.compare(estimate, one_sided.as_covariance()).passed)

    def test_z_scores(self):
        ci = AnalysisDefaults.CI95 * np.full((2, 2), 0.5)
        estimate = analysis.DiffusivityEstimate(np.diag([3.0, 2.0]), ci, EstimateMethod.MSD_SLOPE)
        report = analysis.compare(estimate, covariance(2.0))
        np.testing.assert_allclose(report.z, [[2.0, 0.0], [0.0, 0.0]])
        self.assertTrue(report.passed)
        self.assertEqual(report.to_dict()['max_abs_z'], 2.0)
        self.assertEqual(analysis.compare(estimate, covariance(0.0)).verdict, 'fail')

    def test_zero_error_exact_match(self):
        estimate = analysis.DiffusivityEstimate(np.eye(2), np.zeros((2, 2)), EstimateMethod.MSD_SLOPE)
        self.assertTrue(analysis.compare(estimate, covariance(1.0)).passed)
        self.assertFalse(analysis.compare(estimate, covariance(1.5)).passed)


if __name__ == '__main__':
    unittest.main()
