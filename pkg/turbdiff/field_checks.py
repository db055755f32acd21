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

'''Statistical validation battery for the synthesized field.

Every check reduces to a z-score against a closed form or a quadrature oracle
from the kubo module. A check passes when every |z| it computes is at most
AnalysisDefaults.Z_PASS (divergence is exact and compared to a tolerance).
'''
import math

import numpy as np
from scipy import stats

from . import field
from . import kubo
from . import log
from . import rng
from .constants import AnalysisDefaults, FieldDefaults
from .turbdiff_error import StatisticalCheckFailure

DIVERGENCE_TOLERANCE = 1e-12
STATIONARITY_TIME = 10.0
DEFAULT_TIMES = (0.0, 0.5, 1.0, 2.0)
DEFAULT_LAGS = (1, 2, 5, 10, 20)


class CheckResult(object):  # pylint: disable=too-few-public-methods
    def __init__(self, name, statistic, z, passed, detail=None):
        self.name = name
        self.statistic = statistic
        self.z = z
        self.passed = passed
        self.detail = detail or {}

    def to_dict(self):
        return {
            'name': self.name,
            'statistic': self.statistic,
            'z': self.z,
            'passed': self.passed,
            'detail': self.detail,
            }

    def __repr__(self):
        return 'CheckResult({}, z={!r}, passed={})'.format(self.name, self.z, self.passed)


def mean_z(samples, expected=0.0):
    '''z-score of the sample mean against `expected`, using the sample std.'''
    samples = np.asarray(samples, dtype=float)
    spread = samples.std(ddof=1) / math.sqrt(len(samples))
    if spread == 0:
        return 0.0 if np.isclose(samples.mean(), expected, rtol=0, atol=1e-14) else math.inf
    return float((samples.mean() - expected) / spread)

def _passed(*zs):
    return bool(all(abs(z) <= AnalysisDefaults.Z_PASS for z in zs))

def ar1_autocorrelation_stderr(phi, lag, n):
    '''Bartlett standard error of the lag autocorrelation of an AR(1) series.'''
    phi2 = phi * phi
    if phi2 >= 1:
        return 0.0
    variance = ((1 + phi2) * (1 - phi ** (2 * lag)) / (1 - phi2) - 2 * lag * phi ** (2 * lag)) / n
    return math.sqrt(max(variance, 0.0))


class _Samples(object):
    '''Velocities gathered over independent field realizations.'''

    def __init__(self, params, n_realizations, times, shift, seed, n_shells, modes_per_shell,
                 k_min_ratio, log_context):
        table = field.ShellTable(params, n_shells, k_min_ratio, log_context)
        self.table = table
        times = sorted(set(times) | {0.0})
        self.times = times
        d = params.d
        self.shift = np.asarray(shift, dtype=float)
        self.at_origin = np.empty((n_realizations, len(times), d))
        self.shifted = np.empty((n_realizations, d))
        self.late = np.empty((n_realizations, d))
        self.amplitudes = []
        self.divergence = 0.0
        self.energy = None

        for index in range(n_realizations):
            modes = field.sample_modes(params, n_shells, modes_per_shell, k_min_ratio,
                                       seed=rng.derive_seed(seed, rng.VALIDATION, index, 0),
                                       table=table)
            state = field.init_state(modes, rng.derive_seed(seed, rng.VALIDATION, index, 1))
            if self.energy is None:
                self.energy = modes.energy()
            self.divergence = max(self.divergence, field.divergence_residual(modes, state))
            self.shifted[index] = field.evaluate(modes, state, shift)
            if index < 64:
                self.amplitudes.append(state.xi.ravel() / math.sqrt(modes.variance))

            current = 0.0
            for slot, t in enumerate(times):
                state = field.advance(state, t - current)
                current = t
                self.at_origin[index, slot] = field.evaluate(modes, state, np.zeros(d))
            state = field.advance(state, STATIONARITY_TIME - current)
            self.divergence = max(self.divergence, field.divergence_residual(modes, state))
            self.late[index] = field.evaluate(modes, state, np.zeros(d))

    @property
    def initial(self):
        return self.at_origin[:, 0, :]


def check_divergence(samples):
    residual = samples.divergence
    return CheckResult('divergence', residual, None, residual <= DIVERGENCE_TOLERANCE,
                       {'tolerance': DIVERGENCE_TOLERANCE})

def check_energy(samples, params):
    expected = float(np.trace(kubo.eulerian_correlation(params, 0.0)))
    bound = samples.table.energy_error_bound
    statistic = samples.energy - expected
    return CheckResult('energy', statistic, None, abs(statistic) <= max(bound, 1e-9 * expected),
                       {'sampled': samples.energy, 'expected': expected, 'bound': bound})

def check_eulerian_correlation(samples, params, log_context=None):
    zs = []
    detail = {}
    for slot, t in enumerate(samples.times):
        products = np.mean(samples.at_origin[:, slot, :] * samples.initial, axis=1)
        expected = float(kubo.eulerian_correlation(params, t, log_context=log_context)[0, 0])
        z = mean_z(products, expected)
        zs.append(z)
        detail[repr(t)] = {'empirical': float(products.mean()), 'expected': expected, 'z': z}
    worst = max(zs, key=abs)
    return CheckResult('eulerian_correlation', worst, worst, _passed(*zs), detail)

def check_stationarity(samples):
    difference = np.sum(samples.late ** 2, axis=1) - np.sum(samples.initial ** 2, axis=1)
    z = mean_z(difference)
    return CheckResult('stationarity', float(difference.mean()), z, _passed(z),
                       {'time': STATIONARITY_TIME})

def check_homogeneity(samples):
    difference = np.sum(samples.shifted ** 2, axis=1) - np.sum(samples.initial ** 2, axis=1)
    z = mean_z(difference)
    return CheckResult('homogeneity', float(difference.mean()), z, _passed(z))

def check_spatial_correlation(samples, params, log_context=None):
    '''E[v(x) v(0)^T] at the shift x against the two-point quadrature, entry by entry.'''
    expected = kubo.two_point_correlation(params, 0.0, samples.shift, log_context=log_context)
    d = params.d
    zs = []
    detail = {'shift': samples.shift.tolist()}
    for i in range(d):
        for j in range(d):
            products = samples.shifted[:, i] * samples.initial[:, j]
            z = mean_z(products, float(expected[i, j]))
            zs.append(z)
            detail['{}{}'.format(i + 1, j + 1)] = {'empirical': float(products.mean()),
                                                   'expected': float(expected[i, j]), 'z': z}
    worst = max(zs, key=abs)
    return CheckResult('spatial_correlation', worst, worst, _passed(*zs), detail)

def check_isotropy(samples):
    v = samples.initial
    d = v.shape[1]
    zs = []
    for i in range(d):
        for j in range(i + 1, d):
            zs.append(mean_z(v[:, i] * v[:, j]))
            zs.append(mean_z(v[:, i] ** 2 - v[:, j] ** 2))
    worst = max(zs, key=abs)
    return CheckResult('isotropy', worst, worst, _passed(*zs))

def check_gaussianity(samples):
    zs = []
    detail = {}
    pooled = np.concatenate(samples.amplitudes)
    for name, values in (('amplitude', pooled), ('velocity', samples.initial[:, 0])):
        excess = float(stats.kurtosis(values, fisher=True, bias=False))
        z = excess / math.sqrt(24.0 / len(values))
        zs.append(z)
        detail[name] = {'excess_kurtosis': excess, 'z': z}
    worst = max(zs, key=abs)
    return CheckResult('gaussianity', worst, worst, _passed(*zs), detail)

def check_ou_autocorrelation(params, n_steps, seed, lags=DEFAULT_LAGS, n_shells=FieldDefaults.N_SHELLS,
                             modes_per_shell=FieldDefaults.MODES_PER_SHELL,
                             k_min_ratio=FieldDefaults.K_MIN_RATIO, log_context=None):
    '''Lag autocorrelation of one amplitude component of one mode over a long series.'''
    modes = field.sample_modes(params, n_shells, modes_per_shell, k_min_ratio,
                               seed=rng.derive_seed(seed, rng.VALIDATION, 0, 0), log_context=log_context)
    # a single mode from the middle of the spectrum
    pick = len(modes) // 2
    single = field.ModeSet(params, modes.k[pick:pick + 1], modes.weight[pick:pick + 1],
                           modes.basis[pick:pick + 1], modes.seed, modes.n_shells,
                           modes.modes_per_shell, modes.k_min_ratio)
    rate = float(single.rates[0])
    dt = 0.1 / rate if rate > 0 else 1.0
    phi = math.exp(-rate * dt)

    state = field.init_state(single, rng.derive_seed(seed, rng.VALIDATION, 0, 2))
    series = np.empty(n_steps)
    for step in range(n_steps):
        series[step] = state.xi[0, 0]
        state = field.advance(state, dt)

    centered = series - series.mean()
    variance = float(centered @ centered) / n_steps
    zs = []
    detail = {'rate': rate, 'dt': dt}
    for lag in lags:
        empirical = float(centered[:-lag] @ centered[lag:]) / n_steps / variance
        expected = math.exp(-rate * dt * lag)
        z = (empirical - expected) / ar1_autocorrelation_stderr(phi, lag, n_steps)
        zs.append(z)
        detail['lag_{}'.format(lag)] = {'empirical': empirical, 'expected': expected, 'z': z}
    worst = max(zs, key=abs)
    return CheckResult('ou_autocorrelation', worst, worst, _passed(*zs), detail)


def run_battery(params, n_realizations, seed, times=DEFAULT_TIMES, ou_steps=100000,
                n_shells=FieldDefaults.N_SHELLS, modes_per_shell=FieldDefaults.MODES_PER_SHELL,
                k_min_ratio=FieldDefaults.K_MIN_RATIO, log_context=None):
    '''Run every field check and return the CheckResult list.'''
    logger = log.Logger('FieldChecks', log_context)
    generator = rng.generator(seed, rng.VALIDATION)
    shift = generator.uniform(-1.0, 1.0, params.d) * (math.pi / params.cutoff)
    samples = _Samples(params, n_realizations, times, shift, seed, n_shells, modes_per_shell,
                       k_min_ratio, log_context)

    results = [
        check_divergence(samples),
        check_energy(samples, params),
        check_eulerian_correlation(samples, params, log_context),
        check_stationarity(samples),
        check_homogeneity(samples),
        check_spatial_correlation(samples, params, log_context),
        check_isotropy(samples),
        check_gaussianity(samples),
        check_ou_autocorrelation(params, ou_steps, seed, n_shells=n_shells,
                                 modes_per_shell=modes_per_shell, k_min_ratio=k_min_ratio,
                                 log_context=log_context),
        ]
    for result in results:
        if result.passed:
            logger.info("Check %(name)s passed, z = %(z)s", {'name': result.name, 'z': result.z})
        else:
            logger.warn("Check %(name)s failed, z = %(z)s", {'name': result.name, 'z': result.z})
    return results


def raise_on_failure(results):
    '''Raise StatisticalCheckFailure naming every failed check; return results otherwise.'''
    failed = [result for result in results if not result.passed]
    if failed:
        raise StatisticalCheckFailure(
            "Field checks failed: " + ', '.join(result.name for result in failed),
            {result.name: result.z for result in failed})
    return results
