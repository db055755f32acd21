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

'''Empirical diffusivities and scaling exponents from tracer ensembles.

Standard errors are leave-one-trajectory-out jackknife errors: trajectories are
independent, time points within one trajectory are not.
'''
import math

import numpy as np
from scipy import integrate

from . import log
from . import tracer
from .constants import AnalysisDefaults, DiffusivityKind, EstimateMethod
from .turbdiff_error import (DegenerateWindow, KindMismatch, TailNotConverged,
                             TooFewTrajectories)


def leave_one_out(per_trajectory):
    '''Leave-one-out means along axis 0.'''
    n = per_trajectory.shape[0]
    return (per_trajectory.sum(axis=0)[None, ...] - per_trajectory) / (n - 1)

def jackknife_stderr(replicates):
    n = replicates.shape[0]
    centered = replicates - replicates.mean(axis=0)
    return np.sqrt((n - 1.0) / n * np.sum(centered ** 2, axis=0))


class MsdCurve(object):
    '''Second moments of the displacement y(s) - y(0).

    ``per_trajectory`` holds each trajectory's outer products, shape
    (n_traj, n_samples, d, d); curves built by hand may leave it None.
    '''

    def __init__(self, times, msd_trace, msd_matrix, stderr, n_traj, per_trajectory=None):
        self.times = np.asarray(times, dtype=float)
        self.msd_trace = np.asarray(msd_trace, dtype=float)
        self.msd_matrix = np.asarray(msd_matrix, dtype=float)
        self.stderr = np.asarray(stderr, dtype=float)
        self.n_traj = n_traj
        self.per_trajectory = per_trajectory

    @property
    def d(self):
        return self.msd_matrix.shape[-1]

    def replicates(self):
        '''Leave-one-out msd matrices, shape (n_traj, n_samples, d, d).'''
        if self.per_trajectory is None:
            return None
        return leave_one_out(self.per_trajectory)


class ExponentFit(object):  # pylint: disable=too-few-public-methods
    def __init__(self, exponent, prefactor, stderr, window, residual_rms, n_points):
        self.exponent = exponent
        self.prefactor = prefactor
        self.stderr = stderr
        self.window = window
        self.residual_rms = residual_rms
        self.n_points = n_points

    def to_dict(self):
        return {
            'exponent': self.exponent,
            'prefactor': self.prefactor,
            'stderr': self.stderr,
            'window': list(self.window),
            'residual_rms': self.residual_rms,
            'n_points': self.n_points,
            }


class DiffusivityEstimate(object):
    '''Empirical D*, always of Covariance kind.'''

    def __init__(self, matrix, ci95, method, diagnostics=None):
        matrix = np.asarray(matrix, dtype=float)
        self.matrix = 0.5 * (matrix + matrix.T)
        self.ci95 = np.abs(np.asarray(ci95, dtype=float))
        self.method = method
        self.kind = DiffusivityKind.COVARIANCE
        self.diagnostics = diagnostics or {}

    def to_dict(self):
        return {
            'method': self.method,
            'kind': self.kind,
            'matrix': self.matrix.tolist(),
            'ci95': self.ci95.tolist(),
            'diagnostics': self.diagnostics,
            }


class ComparisonReport(object):
    def __init__(self, z, relative_error, z_pass):
        self.z = z
        self.relative_error = relative_error
        self.z_pass = z_pass
        self.passed = bool(np.all(np.abs(z) <= z_pass))

    @property
    def verdict(self):
        return 'pass' if self.passed else 'fail'

    def to_dict(self):
        return {
            'verdict': self.verdict,
            'z': self.z.tolist(),
            'max_abs_z': float(np.max(np.abs(self.z))),
            'relative_error': self.relative_error.tolist(),
            'z_pass': self.z_pass,
            }


def msd(ensemble):
    if ensemble.n_traj < 2:
        raise TooFewTrajectories("Jackknife errors need at least 2 trajectories.",
                                 {'n_traj': ensemble.n_traj})
    displacement = ensemble.positions - ensemble.positions[:, :1, :]
    outer = np.einsum('nti,ntj->ntij', displacement, displacement)
    matrix = outer.mean(axis=0)
    per_trace = np.einsum('ntii->nt', outer)
    trace = per_trace.mean(axis=0)
    stderr = jackknife_stderr(leave_one_out(per_trace))
    return MsdCurve(ensemble.times, trace, matrix, stderr, ensemble.n_traj, outer)

def macroscopic(ensemble, eps):
    '''(t, x_eps(t)) with x_eps(t) = eps y(t / eps^2).'''
    return ensemble.times * eps * eps, ensemble.positions * eps


def default_window(times):
    '''The last decade of sample times, excluding the final 10 %.'''
    times = np.asarray(times, dtype=float)
    hi = times[-1] * (1 - AnalysisDefaults.WINDOW_TAIL_EXCLUDE)
    lo = hi / 10 ** AnalysisDefaults.WINDOW_DECADES
    positive = times[times > 0]
    if len(positive):
        lo = max(lo, float(positive[0]))
    return lo, hi

def _window_mask(times, window):
    lo, hi = window
    if not lo < hi:
        raise ValueError("window should satisfy lo < hi, got {}.".format(window))
    mask = (times >= lo) & (times <= hi)
    if mask.sum() < AnalysisDefaults.MIN_WINDOW_POINTS:
        raise ValueError("window {} holds {} points, at least {} are needed.".format(
            window, int(mask.sum()), AnalysisDefaults.MIN_WINDOW_POINTS))
    return mask

def check_window(times, window=None):
    '''The fit window for these sample times; raise ValueError when it holds too few.'''
    times = np.asarray(times, dtype=float)
    window = window or default_window(times)
    _window_mask(times, window)
    return window

def _weighted_line(x, y, w):
    '''Slopes and intercepts of the weighted fit of y (..., n) against x (n,).'''
    w = w / w.sum()
    x_mean = w @ x
    y_mean = y @ w
    dx = x - x_mean
    slope = (y - np.asarray(y_mean)[..., None]) @ (w * dx) / (w @ (dx * dx))
    return slope, y_mean - slope * x_mean


def fit_exponent(curve, window=None):
    '''Weighted least squares of log msd_trace against log s.'''
    window = window or default_window(curve.times)
    mask = _window_mask(curve.times, window)
    values = curve.msd_trace[mask]
    if np.any(values <= 0):
        raise DegenerateWindow("MSD is not positive inside the fit window.",
                               {'window': list(window), 'min_msd': float(values.min())})

    x = np.log(curve.times[mask])
    y = np.log(values)
    log_err = curve.stderr[mask] / values
    weights = np.ones_like(x) if np.any(log_err <= 0) else 1.0 / log_err ** 2
    slope, intercept = _weighted_line(x, y, weights)
    residual = y - (slope * x + intercept)

    replicates = curve.replicates()
    if replicates is not None:
        trace = np.einsum('ntii->nt', replicates)[:, mask]
        if np.all(trace > 0):
            jack_slopes, _ = _weighted_line(x, np.log(trace), weights)
            stderr = float(jackknife_stderr(jack_slopes))
        else:
            stderr = math.nan
    else:
        dx = x - x.mean()
        stderr = float(math.sqrt(residual @ residual / (len(x) - 2) / (dx @ dx)))

    return ExponentFit(float(slope), float(math.exp(intercept)), stderr, tuple(window),
                       float(math.sqrt(np.mean(residual ** 2))), int(mask.sum()))

def msd_slope(curve, window=None):
    '''Late-time slope of E[y_i y_j] against s, fitted with an intercept.'''
    window = window or default_window(curve.times)
    mask = _window_mask(curve.times, window)
    s = curve.times[mask]
    weights = np.ones_like(s)
    d = curve.d
    entries = curve.msd_matrix[mask].reshape(len(s), d * d).T
    slope, _ = _weighted_line(s, entries, weights)
    slope = slope.reshape(d, d)

    replicates = curve.replicates()
    if replicates is not None:
        n = replicates.shape[0]
        jack = replicates[:, mask].reshape(n, len(s), d * d).transpose(0, 2, 1)
        jack_slopes, _ = _weighted_line(s, jack, weights)
        stderr = jackknife_stderr(jack_slopes).reshape(d, d)
    else:
        stderr = np.zeros((d, d))
    return DiffusivityEstimate(slope, AnalysisDefaults.CI95 * stderr, EstimateMethod.MSD_SLOPE,
                               {'window': list(window), 'n_points': int(mask.sum())})


class VacfCurve(object):
    '''Lagrangian velocity autocorrelation E[v(s) (x) v(0)] and its trace.

    A curve built from a scalar series alone gets the isotropic matrix vacf/d I.
    '''

    def __init__(self, lags, vacf, stderr, matrix=None, per_trajectory=None, d=2):
        self.lags = np.asarray(lags, dtype=float)
        self.vacf = np.asarray(vacf, dtype=float)
        self.stderr = np.asarray(stderr, dtype=float)
        self.per_trajectory = per_trajectory
        if matrix is None:
            matrix = self.vacf[:, None, None] * np.eye(d)[None, :, :] / float(d)
        self.matrix = np.asarray(matrix, dtype=float)


def _correlations(velocities, n_origins, n_lags):
    '''sum_{o < n_origins} v_i(o) v_j(o + lag) / n_origins for every trajectory.'''
    n_time = velocities.shape[1]
    size = 1 << int(math.ceil(math.log(n_time + n_origins, 2)))
    head = np.zeros_like(velocities)
    head[:, :n_origins] = velocities[:, :n_origins]
    spectrum_head = np.fft.rfft(head, n=size, axis=1)
    spectrum_all = np.fft.rfft(velocities, n=size, axis=1)
    cross = np.conj(spectrum_head)[..., :, None] * spectrum_all[..., None, :]
    return np.fft.irfft(cross, n=size, axis=1)[:, :n_lags] / n_origins

def lagrangian_vacf(ensemble, velocities=None):
    '''Average over trajectories and over time origins in the first half of the record.

    :param velocities: (n_traj, n_samples, d) velocities along the stored
        positions; replayed from the ensemble's seeds when omitted.
    :raises ReplayUnavailable: when velocities must be replayed but cannot be.
    '''
    if ensemble.n_traj < 2:
        raise TooFewTrajectories("Jackknife errors need at least 2 trajectories.",
                                 {'n_traj': ensemble.n_traj})
    if velocities is None:
        velocities = np.stack([tracer.replay_velocities(ensemble, index)
                               for index in range(ensemble.n_traj)])
    n_time = velocities.shape[1]
    half = n_time // 2
    per_trajectory = _correlations(np.asarray(velocities, dtype=float), half, n_time - half)
    per_trace = np.einsum('nlii->nl', per_trajectory)
    lags = ensemble.times[:n_time - half] - ensemble.times[0]
    return VacfCurve(lags, per_trace.mean(axis=0), jackknife_stderr(leave_one_out(per_trace)),
                     per_trajectory.mean(axis=0), per_trajectory)


def _plateau(running, lags, fraction):
    start = int(len(lags) * (1 - fraction))
    return running[..., start:, :, :] if running.ndim == 4 else running[start:]

def green_kubo(curve, plateau_fraction=AnalysisDefaults.PLATEAU_FRACTION,
               rtol=AnalysisDefaults.PLATEAU_RTOL, strict=True, log_context=None):
    '''D* = K + K^T with K the plateau of the running trapezoid integral of the vacf.

    :raises TailNotConverged: when the running integral still drifts over the
        last `plateau_fraction` of lags (only when strict).
    '''
    logger = log.Logger('GreenKubo', log_context)
    running = integrate.cumulative_trapezoid(curve.matrix, curve.lags, axis=0, initial=0)
    tail = _plateau(running, curve.lags, plateau_fraction)
    one_sided = tail.mean(axis=0)
    tail_trace = np.einsum('lii->l', tail)
    spread = float(tail_trace.max() - tail_trace.min())

    if curve.per_trajectory is not None:
        jack_running = integrate.cumulative_trapezoid(leave_one_out(curve.per_trajectory),
                                                      curve.lags, axis=1, initial=0)
        jack_one_sided = _plateau(jack_running, curve.lags, plateau_fraction).mean(axis=1)
        jack_cov = jack_one_sided + np.swapaxes(jack_one_sided, 1, 2)
        stderr = jackknife_stderr(jack_cov)
    else:
        stderr = np.zeros_like(one_sided)

    tolerance = max(rtol * abs(float(np.trace(one_sided))), 2 * float(np.trace(stderr)))
    converged = spread <= tolerance
    diagnostics = {
        'one_sided_trace': float(np.trace(one_sided)),
        'plateau_spread': spread,
        'plateau_tolerance': tolerance,
        'tail_converged': converged,
        }
    if not converged:
        if strict:
            raise TailNotConverged("Running Green-Kubo integral has not plateaued.", diagnostics)
        logger.warn("Green-Kubo tail spread %(spread)s exceeds %(tol)s",
                    {'spread': spread, 'tol': tolerance})
    return DiffusivityEstimate(one_sided + one_sided.T, AnalysisDefaults.CI95 * stderr,
                               EstimateMethod.GREEN_KUBO, diagnostics)


def compare(estimate, prediction, z_pass=AnalysisDefaults.Z_PASS):
    '''Per-entry z-scores of estimate against prediction; both must be Covariance kind.'''
    if estimate.kind != prediction.kind:
        raise KindMismatch("Refusing to compare a {} estimate with a {} prediction.".format(
            estimate.kind, prediction.kind), {'estimate': estimate.kind, 'prediction': prediction.kind})
    difference = estimate.matrix - prediction.value
    sigma = np.sqrt((estimate.ci95 / AnalysisDefaults.CI95) ** 2 + prediction.abs_error_estimate ** 2)
    with np.errstate(divide='ignore', invalid='ignore'):
        z = np.where(sigma > 0, difference / sigma,
                     np.where(difference == 0, 0.0, np.copysign(np.inf, difference)))
        scale = np.abs(prediction.value)
        relative = np.where(scale > 0, np.abs(difference) / scale, np.abs(difference))
    return ComparisonReport(z, relative, z_pass)
