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

'''Finite-mode synthesis of the Gaussian, divergence-free, Markov velocity field.

Each mode carries a wavevector k, an energy share ``weight`` and an orthonormal
basis of the plane perpendicular to k. Amplitudes live in that basis, so the
field is divergence-free by construction:

    v(x) = sum_m sqrt(w_m) [cos(k_m.x) B_m xi_m + sin(k_m.x) B_m eta_m]

with every amplitude component an Ornstein-Uhlenbeck process of rate
|k_m|^(2 beta) and stationary variance 1/(d-1).
'''
import hashlib
import io
import json
import math
import struct

import numpy as np

from . import argument
from . import kubo
from . import log
from . import rng
from . import spectrum
from .constants import FieldDefaults
from .quadrature import gauss_legendre
from .turbdiff_error import EmptySpectrum, ModeSetMismatch, SnapshotError


class ShellTable(object):
    '''Deterministic part of mode sampling: shells, exact masses, inverse CDFs.'''

    def __init__(self, params, n_shells=FieldDefaults.N_SHELLS,
                 k_min_ratio=FieldDefaults.K_MIN_RATIO, log_context=None):
        argument.validate_positive_int(n_shells, 'n_shells')
        argument.validate_ratio(k_min_ratio, 'k_min_ratio')
        self._log = log.Logger('ShellTable', log_context)
        self.params = params
        self.n_shells = n_shells
        self.k_min_ratio = k_min_ratio
        self.k_min = params.cutoff * k_min_ratio
        self.edges = np.geomspace(self.k_min, params.cutoff, n_shells + 1)

        masses = []
        errors = []
        self._nodes = []
        self._cumulative = []
        for lo, hi in zip(self.edges[:-1], self.edges[1:]):
            mass, error = kubo.radial_mass(params, lo, hi, log_context=log_context)
            masses.append(mass)
            errors.append(error)
            nodes, cumulative = self._cdf_table(lo, hi, mass)
            self._nodes.append(nodes)
            self._cumulative.append(cumulative)
        self.masses = np.array(masses)
        self.mass_errors = np.array(errors)

        self.total_energy, _ = kubo.radial_mass(params, 0.0, params.cutoff, log_context=log_context)
        self.truncated_energy, _ = kubo.radial_mass(params, 0.0, self.k_min, log_context=log_context)
        self.energy_error_bound = self.truncated_energy + float(self.mass_errors.sum())
        self._log.debug("Built %(n)s shells on [%(lo)s, %(hi)s], sampled energy %(mass)s of %(total)s",
                        {'n': n_shells, 'lo': self.k_min, 'hi': params.cutoff,
                         'mass': float(self.masses.sum()), 'total': self.total_energy})

    def _cdf_table(self, lo, hi, mass):
        nodes = set(np.geomspace(lo, hi, FieldDefaults.CDF_NODES))
        nodes.update(k for k in self.params.breakpoints() if lo < k < hi)
        nodes = np.array(sorted(nodes))
        gl_nodes, gl_weights = gauss_legendre(20)
        half = 0.5 * (nodes[1:] - nodes[:-1])
        mid = 0.5 * (nodes[1:] + nodes[:-1])
        x = mid[:, None] + half[:, None] * gl_nodes[None, :]
        pieces = half * (spectrum.shell_energy(self.params, x) @ gl_weights)
        cumulative = np.concatenate([[0.0], np.cumsum(pieces)])
        if cumulative[-1] > 0:
            cumulative *= mass / cumulative[-1]
        return nodes, cumulative

    def radii(self, shell, u):
        '''Radii in `shell` at mass fractions u in [0, 1).'''
        cumulative = self._cumulative[shell]
        return np.interp(u * cumulative[-1], cumulative, self._nodes[shell])

    def manifest(self):
        return {
            'n_shells': self.n_shells,
            'k_min_ratio': self.k_min_ratio,
            'edges': self.edges.tolist(),
            'masses': self.masses.tolist(),
            'total_energy': self.total_energy,
            'truncated_energy': self.truncated_energy,
            'energy_error_bound': self.energy_error_bound,
            'energy_normalization': spectrum.energy_normalization(self.params.d),
            }


def perpendicular_basis(directions):
    '''Orthonormal bases of the planes perpendicular to unit vectors, shape (m, d, d-1).

    Columns 2..d of the Householder reflection mapping e1 to -+u.
    '''
    m, d = directions.shape
    sign = np.where(directions[:, 0] >= 0, 1.0, -1.0)
    v = directions.copy()
    v[:, 0] += sign
    norm2 = np.einsum('mi,mi->m', v, v)
    reflection = np.eye(d)[None, :, :] - 2.0 * np.einsum('mi,mj->mij', v, v) / norm2[:, None, None]
    return reflection[:, :, 1:].copy()


class ModeSet(object):
    def __init__(self, params, k, weight, basis, seed, n_shells, modes_per_shell, k_min_ratio,
                 shell_index=None):
        self.params = params
        self.k = np.asarray(k, dtype=float)
        self.weight = np.asarray(weight, dtype=float)
        self.basis = np.asarray(basis, dtype=float)
        self.seed = int(seed)
        self.n_shells = n_shells
        self.modes_per_shell = modes_per_shell
        self.k_min_ratio = k_min_ratio
        self.shell_index = shell_index
        self.norms = np.linalg.norm(self.k, axis=1)
        self.rates = self.norms ** (2 * params.beta)
        self.sqrt_weight = np.sqrt(self.weight)
        self.variance = 1.0 / (params.d - 1)
        self.params_hash = self._digest()

    def __len__(self):
        return len(self.weight)

    def _digest(self):
        header = json.dumps({
            'params': self.params.digest(),
            'seed': self.seed,
            'n_shells': self.n_shells,
            'modes_per_shell': self.modes_per_shell,
            'k_min_ratio': self.k_min_ratio,
            }, sort_keys=True)
        hasher = hashlib.sha256(header.encode('utf8'))
        hasher.update(self.k.astype('<f8').tobytes())
        hasher.update(self.weight.astype('<f8').tobytes())
        return hasher.hexdigest()

    def energy(self):
        '''Sum of weight times the per-mode variance density (d-1) sigma^2.'''
        return float(np.sum(self.weight)) * (self.params.d - 1) * self.variance


def sample_modes(params, n_shells=FieldDefaults.N_SHELLS,
                 modes_per_shell=FieldDefaults.MODES_PER_SHELL,
                 k_min_ratio=FieldDefaults.K_MIN_RATIO, seed=None, table=None, log_context=None):
    '''Stratified log-radial discretization of the spectral measure.

    :param seed: overrides params.seed when given.
    :param table: a prebuilt ShellTable for the same (params, n_shells, k_min_ratio).
    '''
    argument.validate_positive_int(modes_per_shell, 'modes_per_shell')
    seed = params.seed if seed is None else seed
    argument.validate_seed(seed)
    if table is None:
        table = ShellTable(params, n_shells, k_min_ratio, log_context)
    elif table.n_shells != n_shells or table.k_min_ratio != k_min_ratio or table.params != params:
        raise ValueError("ShellTable was built for a different configuration.")

    active = [i for i in range(n_shells) if table.masses[i] > 0]
    if not active:
        raise EmptySpectrum("The shape function vanishes on the sampled range.",
                            {'k_min': table.k_min, 'cutoff': params.cutoff})

    generator = rng.generator(seed, rng.MODES)
    radii = []
    weights = []
    shell_index = []
    for shell in active:
        u = (np.arange(modes_per_shell) + generator.random(modes_per_shell)) / modes_per_shell
        radii.append(table.radii(shell, u))
        weights.append(np.full(modes_per_shell, table.masses[shell] / modes_per_shell))
        shell_index.append(np.full(modes_per_shell, shell))
    radii = np.concatenate(radii)

    directions = generator.standard_normal((len(radii), params.d))
    directions /= np.linalg.norm(directions, axis=1)[:, None]

    return ModeSet(params, directions * radii[:, None], np.concatenate(weights),
                   perpendicular_basis(directions), seed, n_shells, modes_per_shell,
                   k_min_ratio, np.concatenate(shell_index))


class FieldState(object):
    '''OU amplitudes of every mode at time t; immutable, advance returns a new one.'''

    def __init__(self, params_hash, t, xi, eta, rates, variance, stream, step):
        self.params_hash = params_hash
        self.t = t
        self.xi = xi
        self.eta = eta
        self.rates = rates
        self.variance = variance
        self.stream = stream
        self.step = step
        self._ambient = None

    @property
    def rng_state(self):
        return self.stream.seed, self.step

    def ambient(self, modes):
        '''Amplitudes in ambient coordinates, shape (2, m, d).'''
        if self._ambient is None:
            self._ambient = np.stack([
                np.einsum('mij,mj->mi', modes.basis, self.xi),
                np.einsum('mij,mj->mi', modes.basis, self.eta)])
        return self._ambient


def init_state(modes, seed):
    stream = rng.CounterStream(seed)
    draws = stream.normals(0, (2, len(modes), modes.params.d - 1)) * math.sqrt(modes.variance)
    return FieldState(modes.params_hash, 0.0, draws[0], draws[1], modes.rates,
                      modes.variance, stream, 1)

def zero_state(modes, seed=0):
    '''A state with all amplitudes 0; the field it carries vanishes until advanced.'''
    shape = (len(modes), modes.params.d - 1)
    return FieldState(modes.params_hash, 0.0, np.zeros(shape), np.zeros(shape), modes.rates,
                      modes.variance, rng.CounterStream(seed), 1)

def advance(state, dt):
    '''Exact OU transition over dt; the stationary law is preserved.'''
    argument.validate_nonnegative(dt, 'dt')
    rho = np.exp(-state.rates * dt)
    spread = np.sqrt(-np.expm1(-2.0 * state.rates * dt) * state.variance)
    noise = state.stream.normals(state.step, (2,) + state.xi.shape)
    xi = rho[:, None] * state.xi + spread[:, None] * noise[0]
    eta = rho[:, None] * state.eta + spread[:, None] * noise[1]
    return FieldState(state.params_hash, state.t + dt, xi, eta, state.rates, state.variance,
                      state.stream, state.step + 1)

def _check(modes, state):
    if modes.params_hash != state.params_hash:
        raise ModeSetMismatch("FieldState was not built from this ModeSet.",
                              {'modes': modes.params_hash, 'state': state.params_hash})

def evaluate(modes, state, x):
    _check(modes, state)
    phase = np.einsum('mi,i->m', modes.k, np.asarray(x, dtype=float))
    amplitude = state.ambient(modes)
    # einsum keeps the summation order fixed, independent of BLAS threading
    return np.einsum('m,mi->i', modes.sqrt_weight * np.cos(phase), amplitude[0]) + \
           np.einsum('m,mi->i', modes.sqrt_weight * np.sin(phase), amplitude[1])

def evaluate_gradient(modes, state, x):
    '''Matrix G with G_ij = d v_i / d x_j.'''
    _check(modes, state)
    phase = np.einsum('mi,i->m', modes.k, np.asarray(x, dtype=float))
    amplitude = state.ambient(modes)
    coefficients = modes.sqrt_weight[:, None] * (
        -np.sin(phase)[:, None] * amplitude[0] + np.cos(phase)[:, None] * amplitude[1])
    return np.einsum('mi,mj->ij', coefficients, modes.k)

def divergence_residual(modes, state):
    '''max |k . amplitude| over modes and both channels.'''
    amplitude = state.ambient(modes)
    return float(np.max(np.abs(np.einsum('cmi,mi->cm', amplitude, modes.k))))


# snapshot layout: see docs/source/snapshot_format.rst
_HEADER = struct.Struct('<4sHHIIIdQQQdI')

def save_snapshot(path, modes, state):
    _check(modes, state)
    d = modes.params.d
    params_blob = json.dumps(modes.params.to_dict(), sort_keys=True).encode('utf8')
    body = io.BytesIO()
    body.write(_HEADER.pack(FieldDefaults.SNAPSHOT_MAGIC, FieldDefaults.SNAPSHOT_VERSION, d,
                            len(modes), modes.n_shells, modes.modes_per_shell, modes.k_min_ratio,
                            modes.seed, state.stream.seed, state.step, state.t, len(params_blob)))
    body.write(params_blob)
    for array in (modes.k, modes.weight, modes.basis, state.xi, state.eta):
        body.write(np.ascontiguousarray(array, dtype='<f8').tobytes())
    payload = body.getvalue()
    with open(path, 'wb') as handle:
        handle.write(payload)
        handle.write(hashlib.sha256(payload).digest())

def load_snapshot(path):
    with open(path, 'rb') as handle:
        blob = handle.read()
    if len(blob) < _HEADER.size + 32:
        raise SnapshotError("Snapshot is truncated.", {'path': str(path)})
    payload, checksum = blob[:-32], blob[-32:]
    if hashlib.sha256(payload).digest() != checksum:
        raise SnapshotError("Snapshot checksum mismatch.", {'path': str(path)})

    (magic, version, d, n_modes, n_shells, modes_per_shell, k_min_ratio,
     mode_seed, state_seed, step, t, params_len) = _HEADER.unpack_from(payload, 0)
    if magic != FieldDefaults.SNAPSHOT_MAGIC or version != FieldDefaults.SNAPSHOT_VERSION:
        raise SnapshotError("Unsupported snapshot format.", {'magic': repr(magic), 'version': version})

    offset = _HEADER.size
    params = spectrum.ModelParams.from_dict(json.loads(payload[offset:offset + params_len].decode('utf8')))
    offset += params_len

    def take(shape):
        nonlocal offset
        count = int(np.prod(shape))
        array = np.frombuffer(payload, dtype='<f8', count=count, offset=offset).reshape(shape)
        offset += 8 * count
        return array.astype(float)

    k = take((n_modes, d))
    weight = take((n_modes,))
    basis = take((n_modes, d, d - 1))
    xi = take((n_modes, d - 1))
    eta = take((n_modes, d - 1))
    modes = ModeSet(params, k, weight, basis, mode_seed, n_shells, modes_per_shell, k_min_ratio)
    state = FieldState(modes.params_hash, t, xi, eta, modes.rates, modes.variance,
                       rng.CounterStream(state_seed), step)
    return modes, state
