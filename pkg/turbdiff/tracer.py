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

'''Passive tracer integration in microscopic variables, dy/ds = V(s, eps y).

The scale eps separates the field's correlation length from the distance a
tracer travels per correlation time; eps = 1 is the unscaled flow.

The velocity field is advanced by exact OU transitions to the stage times of
each step: t, t + dt/2 (shared by both middle RK4 stages) and t + dt. Heun
uses the same two half advances so that both methods see the same field path
for a given seed.
'''
import math

import numpy as np
from joblib import Parallel, delayed

from . import argument
from . import field
from . import kubo
from . import log
from . import rng
from .constants import FieldDefaults, IntegrationMethod, TracerDefaults
from .turbdiff_error import ReplayUnavailable, StepOverflow


class IntegrationConfig(object):
    def __init__(self, dt, t_final, sample_every=1, method=IntegrationMethod.RK4,
                 freeze_field=False, max_displacement=None, eps=1.0):
        argument.validate_positive(dt, 'dt')
        argument.validate_positive(eps, 'eps')
        argument.validate_positive(t_final, 't_final')
        argument.validate_positive_int(sample_every, 'sample_every')
        if t_final < dt:
            raise ValueError("t_final should be >= dt, got t_final={}, dt={}.".format(t_final, dt))
        if method not in (IntegrationMethod.RK4, IntegrationMethod.HEUN):
            raise ValueError("Unknown integration method: {!r}".format(method))
        if max_displacement is not None:
            argument.validate_positive(max_displacement, 'max_displacement')
        self.dt = float(dt)
        self.t_final = float(t_final)
        self.sample_every = int(sample_every)
        self.method = method
        self.freeze_field = bool(freeze_field)
        self.max_displacement = max_displacement
        self.eps = float(eps)

    @property
    def n_steps(self):
        return int(math.floor(self.t_final / self.dt * (1 + 1e-12)))

    @property
    def sample_steps(self):
        return np.arange(0, self.n_steps + 1, self.sample_every)

    @property
    def times(self):
        return self.sample_steps * self.dt

    def displacement_bound(self, params):
        if self.max_displacement is not None:
            return self.max_displacement
        return TracerDefaults.STEP_DISPLACEMENT_FRACTION * 2 * math.pi / (self.eps * params.cutoff)

    def to_dict(self):
        return {
            'dt': self.dt,
            't_final': self.t_final,
            'sample_every': self.sample_every,
            'method': self.method,
            'freeze_field': self.freeze_field,
            'max_displacement': self.max_displacement,
            'eps': self.eps,
            }


class ModeConfig(object):  # pylint: disable=too-few-public-methods
    def __init__(self, n_shells=FieldDefaults.N_SHELLS, modes_per_shell=FieldDefaults.MODES_PER_SHELL,
                 k_min_ratio=FieldDefaults.K_MIN_RATIO):
        argument.validate_positive_int(n_shells, 'n_shells')
        argument.validate_positive_int(modes_per_shell, 'modes_per_shell')
        argument.validate_ratio(k_min_ratio, 'k_min_ratio')
        self.n_shells = n_shells
        self.modes_per_shell = modes_per_shell
        self.k_min_ratio = k_min_ratio

    def to_dict(self):
        return {
            'n_shells': self.n_shells,
            'modes_per_shell': self.modes_per_shell,
            'k_min_ratio': self.k_min_ratio,
            }


class TrajectoryEnsemble(object):
    '''Sampled positions, shape (n_traj, n_samples, d), with their provenance.

    ``master_seed`` is None for ensembles that did not come from run_ensemble;
    those cannot be replayed.
    '''

    def __init__(self, times, positions, params=None, integration=None, mode_config=None,
                 master_seed=None, seeds=None):
        self.times = np.asarray(times, dtype=float)
        self.positions = np.asarray(positions, dtype=float)
        self.params = params
        self.integration = integration
        self.mode_config = mode_config
        self.master_seed = master_seed
        self.seeds = seeds or []

    @property
    def n_traj(self):
        return self.positions.shape[0]

    @property
    def d(self):
        return self.positions.shape[2]

    @property
    def replayable(self):
        return (self.master_seed is not None and self.params is not None and
                self.integration is not None and self.mode_config is not None)

    def provenance(self):
        return {
            'master_seed': self.master_seed,
            'n_traj': self.n_traj,
            'params': self.params.to_dict() if self.params else None,
            'integration': self.integration.to_dict() if self.integration else None,
            'mode_config': self.mode_config.to_dict() if self.mode_config else None,
            }


def trajectory_seeds(master_seed, index):
    '''(mode seed, state seed) of trajectory `index`.'''
    return (rng.derive_seed(master_seed, rng.TRAJECTORY, index, rng.MODES),
            rng.derive_seed(master_seed, rng.TRAJECTORY, index, rng.STATE))

def field_path(state0, cfg):
    '''Yield (state, half, full) for every step: the field at t, t + dt/2, t + dt.'''
    state = state0
    half_dt = 0.5 * cfg.dt
    for _ in range(cfg.n_steps):
        if cfg.freeze_field:
            yield state, state, state
            continue
        half = field.advance(state, half_dt)
        full = field.advance(half, half_dt)
        yield state, half, full
        state = full


def integrate_one(modes, state0, x0, cfg, log_context=None):
    '''Positions at cfg.times, shape (n_samples, d), starting at x0 at s = 0.

    :raises StepOverflow: when |v| dt exceeds the displacement bound.
    '''
    if state0.t != 0:
        raise ValueError("state0 should start at t = 0, got t = {}.".format(state0.t))
    dt = cfg.dt
    bound = cfg.displacement_bound(modes.params)
    x = np.array(x0, dtype=float)
    samples = [x.copy()]
    sample_every = cfg.sample_every
    eps = cfg.eps

    def velocity(state, point):
        v = field.evaluate(modes, state, eps * point)
        if float(np.linalg.norm(v)) * dt > bound:
            raise StepOverflow("Step displacement exceeds the bound; dt is too coarse.",
                               {'dt': dt, 'speed': float(np.linalg.norm(v)), 'bound': bound,
                                't': state.t})
        return v

    for step, (state, half, full) in enumerate(field_path(state0, cfg), 1):
        k1 = velocity(state, x)
        if cfg.method == IntegrationMethod.RK4:
            k2 = velocity(half, x + 0.5 * dt * k1)
            k3 = velocity(half, x + 0.5 * dt * k2)
            k4 = velocity(full, x + dt * k3)
            x = x + dt / 6.0 * (k1 + 2 * k2 + 2 * k3 + k4)
        else:
            k2 = velocity(full, x + dt * k1)
            x = x + 0.5 * dt * (k1 + k2)
        if step % sample_every == 0:
            samples.append(x.copy())

    log.Logger('Tracer', log_context).debug("Integrated %(steps)s steps to %(x)s",
                                            {'steps': cfg.n_steps, 'x': x.tolist()})
    return np.array(samples)


def _run_member(params, mode_cfg, cfg, table, master_seed, index, log_context):
    mode_seed, state_seed = trajectory_seeds(master_seed, index)
    modes = field.sample_modes(params, mode_cfg.n_shells, mode_cfg.modes_per_shell,
                               mode_cfg.k_min_ratio, seed=mode_seed, table=table)
    state0 = field.init_state(modes, state_seed)
    try:
        return integrate_one(modes, state0, np.zeros(params.d), cfg, log_context)
    except StepOverflow as exp:
        response = dict(exp.error_response, trajectory=index)
        raise StepOverflow("Trajectory {}: {}".format(index, exp), response)

def run_ensemble(params, mode_cfg, cfg, n_traj, master_seed, n_jobs=1, table=None,
                 log_context=None):
    '''n_traj independent trajectories, each with its own modes and field stream.

    Output does not depend on n_jobs: every member is keyed by its index.
    '''
    argument.validate_positive_int(n_traj, 'n_traj')
    argument.validate_seed(master_seed, 'master_seed')
    logger = log.Logger('Ensemble', log_context)
    if table is None:
        table = field.ShellTable(params, mode_cfg.n_shells, mode_cfg.k_min_ratio, log_context)

    logger.info("Running %(n)s trajectories of %(steps)s steps on %(jobs)s workers",
                {'n': n_traj, 'steps': cfg.n_steps, 'jobs': n_jobs})
    members = Parallel(n_jobs=n_jobs)(
        delayed(_run_member)(params, mode_cfg, cfg, table, master_seed, index, log_context)
        for index in range(n_traj))

    seeds = [trajectory_seeds(master_seed, index) for index in range(n_traj)]
    return TrajectoryEnsemble(cfg.times, np.stack(members), params, cfg, mode_cfg,
                              master_seed, seeds)


def replay_velocities(ensemble, index):
    '''Recompute the velocity at every sampled position of trajectory `index`.'''
    if not ensemble.replayable:
        raise ReplayUnavailable("Ensemble carries no seeds to replay its field from.",
                                {'n_traj': ensemble.n_traj})
    params, cfg, mode_cfg = ensemble.params, ensemble.integration, ensemble.mode_config
    mode_seed, state_seed = trajectory_seeds(ensemble.master_seed, index)
    modes = field.sample_modes(params, mode_cfg.n_shells, mode_cfg.modes_per_shell,
                               mode_cfg.k_min_ratio, seed=mode_seed)
    state = field.init_state(modes, state_seed)
    positions = ensemble.positions[index] * cfg.eps

    velocities = [field.evaluate(modes, state, positions[0])]
    for step, (_, _, full) in enumerate(field_path(state, cfg), 1):
        if step % cfg.sample_every == 0:
            velocities.append(field.evaluate(modes, full, positions[len(velocities)]))
    return np.array(velocities)


def velocity_rms(params, log_context=None):
    return math.sqrt(float(np.trace(kubo.eulerian_correlation(params, 0.0, log_context=log_context))))

def correlation_time(params, log_context=None):
    '''int_0^inf R_11(t) dt / R_11(0); only finite on the diffusive side.'''
    one_sided = kubo.taylor_kubo(params, log_context=log_context)
    return float(one_sided.value[0, 0] / kubo.eulerian_correlation(params, 0.0, log_context=log_context)[0, 0])

def default_dt(params, log_context=None):
    '''0.1 min(1 / (K v_rms), 1 / K^(2 beta)).'''
    cutoff = params.cutoff
    rms = velocity_rms(params, log_context)
    sweep = 1.0 / (cutoff * rms) if rms > 0 else math.inf
    return TracerDefaults.DT_SAFETY * min(sweep, cutoff ** (-2 * params.beta))

def validity_horizon(params, k_min_ratio):
    '''k_min^(-2 beta): beyond it the slowest missing modes matter.'''
    if params.beta == 0:
        return math.inf
    return (params.cutoff * k_min_ratio) ** (-2 * params.beta)
