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

import numpy as np

from turbdiff import log
from turbdiff import tracer
from turbdiff.spectrum import ModelParams, ShapeFn

# d = 2, alpha = beta = 1/4, a = 1 on [0, 1]: K = pi I, E|V|^2 = 4 pi / 3
parameters = {
    'd': 2,
    'alpha': 0.25,
    'beta': 0.25,
    'cutoff': 1.0,
    'seed': 20240611,
    'one_sided': math.pi,
    'covariance': 2 * math.pi,
    'energy': 4 * math.pi / 3,
}

def canonical_params(**overrides):
    values = dict(d=parameters['d'], alpha=parameters['alpha'], beta=parameters['beta'],
                  cutoff=parameters['cutoff'], shape=ShapeFn.indicator(0.0, 1.0),
                  seed=parameters['seed'])
    values.update(overrides)
    return ModelParams(**values)

def zero_params():
    return ModelParams(2, 0.25, 0.25, 1.0, ShapeFn.tabulated([0.0, 1.0], [0.0, 0.0]))


def brownian_ensemble(n_traj, n_steps, dt, diffusivity, seed, d=2):
    '''Exact Brownian paths with E[y_i y_j] = diffusivity * delta_ij * s.'''
    generator = np.random.default_rng(seed)
    steps = generator.standard_normal((n_traj, n_steps, d)) * math.sqrt(diffusivity * dt)
    positions = np.concatenate([np.zeros((n_traj, 1, d)), np.cumsum(steps, axis=1)], axis=1)
    return tracer.TrajectoryEnsemble(np.arange(n_steps + 1) * dt, positions)

def ou_velocities(n_traj, n_steps, dt, rate, seed, d=2):
    '''Stationary OU series of unit variance, exactly discretized.'''
    generator = np.random.default_rng(seed)
    rho = math.exp(-rate * dt)
    velocities = np.empty((n_traj, n_steps, d))
    velocities[:, 0] = generator.standard_normal((n_traj, d))
    noise = generator.standard_normal((n_traj, n_steps, d)) * math.sqrt(1 - rho * rho)
    for step in range(1, n_steps):
        velocities[:, step] = rho * velocities[:, step - 1] + noise[:, step]
    return velocities


def turn_on_logging(level='DEBUG', handler=None):
    log.set_logging_options({
        'level' : level,
        'handler' : handler
        })

def reset_logging():
    log.set_logging_options()

CONFIG_TEMPLATE = '''
[model]
d = 2
alpha = {alpha}
beta = {beta}
cutoff = 1
shape = indicator
shape_lo = 0
shape_hi = 1

[integration]
dt = {dt}
t_final = {t_final}

[ensemble]
n_traj = {n_traj}
master_seed = 7
'''

def config_text(alpha=0.25, beta=0.25, dt=0.05, t_final=5.0, n_traj=4, extra=''):
    return CONFIG_TEMPLATE.format(alpha=alpha, beta=beta, dt=dt, t_final=t_final,
                                  n_traj=n_traj) + extra
