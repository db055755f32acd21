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

# pylint: disable=too-few-public-methods,no-init

class Errors(object):
    # Constants
    ERROR_VALUE_NONE = '{} should not be None.'
    ERROR_NOT_POSITIVE = '{} should be > 0, got {}.'
    ERROR_NEGATIVE = '{} should be >= 0, got {}.'
    ERROR_DIMENSION = 'd should be an integer >= 2, got {}.'
    ERROR_ALPHA = 'alpha should be < 1 for an integrable spectrum, got {}.'
    ERROR_SHAPE_SUPPORT = 'shape support {} must lie inside [0, cutoff={}].'
    ERROR_DIVERGENT = ('Taylor-Kubo integral diverges: alpha + beta = {} violates '
                       'alpha + beta < 1 (margin {}).')

class ExitCodes(object):
    SUCCESS = 0
    FAILURE = 1
    VALIDATION = 2
    DIVERGENCE = 3
    STATISTICAL = 4
    QUADRATURE = 5

class ShapeKind(object):
    INDICATOR = 'indicator'
    BUMP = 'bump'
    TABULATED = 'tabulated'

class DiffusivityKind(object):
    ONE_SIDED = 'one_sided'
    COVARIANCE = 'covariance'

class Verdict(object):
    DIFFUSIVE = 'diffusive'
    SUPERDIFFUSIVE = 'superdiffusive'
    BOUNDARY = 'boundary'

class EstimateMethod(object):
    MSD_SLOPE = 'msd_slope'
    GREEN_KUBO = 'green_kubo'

class IntegrationMethod(object):
    RK4 = 'rk4'
    HEUN = 'heun'

class ScalingParameter(object):
    EPS = 'eps'
    LAMBDA = 'lambda'

class CorrectorOp(object):
    CHI1 = 'chi1_variance'
    GRAD_CHI1 = 'grad_chi1_variance'

class Phase(object):
    TOL_BOUNDARY = 1e-9

class Quadrature(object):
    GAUSS_POINTS = 10
    GRADING_RATIO = 2.0
    GRADING_DEPTH = 40
    SCALE_FLOOR_FACTOR = 1e-3
    MAX_PANELS = 4000
    RTOL = 1e-10
    ATOL = 1e-14

class FieldDefaults(object):
    N_SHELLS = 32
    MODES_PER_SHELL = 8
    K_MIN_RATIO = 1e-3
    CDF_NODES = 129
    SNAPSHOT_MAGIC = b'TDFS'
    SNAPSHOT_VERSION = 1

class TracerDefaults(object):
    DT_SAFETY = 0.1
    STEP_DISPLACEMENT_FRACTION = 0.5

class AnalysisDefaults(object):
    MIN_WINDOW_POINTS = 8
    WINDOW_DECADES = 1.0
    WINDOW_TAIL_EXCLUDE = 0.1
    Z_PASS = 3.0
    CI95 = 1.959963984540054
    PLATEAU_FRACTION = 0.2
    PLATEAU_RTOL = 0.05

class CorrectorDefaults(object):
    MIN_DECADES = 3.0
    DEEPEN_STEP = 10.0
    DEEPEN_MAX = 8
    STABLE_RTOL = 0.005

class Csv(object):
    FLOAT_FORMAT = '{:.17g}'
    MSD = 'msd.csv'
    VACF = 'vacf.csv'
    PHASE = 'phase.csv'
    SCALING = 'scaling.csv'
    KUBO = 'kubo.csv'
    ESTIMATE = 'estimate.json'
    KUBO_REPORT = 'kubo.json'
    VALIDATE_REPORT = 'validate.json'
    MANIFEST = 'manifest.json'
    VACF_HEADER = ['s', 'vacf', 'stderr']
    PHASE_HEADER = ['alpha', 'beta', 'margin', 'verdict', 'exponent',
                    'exponent_stderr', 'status']
    SCALING_HEADER = ['param_name', 'param_value', 'integral_value',
                      'fit_exponent', 'theory_exponent']
    KUBO_HEADER = ['eps', 'kind', 'd_eps_11', 'abs_error_estimate']

class EnvVars(object):
    THREADS = 'TURBDIFF_THREADS'
    ACCEPTANCE = 'TURBDIFF_ACCEPTANCE'
