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

from .constants import ExitCodes

class TurbdiffError(Exception):
    exit_code = ExitCodes.FAILURE

    def __init__(self, error_msg, error_response=None):
        super(TurbdiffError, self).__init__(error_msg)
        self.error_response = error_response or {}

class ConfigError(TurbdiffError):
    exit_code = ExitCodes.VALIDATION

class ZeroWavevector(TurbdiffError):
    exit_code = ExitCodes.VALIDATION

class DimensionTooSmall(TurbdiffError):
    exit_code = ExitCodes.VALIDATION

class DivergentIntegral(TurbdiffError):
    exit_code = ExitCodes.DIVERGENCE

class QuadratureFailure(TurbdiffError):
    exit_code = ExitCodes.QUADRATURE

class EmptySpectrum(TurbdiffError):
    exit_code = ExitCodes.VALIDATION

class ModeSetMismatch(TurbdiffError):
    pass

class SnapshotError(TurbdiffError):
    pass

class StepOverflow(TurbdiffError):
    pass

class TooFewTrajectories(TurbdiffError):
    exit_code = ExitCodes.VALIDATION

class DegenerateWindow(TurbdiffError):
    pass

class ReplayUnavailable(TurbdiffError):
    pass

class TailNotConverged(TurbdiffError):
    exit_code = ExitCodes.STATISTICAL

class KindMismatch(TurbdiffError):
    pass

class GridTooNarrow(TurbdiffError):
    exit_code = ExitCodes.VALIDATION

class StatisticalCheckFailure(TurbdiffError):
    exit_code = ExitCodes.STATISTICAL
