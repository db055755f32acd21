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

'''Counter-based random streams.

A stream is a Philox key; the draw for a given step is taken from the block
whose high counter word is the step index. Draws are therefore a pure function
of (seed, stream ids, step), independent of call order and worker layout.
'''
import numpy as np

from . import argument

# stream ids used with derive_seed
MODES = 1
STATE = 2
TRAJECTORY = 3
VALIDATION = 4


def derive_seed(master_seed, *keys):
    '''A 64-bit seed for the child stream identified by keys.'''
    argument.validate_seed(master_seed, 'master_seed')
    sequence = np.random.SeedSequence(entropy=int(master_seed),
                                      spawn_key=tuple(int(k) for k in keys))
    return int(sequence.generate_state(1, np.uint64)[0])

def generator(seed, *keys):
    '''A plain numpy Generator for one-shot draws keyed by (seed, keys).'''
    sequence = np.random.SeedSequence(entropy=int(seed), spawn_key=tuple(int(k) for k in keys))
    return np.random.Generator(np.random.Philox(sequence))


class CounterStream(object):
    def __init__(self, seed):
        argument.validate_seed(seed)
        self.seed = int(seed)
        self.key = np.random.SeedSequence(self.seed).generate_state(2, np.uint64)

    def block(self, index):
        '''Generator positioned at the start of block `index`.'''
        counter = np.array([0, 0, 0, int(index)], dtype=np.uint64)
        return np.random.Generator(np.random.Philox(key=self.key, counter=counter))

    def normals(self, index, shape):
        return self.block(index).standard_normal(shape)
