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

'''Run manifests, output digests and the atomic output directory.'''
import csv
import datetime
import hashlib
import json
import os
import shutil
import tempfile

from dateutil import parser as date_parser

from . import __version__
from . import config as run_config
from . import log
from .constants import Csv
from .turbdiff_error import TurbdiffError


def digest_file(path):
    hasher = hashlib.sha256()
    with open(path, 'rb') as handle:
        for chunk in iter(lambda: handle.read(1 << 16), b''):
            hasher.update(chunk)
    return hasher.hexdigest()

def digest_outputs(directory):
    '''sha256 of every output file except the manifest itself.'''
    digests = {}
    for name in sorted(os.listdir(directory)):
        path = os.path.join(directory, name)
        if name != Csv.MANIFEST and os.path.isfile(path):
            digests[name] = digest_file(path)
    return digests


def format_value(value):
    if isinstance(value, float):
        return Csv.FLOAT_FORMAT.format(value)
    return str(value)

def write_csv(path, header, rows):
    with open(path, 'w', newline='') as handle:
        writer = csv.writer(handle, lineterminator='\n')
        writer.writerow(header)
        for row in rows:
            writer.writerow([format_value(value) for value in row])

def write_json(path, payload):
    with open(path, 'w') as handle:
        json.dump(payload, handle, indent=2, sort_keys=True)
        handle.write('\n')


def now():
    return datetime.datetime.now(datetime.timezone.utc).isoformat()


class RunManifest(object):
    '''Everything needed to rerun a command and check that it reproduced.'''

    def __init__(self, command, config, derived=None, outputs=None, version=__version__,
                 started=None, finished=None):
        self.command = command
        self.config = config
        self.derived = derived or {}
        self.outputs = outputs or {}
        self.version = version
        self.started = started or now()
        self.finished = finished

    @property
    def wall_clock_seconds(self):
        if self.finished is None:
            return None
        elapsed = date_parser.parse(self.finished) - date_parser.parse(self.started)
        return elapsed.total_seconds()

    def to_dict(self):
        return {
            'command': self.command,
            'version': self.version,
            'config': run_config.serialize(self.config),
            'resolved': self.config.to_dict(),
            'derived': self.derived,
            'started': self.started,
            'finished': self.finished,
            'wall_clock_seconds': self.wall_clock_seconds,
            'outputs': self.outputs,
            }

    def write(self, path):
        write_json(path, self.to_dict())

    @classmethod
    def load(cls, path):
        with open(path, 'r') as handle:
            data = json.load(handle)
        try:
            config = run_config.parse(data['config'])
            return cls(data['command'], config, data.get('derived'), data.get('outputs'),
                       data.get('version', __version__), data.get('started'), data.get('finished'))
        except KeyError as exp:
            raise TurbdiffError("Manifest is missing {}.".format(exp), {'path': str(path)})


class OutputDirectory(object):
    '''Write into a hidden sibling directory and rename it into place on success.

    On any exception the partial directory is removed and `target` is untouched.
    '''

    def __init__(self, target, log_context=None):
        self.target = os.path.abspath(target)
        self.path = None
        self._log = log.Logger('Output', log_context)

    def __enter__(self):
        parent = os.path.dirname(self.target)
        if not os.path.isdir(parent):
            os.makedirs(parent)
        self.path = tempfile.mkdtemp(prefix='.' + os.path.basename(self.target) + '.', dir=parent)
        return self

    def file(self, name):
        return os.path.join(self.path, name)

    def __exit__(self, exc_type, exc_value, traceback):
        if exc_type is not None:
            shutil.rmtree(self.path, ignore_errors=True)
            self._log.warn("Removed partial outputs after %(error)s", {'error': exc_type.__name__})
            return False
        if os.path.isdir(self.target):
            shutil.rmtree(self.target)
        os.rename(self.path, self.target)
        self.path = self.target
        return False
